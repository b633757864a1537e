#pragma once

#include <cstdint>

#include "latticecut/ellipsoid.hpp"

namespace latticecut {

std::size_t default_centroid_samples(std::size_t dim);

/// Hit-and-run estimate of the barycenter plus a covariance-shaped ellipsoid,
/// turned into an exactly certified rounding: the sampled quantities are
/// snapped to small rationals, the ellipsoid is shrunk by the exact factor
/// that makes c + E fit inside K, and R is certified over the vertex set.
/// Requires K full dimensional. Deterministic given the seed.
RoundingCertificate centroid_and_rounding(const Polytope& k, std::uint64_t seed, std::size_t samples = 0);

/// Same sampling path but stops at an exactly-verified interior center with
/// its inner ellipsoid; skips the vertex-based outer factor.
std::pair<QVec, Ellipsoid> interior_center(const Polytope& k, std::uint64_t seed, std::size_t samples = 0);

/// Unbiased hit-ratio Monte-Carlo volume over the exact bounding box.
/// Statistical instrument (double precision); throws on degenerate K.
double mc_volume(const Polytope& k, std::uint64_t seed, std::size_t samples);

/// Vol(inner)/Vol(outer) estimated on one common sample stream over outer's
/// box; cheap conditional estimator for cut-progress checks.
double mc_volume_ratio(const Polytope& inner, const Polytope& outer, std::uint64_t seed,
                       std::size_t samples);

}  // namespace latticecut
