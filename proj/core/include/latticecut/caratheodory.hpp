#pragma once

#include "latticecut/ellipsoid.hpp"
#include "latticecut/polytope.hpp"

namespace latticecut {

/// Sparse convex combination writing 0 over a point set.
struct ConvexCombination {
    std::vector<std::pair<std::size_t, Rat>> support;  // (index into X, weight > 0)
    std::size_t num_points = 0;                        // |X|
    std::size_t dim = 0;

    std::size_t caratheodory_bound() const { return std::min(num_points, dim + 1); }
};

/// Vertex solution of {lambda >= 0, sum lambda = 1, sum lambda x = 0}; the
/// support has at most dim+1 entries. Throws NotInHullError when 0 is outside
/// conv(X). Deterministic (Bland + lexicographic refinement).
ConvexCombination zero_convex_combination(const std::vector<QVec>& x);

/// Nonnegative integer weights mu on the support with mu >= (k - l) lambda
/// componentwise and sum mu = k, where l = min(|X|, n+1). Requires k > l.
struct IntegralCombination {
    std::vector<std::pair<std::size_t, Int>> support;  // (index into X, count)
    Int total;
};
IntegralCombination integral_rounding(const ConvexCombination& lambda, long k);

/// k indices into X (with repetition) whose unweighted average has gauge at
/// most min(|X|, n+1)/k in the body `gauge_body - origin`. Every input point
/// must have gauge at most 1 and 0 must lie in conv(X - origin shifted to 0).
std::vector<std::size_t> asym_caratheodory_indices(const std::vector<QVec>& x,
                                                   const Polytope& gauge_body, const QVec& origin,
                                                   long k);
/// Point-valued convenience over asym_caratheodory_indices.
std::vector<QVec> asym_caratheodory(const std::vector<QVec>& x, const Polytope& gauge_body,
                                    const QVec& origin, long k);

/// The averaging step: weights that are multiples of 1/l, sum to one, and
/// whose combination of X lands inside K exactly. Preconditions: l >= 5(n+1),
/// every x within the 3-scaling of K around c (gauge <= 3), z in conv(X), and
/// ||z-c||_E <= 1/4 exactly.
struct WeightedCombination {
    std::vector<std::pair<std::size_t, Rat>> weights;  // (index into X, mu/l)
    QVec point;
};
WeightedCombination combination_into_k(const std::vector<QVec>& x, const QVec& c,
                                       const Ellipsoid& e, const QVec& z, const Polytope& k,
                                       long ell);

}  // namespace latticecut
