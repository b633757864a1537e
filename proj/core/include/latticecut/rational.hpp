#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace latticecut {

// Exact arithmetic base types. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the canonical form used by every
// serialization in this project.
using Int = mpz_class;
using Rat = mpq_class;

/// Canonical rational from a (possibly non-reduced) fraction.
Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den);

/// Largest integer <= q.
Int rat_floor(const Rat& q);
/// Smallest integer >= q.
Int rat_ceil(const Rat& q);
/// Nearest integer, ties away from zero.
Int rat_round(const Rat& q);

bool is_integer(const Rat& q);

double to_double(const Rat& q);

/// Exact rational from the binary expansion of a double.
Rat rat_from_double(double d);

/// A rational s >= sqrt(q) with s^2/q < 1 + 2^-20 (q >= 0).
Rat rat_sqrt_upper(const Rat& q);

/// Parse "p/q" or "p" (canonicalizes; throws std::invalid_argument on junk).
Rat parse_rat(const std::string& s);

/// Lowest-terms string, "/q" elided when q == 1.
std::string rat_to_string(const Rat& q);

/// splitmix64 step, used to derive child RNG seeds deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace latticecut
