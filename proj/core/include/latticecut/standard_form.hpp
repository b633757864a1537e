#pragma once

#include "latticecut/coa.hpp"

namespace latticecut {

/// Ax = b, 0 <= x <= u, x integer; A and b integer, u >= 1 componentwise.
struct StandardFormIP {
    QMat a;
    QVec b;
    std::vector<long> u;

    void validate() const;  // throws std::invalid_argument
};

/// Sorted cut points {0, u} plus 2^(j-1) and u - 2^(j-1) for
/// 0 <= j <= ceil(log2(u)), clamped to [0, u].
std::vector<Rat> cell_thresholds(long u);

/// Interval count per coordinate and the full cell count of the arrangement.
std::size_t interval_count(long u);
std::size_t cell_count(const std::vector<long>& u);

/// Cell = product of per-coordinate threshold intervals, addressed by index.
struct CellIndex {
    std::vector<std::size_t> interval;  // interval[i] < interval_count(u[i])
};

/// All cells in lexicographic index order.
void enumerate_cells(const std::vector<long>& u, const std::function<bool(const CellIndex&)>& visit);

/// Does scaling `cell` (a box [lo, hi]) by 2 from v stay within
/// [-1/2, u + 1/2]? Exact per-coordinate vertex arithmetic.
bool reflect_check(const QVec& lo, const QVec& hi, const std::vector<long>& u, const QVec& v);

struct CellCounters {
    std::size_t cells_total = 0;
    std::size_t cells_examined = 0;  // equals cells_total when the scan is exhausted
    std::size_t cells_skipped = 0;   // pruned or certified empty before any oracle use
    std::size_t oracle_calls = 0;    // exactly one per examined, non-skipped cell
    std::size_t gamma_probes = 0;    // binary-search feasibility checks (inequality form)

    void absorb(const CellCounters& other);
};

struct StandardFormResult {
    std::optional<QVec> x;
    CellCounters counters;
};

/// Feasibility of the equation form by one approximate-IP query per nonempty
/// cell of the reflection arrangement; a returned point is verified exactly
/// against Ax = b, integrality, and 0 <= x <= u.
StandardFormResult solve_standard_form(const StandardFormIP& inst, const ApxIpOracle& oracle,
                                       std::uint64_t seed);

struct InequalityFormResult {
    std::optional<QVec> x;
    Rat value;  // meaningful when x is set
    CellCounters counters;
};

/// max <c,x> s.t. Ax <= b, 0 <= x <= u, x integer, via binary search on the
/// objective and bounded-slack reductions to the equation form. Slack ranges
/// come from the instance data itself.
InequalityFormResult solve_inequality_form(const QMat& a, const QVec& b, const QVec& c,
                                           const std::vector<long>& u, const ApxIpOracle& oracle,
                                           std::uint64_t seed);

/// sum z_i x_i = t, 0 <= x <= u.
StandardFormResult subset_sum(const std::vector<long>& z, long t, const std::vector<long>& u,
                              const ApxIpOracle& oracle, std::uint64_t seed);

/// max <c,x> s.t. <a,x> <= beta, 0 <= x <= u (all data nonnegative integers).
InequalityFormResult knapsack(const std::vector<long>& c, const std::vector<long>& a, long beta,
                              const std::vector<long>& u, const ApxIpOracle& oracle,
                              std::uint64_t seed);

/// Pseudo-polynomial dynamic-programming references (test oracles).
/// Both guard their table sizes and throw std::invalid_argument beyond
/// desk scale.
std::optional<std::vector<long>> dp_subset_sum(const std::vector<long>& z, long t,
                                               const std::vector<long>& u);
std::pair<long, std::vector<long>> dp_knapsack(const std::vector<long>& c,
                                               const std::vector<long>& a, long beta,
                                               const std::vector<long>& u);

}  // namespace latticecut
