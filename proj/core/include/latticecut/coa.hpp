#pragma once

#include <iosfwd>

#include "latticecut/caratheodory.hpp"
#include "latticecut/oracle.hpp"
#include "latticecut/sampling.hpp"

namespace latticecut {

struct CoaOptions {
    std::uint64_t seed = 0;
    /// Parallelism for residue-class enumeration in solve_exact_ip.
    unsigned jobs = 1;
    /// Line-delimited JSON trace; forces jobs = 1.
    std::ostream* trace = nullptr;
    /// Called on every volume-reducing cut with the body before and after.
    std::function<void(const Polytope& before, const Polytope& after)> cut_observer;
    /// Report the MC symmetrizer ratio of every restricted oracle query into
    /// the trace (advisory; never rejects).
    bool check_symmetrizer = false;
};

/// Which certificate chain produced an Empty verdict.
enum class EmptyReason {
    None,         // not empty
    SliceMissed,  // the lattice misses K's affine hull (diophantine miss)
    FlatNoInteger,  // flat direction found, no lattice value class in range
    OneDim,       // 1-dim instance pinned to a non-lattice point
    OracleEmpty,  // the oracle certified K and the lattice disjoint
};

struct CoaStats {
    std::size_t outer_cuts = 0;
    std::size_t inner_iterations = 0;
    std::size_t oracle_calls = 0;
    std::size_t averaging_rounds = 0;  // averaging-step executions
    std::size_t centroid_rounds = 0;
    std::size_t max_depth = 0;
    std::size_t cap_violations = 0;  // inner iterations beyond 36 R^2
    /// Advisory cut budget 64 n^2 log2(n r / lambda_1) evaluated per run;
    /// exceeding it raises budget_alarms but never aborts.
    double cut_budget = 0.0;
    std::size_t budget_alarms = 0;
    EmptyReason empty_reason = EmptyReason::None;

    void absorb(const CoaStats& other);
};

struct CoaResult {
    /// Point of K in shift + (1/l) Lambda, verified exactly; nullopt when
    /// K and the (unscaled) lattice are certified disjoint.
    std::optional<QVec> point;
    /// When the averaging branch produced the point: the admitted oracle
    /// points with their 1/l-integral weights.
    std::vector<std::pair<QVec, Rat>> witness;
    CoaStats stats;

    bool feasible() const { return point.has_value(); }
};

/// The cut-or-average reduction: either a point of K in the (1/l)-refined
/// lattice, or the certificate that K contains no lattice point at all.
/// Requires l >= 5(r+1) with r the lattice rank.
CoaResult cut_or_average(const Polytope& k, const AffineLattice& l, long ell,
                         const ApxIpOracle& oracle, const CoaOptions& opt = {});

/// Given the residues v of a solution mod l (coefficients through the lattice
/// basis), finds an actual lattice point of K in that class, or certifies the
/// class empty. A returned point lies in K and in L itself.
std::optional<QVec> solve_with_residues(const Polytope& k, const AffineLattice& l,
                                        const std::vector<long>& residues, long ell,
                                        const ApxIpOracle& oracle, const CoaOptions& opt = {},
                                        CoaStats* stats_out = nullptr);

struct ExactIpResult {
    std::optional<QVec> point;
    CoaStats stats;
    std::size_t residue_classes_tried = 0;
    long ell = 0;
};

/// Exact integer programming by residue enumeration: l = 5(r+1), classes in
/// lexicographic order, first feasible class wins (deterministic regardless
/// of the jobs setting).
ExactIpResult solve_exact_ip(const Polytope& k, const AffineLattice& l, const ApxIpOracle& oracle,
                             const CoaOptions& opt = {});

}  // namespace latticecut
