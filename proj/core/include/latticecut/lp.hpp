#pragma once

#include <optional>
#include <vector>

#include "latticecut/linalg.hpp"

namespace latticecut {

enum class RowSense { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// max <objective, x>  s.t.  constraints x (sense) rhs,  lower <= x <= upper.
struct LpProblem {
    QVec objective;
    QMat constraints;  // m x n
    QVec rhs;          // m
    std::vector<RowSense> senses;
    std::vector<std::optional<Rat>> lower;  // size n or empty (all free)
    std::vector<std::optional<Rat>> upper;

    std::size_t num_vars() const { return objective.size(); }
    void validate() const;  // throws std::invalid_argument
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    QVec point;  // vertex of the feasible region when Optimal (region pointed)
    Rat value;
};

/// Exact rational two-phase simplex under Bland's rule. Among the optima the
/// returned point lexicographically maximizes (x_1, x_2, ...), which pins a
/// deterministic vertex whenever the feasible region is bounded.
LpResult solve_lp(const LpProblem& p);

}  // namespace latticecut
