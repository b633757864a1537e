#pragma once

#include <optional>
#include <utility>

#include "latticecut/linalg.hpp"

namespace latticecut {

/// Column Hermite normal form of an integer matrix M: returns (H, U) with
/// H = M U, U unimodular (|det U| = 1), H in column echelon form with
/// positive pivots and reduced off-pivot entries. Throws on non-integer input.
std::pair<QMat, QMat> hnf(const QMat& m);

struct DiophantineSolution {
    QVec particular;    // integer x0 with A x0 = b
    QMat kernel_basis;  // n x k integer basis of {x in Z^n : A x = 0}
};

/// Integer solution set of A x = b (A, b integer). nullopt certifies that no
/// integer solution exists (including rational infeasibility).
std::optional<DiophantineSolution> solve_diophantine(const QMat& a, const QVec& b);

/// Scale each row (and its rhs) by the lcm of denominators so the system has
/// integer coefficients; the solution set is unchanged.
std::pair<QMat, QVec> integerize_rows(const QMat& c, const QVec& d);

}  // namespace latticecut
