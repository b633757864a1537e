#pragma once

#include <functional>
#include <optional>

#include "latticecut/hnf.hpp"
#include "latticecut/polytope.hpp"

namespace latticecut {

/// shift + { B m : m integer }, columns of B linearly independent.
class AffineLattice {
  public:
    AffineLattice(QVec shift, QMat basis);  // verifies independence
    static AffineLattice standard(std::size_t n);

    std::size_t ambient_dim() const { return shift_.size(); }
    std::size_t rank() const { return basis_.cols(); }
    const QVec& shift() const { return shift_; }
    const QMat& basis() const { return basis_; }

    /// Exact membership.
    bool contains(const QVec& x) const;
    /// Rational coordinates m with shift + B m = x, nullopt off the span.
    std::optional<QVec> coefficients(const QVec& x) const;

    AffineLattice translated(const QVec& t) const;
    /// Same shift, basis scaled by f (f != 0): models v + l*Lambda.
    AffineLattice with_scaled_basis(const Rat& f) const;

  private:
    QVec shift_;
    QMat basis_;
};

/// delta-LLL-reduced basis of the same lattice; exact rational Gram-Schmidt.
QMat lll_reduce(const QMat& basis, const Rat& delta = Rat(3, 4));

/// B^{-T} for square full-rank B.
QMat dual_basis(const QMat& basis);

/// Visits exactly the points of L in K, each once, ordered lexicographically
/// by coefficient vector over the internally LLL-reduced basis. The visitor
/// returns false to stop early.
void enumerate_points(const AffineLattice& l, const Polytope& k,
                      const std::function<bool(const QVec&)>& visit);
std::vector<QVec> collect_points(const AffineLattice& l, const Polytope& k);

/// A dual vector along which K is thin enough to trap all lattice points of K
/// on one hyperplane.
struct FlatDirection {
    QVec dual_vector;          // y in Lambda* \ {0}
    Rat width;                 // width(K, y), at most the search threshold
    Rat min_value, max_value;  // exact support interval of <y, .> over K
    std::optional<Rat> beta;   // the unique lattice value class hitting the interval
};

/// Finds y in Lambda*\{0} with width(K, y) <= threshold, or certifies none
/// exists (complete enumeration of the polar width body). Dual basis
/// directions are probed first in index order; the fallback scan returns the
/// first hit in coefficient-lex order, sign-canonicalized.
std::optional<FlatDirection> flat_direction(const Polytope& k, const AffineLattice& l,
                                            const Rat& threshold = Rat(1, 2));

/// {x in L : <y, x> = beta} as an affine lattice of rank r-1, or nullopt when
/// the hyperplane misses L (gcd test on the integer row <y, b_i>).
std::optional<AffineLattice> hyperplane_section(const AffineLattice& l, const QVec& y,
                                                const Rat& beta);

namespace detail {

/// Raw integer-point enumeration over {m : ineq m <= ineq_rhs, eq m = eq_rhs}
/// in lexicographic order, with LP coordinate ranges and exact interval
/// pruning. No polytope canonicalization.
struct RawSystem {
    std::size_t dim = 0;
    std::vector<QVec> ineq;
    QVec ineq_rhs;
    std::vector<QVec> eq;
    QVec eq_rhs;
};
void enumerate_integer_points(const RawSystem& sys, const std::function<bool(const QVec&)>& visit);

}  // namespace detail

}  // namespace latticecut
