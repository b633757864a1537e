#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "latticecut/errors.hpp"
#include "latticecut/lp.hpp"

namespace latticecut {

/// Bounded rational polytope {x : Ax <= b, Cx = d}.
///
/// Construction canonicalizes: it certifies nonemptiness and boundedness by
/// LP, scales every row to a primitive integer normal, and moves inequality
/// rows that hold with equality on the whole feasible set into the equality
/// block, so the affine hull is always explicit and the inequality system has
/// a relatively strictly feasible point.
class Polytope {
  public:
    /// Canonicalizing constructor; throws EmptyPolytopeError / UnboundedPolytopeError.
    Polytope(QMat a, QVec b);
    Polytope(QMat a, QVec b, QMat c, QVec d);
    /// As above but nullopt instead of EmptyPolytopeError.
    static std::optional<Polytope> try_create(QMat a, QVec b, QMat c = {}, QVec d = {});

    std::size_t dim() const { return n_; }
    /// Dimension of the affine hull.
    std::size_t affine_dim() const;
    bool full_dimensional() const { return eq_.rows() == 0; }

    const QMat& ineq_matrix() const { return a_; }
    const QVec& ineq_rhs() const { return b_; }
    const QMat& eq_matrix() const { return eq_; }
    const QVec& eq_rhs() const { return eqd_; }

    /// Exact membership test.
    bool contains(const QVec& x) const;
    /// Exact max_{x in K} <y, x>.
    Rat support(const QVec& y) const;
    /// support(y) + support(-y); the (K-K)-polar gauge of y.
    Rat width(const QVec& y) const;
    /// Outer bounding box (lo, hi); exact after construction, may loosen on
    /// trusted transforms but always contains the polytope.
    const std::pair<QVec, QVec>& outer_box() const;
    /// Exact per-axis bounding box, recomputed by LP.
    std::pair<QVec, QVec> exact_box() const;
    /// A point in the relative interior (strictly inside every inequality).
    QVec relative_interior_point() const;
    /// All vertices, exhaustive active-set enumeration; cached.
    const std::vector<QVec>& vertices() const;

    /// K + t. O(m n), caches transfer.
    Polytope translated(const QVec& t) const;
    /// {t : B t in K} for invertible square B. No LP; canonical facts transfer.
    Polytope preimage_full_rank(const QMat& basis) const;
    /// {s : shift + W s in K} for injective W whose image hits K's affine hull
    /// exactly (W spans ker of the equality block, shift solves it). No LP.
    Polytope hull_slice_trusted(const QVec& shift, const QMat& w) const;
    /// {t : shift + W t in K} for injective W, general position: full
    /// canonicalization; nullopt when the slice is empty.
    std::optional<Polytope> slice(const QVec& shift, const QMat& w) const;
    /// center + factor * (K - center), exact rewrite of the rows.
    Polytope scaled_from(const QVec& center, const Rat& factor) const;

    /// K intersected with a halfspace; canonicalizes (hull may collapse);
    /// nullopt when the intersection is empty.
    std::optional<Polytope> cut(const QVec& normal, const Rat& rhs, RowSense sense) const;
    /// Fast cut for callers that guarantee the result keeps an interior point
    /// (appends the row, no LP).
    Polytope cut_interior_trusted(const QVec& normal, const Rat& rhs) const;

  private:
    Polytope() = default;
    static std::optional<Polytope> build(QMat a, QVec b, QMat c, QVec d, bool throw_on_empty);

    QMat a_;
    QVec b_;
    QMat eq_;
    QVec eqd_;
    std::size_t n_ = 0;
    mutable std::optional<std::pair<QVec, QVec>> box_;
    mutable std::shared_ptr<const std::vector<QVec>> verts_;
};

/// Minkowski gauge of x with respect to K - origin; requires K full
/// dimensional and origin strictly interior (else GaugeDomainError).
Rat gauge_norm(const Polytope& k, const QVec& origin, const QVec& x);

}  // namespace latticecut
