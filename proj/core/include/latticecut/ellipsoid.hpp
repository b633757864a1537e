#pragma once

#include "latticecut/polytope.hpp"

namespace latticecut {

/// Origin-centered ellipsoid {x : x^T M x <= 1} with M symmetric positive
/// definite, certified by an exact rational LDL^T decomposition.
class Ellipsoid {
  public:
    explicit Ellipsoid(QMat m);  // throws std::invalid_argument unless SPD

    std::size_t dim() const { return m_.rows(); }
    const QMat& matrix() const { return m_; }
    const QMat& inverse_matrix() const;

    /// Exact x^T M x (the squared ellipsoid norm).
    Rat norm_squared(const QVec& x) const;
    /// Floating-point norm for reporting; exact comparisons go through
    /// norm_squared against squared thresholds.
    double norm(const QVec& x) const;

    static bool is_spd(const QMat& m);

  private:
    QMat m_;
    mutable std::optional<QMat> inv_;
};

/// Certified rounding (c, E, R): c + E subseteq K subseteq c + R*E.
/// Both inclusions are established exactly: the inner one facet by facet
/// (a^T M^-1 a <= slack^2), the outer one vertex by vertex.
struct RoundingCertificate {
    QVec center;
    Ellipsoid shape;
    Rat radius_factor;  // R >= 1; R^2 bounds every vertex norm

    Rat radius_squared() const { return radius_factor * radius_factor; }
};

/// Exact re-check of both certificate inclusions (used by tests and by the
/// centroid routine itself before returning).
bool certificate_valid(const RoundingCertificate& cert, const Polytope& k);

}  // namespace latticecut
