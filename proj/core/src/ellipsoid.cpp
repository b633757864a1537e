#include "latticecut/ellipsoid.hpp"

#include <cmath>
#include <stdexcept>

namespace latticecut {

bool Ellipsoid::is_spd(const QMat& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, j) != m(j, i)) return false;
    // rational LDL^T: all pivots positive
    QMat w = m;
    for (std::size_t k = 0; k < n; ++k) {
        if (w(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rat f = w(i, k) / w(k, k);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return true;
}

Ellipsoid::Ellipsoid(QMat m) : m_(std::move(m)) {
    if (!is_spd(m_)) throw std::invalid_argument("Ellipsoid: matrix not symmetric positive definite");
}

const QMat& Ellipsoid::inverse_matrix() const {
    if (!inv_) inv_ = m_.inverse();
    return *inv_;
}

Rat Ellipsoid::norm_squared(const QVec& x) const {
    if (x.size() != m_.rows()) throw std::invalid_argument("Ellipsoid: dimension mismatch");
    return dot(x, m_ * x);
}

double Ellipsoid::norm(const QVec& x) const { return std::sqrt(to_double(norm_squared(x))); }

bool certificate_valid(const RoundingCertificate& cert, const Polytope& k) {
    if (!k.full_dimensional() || cert.center.size() != k.dim()) return false;
    if (cert.radius_factor < 1) return false;
    if (!k.contains(cert.center)) return false;
    const QMat& a = k.ineq_matrix();
    const QVec& b = k.ineq_rhs();
    const QMat& minv = cert.shape.inverse_matrix();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        QVec row = a.row(i);
        Rat slack = b[i] - dot(row, cert.center);
        if (slack < 0) return false;
        if (dot(row, minv * row) > slack * slack) return false;  // c + E pokes out of facet i
    }
    Rat r2 = cert.radius_squared();
    for (const auto& v : k.vertices())
        if (cert.shape.norm_squared(sub(v, cert.center)) > r2) return false;
    return true;
}

}  // namespace latticecut
