#include "latticecut/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace latticecut {

namespace {
void check_dims(const QVec& a, const QVec& b, const char* who) {
    if (a.size() != b.size()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}
}  // namespace

Rat dot(const QVec& a, const QVec& b) {
    check_dims(a, b, "dot");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec add(const QVec& a, const QVec& b) {
    check_dims(a, b, "add");
    QVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    check_dims(a, b, "sub");
    QVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

QVec scale(const QVec& a, const Rat& s) {
    QVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

QVec negate(const QVec& a) { return scale(a, Rat(-1)); }

bool is_zero(const QVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

bool lex_less(const QVec& a, const QVec& b) {
    check_dims(a, b, "lex_less");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

bool all_integer(const QVec& a) {
    for (const auto& x : a)
        if (!is_integer(x)) return false;
    return true;
}

QVec qvec_of_ints(const std::vector<long>& v) {
    QVec r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return r;
}

std::string to_string(const QVec& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(a[i]);
    }
    os << ")";
    return os.str();
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    if (rows.empty()) return QMat(0, 0);
    QMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

QMat QMat::from_cols(const std::vector<QVec>& cols) {
    if (cols.empty()) return QMat(0, 0);
    QMat m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

QVec QMat::row(std::size_t i) const {
    QVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

QVec QMat::col(std::size_t j) const {
    QVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void QMat::set_row(std::size_t i, const QVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: dimension mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void QMat::set_col(std::size_t j, const QVec& v) {
    if (v.size() != rows_) throw std::invalid_argument("set_col: dimension mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMat QMat::operator*(const QMat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("QMat*: dimension mismatch");
    QMat r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += x * rhs(k, j);
        }
    return r;
}

QVec QMat::operator*(const QVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("QMat*vec: dimension mismatch");
    QVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

namespace {

// Fraction-free-ish Gaussian elimination to row echelon; returns pivot columns.
// `work` is modified in place; `rhs` (optional, same row count) follows the row ops.
std::vector<std::size_t> echelon(QMat& work, QMat* rhs) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < work.cols() && r < work.rows(); ++c) {
        std::size_t p = r;
        while (p < work.rows() && work(p, c) == 0) ++p;
        if (p == work.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < work.cols(); ++j) std::swap(work(p, j), work(r, j));
            if (rhs)
                for (std::size_t j = 0; j < rhs->cols(); ++j) std::swap((*rhs)(p, j), (*rhs)(r, j));
        }
        Rat inv = Rat(1) / work(r, c);
        for (std::size_t j = 0; j < work.cols(); ++j) work(r, j) *= inv;
        if (rhs)
            for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(r, j) *= inv;
        for (std::size_t i = 0; i < work.rows(); ++i) {
            if (i == r || work(i, c) == 0) continue;
            Rat f = work(i, c);
            for (std::size_t j = 0; j < work.cols(); ++j) work(i, j) -= f * work(r, j);
            if (rhs)
                for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(i, j) -= f * (*rhs)(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t QMat::rank() const {
    QMat w(*this);
    return echelon(w, nullptr).size();
}

Rat QMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: not square");
    QMat w(*this);
    Rat d(1);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t p = c;
        while (p < rows_ && w(p, c) == 0) ++p;
        if (p == rows_) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(w(p, j), w(c, j));
            d = -d;
        }
        d *= w(c, c);
        Rat inv = Rat(1) / w(c, c);
        for (std::size_t i = c + 1; i < rows_; ++i) {
            if (w(i, c) == 0) continue;
            Rat f = w(i, c) * inv;
            for (std::size_t j = c; j < cols_; ++j) w(i, j) -= f * w(c, j);
        }
    }
    return d;
}

QMat QMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
    QMat w(*this);
    QMat inv = QMat::identity(rows_);
    auto piv = echelon(w, &inv);
    if (piv.size() != rows_) throw std::domain_error("inverse: singular matrix");
    return inv;
}

std::optional<QVec> QMat::solve(const QVec& v) const {
    if (v.size() != rows_) throw std::invalid_argument("solve: dimension mismatch");
    QMat w(*this);
    QMat rhs(rows_, 1);
    rhs.set_col(0, v);
    auto piv = echelon(w, &rhs);
    // consistency: zero rows of w must have zero rhs
    for (std::size_t i = piv.size(); i < rows_; ++i)
        if (rhs(i, 0) != 0) return std::nullopt;
    QVec x(cols_, Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = rhs(k, 0);
    return x;
}

std::vector<QVec> QMat::nullspace() const {
    QMat w(*this);
    auto piv = echelon(w, nullptr);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        QVec x(cols_, Rat(0));
        x[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -w(k, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

bool QMat::all_integer() const {
    for (const auto& x : a_)
        if (!is_integer(x)) return false;
    return true;
}

std::string to_string(const QMat& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << rat_to_string(m(i, j));
        }
    }
    os << "]";
    return os.str();
}

}  // namespace latticecut
