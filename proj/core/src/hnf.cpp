#include "latticecut/hnf.hpp"

#include <stdexcept>

namespace latticecut {

namespace {

// row-style HNF R = V X with V unimodular, R upper echelon, pivots positive,
// entries above each pivot reduced into [0, pivot)
void row_hnf(QMat& x, QMat& v) {
    const std::size_t rows = x.rows(), cols = x.cols();
    std::size_t prow = 0;
    auto row_combine = [&](std::size_t i, std::size_t j, const Int& p, const Int& q, const Int& r,
                           const Int& s) {
        // (row_i, row_j) := (p*row_i + q*row_j, r*row_i + s*row_j)
        for (std::size_t k = 0; k < cols; ++k) {
            Rat xi = x(i, k), xj = x(j, k);
            x(i, k) = Rat(p) * xi + Rat(q) * xj;
            x(j, k) = Rat(r) * xi + Rat(s) * xj;
        }
        for (std::size_t k = 0; k < v.cols(); ++k) {
            Rat vi = v(i, k), vj = v(j, k);
            v(i, k) = Rat(p) * vi + Rat(q) * vj;
            v(j, k) = Rat(r) * vi + Rat(s) * vj;
        }
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t k = 0; k < cols; ++k) x(i, k) = -x(i, k);
        for (std::size_t k = 0; k < v.cols(); ++k) v(i, k) = -v(i, k);
    };
    auto add_multiple = [&](std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t k = 0; k < cols; ++k) x(dst, k) -= Rat(f) * x(src, k);
        for (std::size_t k = 0; k < v.cols(); ++k) v(dst, k) -= Rat(f) * v(src, k);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < cols; ++k) std::swap(x(i, k), x(j, k));
        for (std::size_t k = 0; k < v.cols(); ++k) std::swap(v(i, k), v(j, k));
    };

    for (std::size_t col = 0; col < cols && prow < rows; ++col) {
        std::size_t nz = prow;
        while (nz < rows && x(nz, col) == 0) ++nz;
        if (nz == rows) continue;
        if (nz != prow) swap_rows(prow, nz);
        for (std::size_t i = prow + 1; i < rows; ++i) {
            if (x(i, col) == 0) continue;
            Int a = x(prow, col).get_num();  // entries stay integral throughout
            Int b = x(i, col).get_num();
            if (b % a == 0) {
                add_multiple(i, prow, b / a);  // keeps the pivot row fixed
                continue;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            row_combine(prow, i, s, t, -b / g, a / g);
        }
        if (x(prow, col) < 0) negate_row(prow);
        Int pivot = x(prow, col).get_num();
        for (std::size_t i = 0; i < prow; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), x(i, col).get_num_mpz_t(), pivot.get_mpz_t());
            add_multiple(i, prow, q);
        }
        ++prow;
    }
}

}  // namespace

std::pair<QMat, QMat> hnf(const QMat& m) {
    if (!m.all_integer()) throw std::invalid_argument("hnf: integer matrix required");
    QMat x = m.transpose();
    QMat v = QMat::identity(x.rows());
    row_hnf(x, v);
    return {x.transpose(), v.transpose()};
}

std::optional<DiophantineSolution> solve_diophantine(const QMat& a, const QVec& b) {
    if (!a.all_integer() || !all_integer(b)) throw std::invalid_argument("solve_diophantine: integer data required");
    if (a.rows() != b.size()) throw std::invalid_argument("solve_diophantine: dimension mismatch");
    auto [h, u] = hnf(a);
    const std::size_t n = a.cols(), mrows = a.rows();

    // pivot row of each nonzero column of h (columns are in echelon order)
    std::vector<std::size_t> pivot_row;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = 0;
        while (i < mrows && h(i, k) == 0) ++i;
        if (i == mrows) break;  // zero columns are rightmost
        pivot_row.push_back(i);
    }
    const std::size_t rank = pivot_row.size();

    QVec residual = b;
    QVec y(n, Rat(0));
    for (std::size_t k = 0; k < rank; ++k) {
        const std::size_t i = pivot_row[k];
        Rat q = residual[i] / h(i, k);
        if (!is_integer(q)) return std::nullopt;
        y[k] = q;
        if (q != 0)
            for (std::size_t r = 0; r < mrows; ++r) residual[r] -= q * h(r, k);
    }
    if (!is_zero(residual)) return std::nullopt;

    DiophantineSolution sol;
    sol.particular = u * y;
    sol.kernel_basis = QMat(n, n - rank);
    for (std::size_t k = rank; k < n; ++k) {
        QVec c = u.col(k);
        // canonical sign: first nonzero positive
        for (const auto& e : c) {
            if (e == 0) continue;
            if (e < 0) c = negate(c);
            break;
        }
        sol.kernel_basis.set_col(k - rank, c);
    }
    return sol;
}

std::pair<QMat, QVec> integerize_rows(const QMat& c, const QVec& d) {
    if (c.rows() != d.size()) throw std::invalid_argument("integerize_rows: dimension mismatch");
    QMat c2 = c;
    QVec d2 = d;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        Int l = d2[i].get_den();
        for (std::size_t j = 0; j < c.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c2(i, j).get_den_mpz_t());
        if (l == 1) continue;
        Rat f(l);
        for (std::size_t j = 0; j < c.cols(); ++j) c2(i, j) *= f;
        d2[i] *= f;
    }
    return {c2, d2};
}

}  // namespace latticecut
