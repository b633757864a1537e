#include "latticecut/lattice.hpp"

#include <stdexcept>

namespace latticecut {

AffineLattice::AffineLattice(QVec shift, QMat basis) : shift_(std::move(shift)), basis_(std::move(basis)) {
    if (basis_.rows() != shift_.size())
        throw std::invalid_argument("AffineLattice: shift/basis dimension mismatch");
    if (basis_.cols() > basis_.rows() || basis_.rank() != basis_.cols())
        throw std::invalid_argument("AffineLattice: basis columns must be independent");
}

AffineLattice AffineLattice::standard(std::size_t n) {
    return AffineLattice(QVec(n, Rat(0)), QMat::identity(n));
}

std::optional<QVec> AffineLattice::coefficients(const QVec& x) const {
    return basis_.solve(sub(x, shift_));
}

bool AffineLattice::contains(const QVec& x) const {
    auto m = coefficients(x);
    return m && all_integer(*m);
}

AffineLattice AffineLattice::translated(const QVec& t) const {
    return AffineLattice(add(shift_, t), basis_);
}

AffineLattice AffineLattice::with_scaled_basis(const Rat& f) const {
    if (f == 0) throw std::invalid_argument("with_scaled_basis: zero factor");
    QMat b = basis_;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= f;
    return AffineLattice(shift_, std::move(b));
}

QMat lll_reduce(const QMat& basis, const Rat& delta) {
    const std::size_t r = basis.cols();
    if (r == 0) return basis;
    if (delta <= make_rat(1, 4) || delta > 1) throw std::invalid_argument("lll_reduce: delta out of range");
    std::vector<QVec> b;
    b.reserve(r);
    for (std::size_t j = 0; j < r; ++j) b.push_back(basis.col(j));

    std::vector<QVec> bstar(r);
    std::vector<std::vector<Rat>> mu(r, std::vector<Rat>(r, Rat(0)));
    std::vector<Rat> norm2(r);
    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < r; ++i) {
            bstar[i] = b[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], bstar[j]) / norm2[j];
                if (mu[i][j] != 0) bstar[i] = sub(bstar[i], scale(bstar[j], mu[i][j]));
            }
            norm2[i] = dot(bstar[i], bstar[i]);
            if (norm2[i] == 0) throw std::invalid_argument("lll_reduce: dependent columns");
        }
    };
    gram_schmidt();
    std::size_t k = 1;
    while (k < r) {
        for (std::size_t j = k; j-- > 0;) {
            Int q = rat_round(mu[k][j]);
            if (q != 0) {
                b[k] = sub(b[k], scale(b[j], Rat(q)));
                for (std::size_t i = 0; i <= j; ++i) mu[k][i] -= Rat(q) * mu[j][i];
                mu[k][j] = dot(b[k], bstar[j]) / norm2[j];
            }
        }
        Rat lhs = norm2[k];
        Rat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = k > 1 ? k - 1 : 1;
        }
    }
    return QMat::from_cols(b);
}

QMat dual_basis(const QMat& basis) {
    if (basis.rows() != basis.cols()) throw std::invalid_argument("dual_basis: square basis required");
    return basis.inverse().transpose();
}

namespace detail {

namespace {

struct RangeInfo {
    std::vector<Int> lo, hi;  // integral coordinate ranges
};

std::optional<RangeInfo> coordinate_ranges(const RawSystem& sys) {
    LpProblem p;
    const std::size_t r = sys.dim;
    p.constraints = QMat(sys.ineq.size() + sys.eq.size(), r);
    p.rhs.resize(sys.ineq.size() + sys.eq.size());
    p.senses.resize(sys.ineq.size() + sys.eq.size());
    for (std::size_t i = 0; i < sys.ineq.size(); ++i) {
        p.constraints.set_row(i, sys.ineq[i]);
        p.rhs[i] = sys.ineq_rhs[i];
        p.senses[i] = RowSense::Le;
    }
    for (std::size_t i = 0; i < sys.eq.size(); ++i) {
        p.constraints.set_row(sys.ineq.size() + i, sys.eq[i]);
        p.rhs[sys.ineq.size() + i] = sys.eq_rhs[i];
        p.senses[sys.ineq.size() + i] = RowSense::Eq;
    }
    RangeInfo ri;
    ri.lo.resize(r);
    ri.hi.resize(r);
    for (std::size_t j = 0; j < r; ++j) {
        p.objective = QVec(r, Rat(0));
        p.objective[j] = 1;
        auto up = solve_lp(p);
        if (up.status == LpStatus::Infeasible) return std::nullopt;
        p.objective[j] = -1;
        auto dn = solve_lp(p);
        if (up.status != LpStatus::Optimal || dn.status != LpStatus::Optimal)
            throw std::invalid_argument("enumerate_integer_points: unbounded system");
        ri.hi[j] = rat_floor(up.value);
        ri.lo[j] = rat_ceil(-dn.value);
        if (ri.lo[j] > ri.hi[j]) return std::nullopt;
    }
    return ri;
}

}  // namespace

void enumerate_integer_points(const RawSystem& sys, const std::function<bool(const QVec&)>& visit) {
    const std::size_t r = sys.dim;
    if (r == 0) {
        // empty coordinate vector is the single candidate
        for (std::size_t i = 0; i < sys.ineq.size(); ++i)
            if (sys.ineq_rhs[i] < 0) return;
        for (std::size_t i = 0; i < sys.eq.size(); ++i)
            if (sys.eq_rhs[i] != 0) return;
        visit(QVec{});
        return;
    }
    auto ranges = coordinate_ranges(sys);
    if (!ranges) return;

    const std::size_t ni = sys.ineq.size(), ne = sys.eq.size();
    // suffix interval sums per row: contribution of coordinates >= d
    auto suffix_bounds = [&](const std::vector<QVec>& rows) {
        std::vector<std::vector<Rat>> smin(rows.size(), std::vector<Rat>(r + 1, Rat(0)));
        auto smax = smin;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t d = r; d-- > 0;) {
                Rat c = rows[i][d];
                Rat a = c * Rat(ranges->lo[d]);
                Rat b = c * Rat(ranges->hi[d]);
                smin[i][d] = smin[i][d + 1] + std::min(a, b);
                smax[i][d] = smax[i][d + 1] + std::max(a, b);
            }
        }
        return std::make_pair(std::move(smin), std::move(smax));
    };
    auto [imin, imax] = suffix_bounds(sys.ineq);
    auto [emin, emax] = suffix_bounds(sys.eq);

    QVec ires = sys.ineq_rhs;  // residual rhs after fixing a prefix
    QVec eres = sys.eq_rhs;
    QVec m(r, Rat(0));
    bool stop = false;

    auto rec = [&](auto&& self, std::size_t d) -> void {
        if (stop) return;
        for (std::size_t i = 0; i < ni; ++i)
            if (imin[i][d] > ires[i]) return;  // no suffix can satisfy row i
        for (std::size_t i = 0; i < ne; ++i)
            if (eres[i] < emin[i][d] || eres[i] > emax[i][d]) return;
        if (d == r) {
            stop = !visit(m);
            return;
        }
        Rat lo(ranges->lo[d]), hi(ranges->hi[d]);
        for (std::size_t i = 0; i < ni; ++i) {
            const Rat& c = sys.ineq[i][d];
            if (c == 0) continue;
            Rat limit = (ires[i] - imin[i][d + 1]) / c;
            if (c > 0) hi = std::min(hi, limit);
            else lo = std::max(lo, limit);
        }
        for (std::size_t i = 0; i < ne; ++i) {
            const Rat& c = sys.eq[i][d];
            if (c == 0) continue;
            Rat a = (eres[i] - emin[i][d + 1]) / c;
            Rat b = (eres[i] - emax[i][d + 1]) / c;
            if (a > b) std::swap(a, b);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        Int vlo = rat_ceil(lo), vhi = rat_floor(hi);
        for (Int v = vlo; v <= vhi && !stop; ++v) {
            m[d] = Rat(v);
            for (std::size_t i = 0; i < ni; ++i)
                if (sys.ineq[i][d] != 0) ires[i] -= sys.ineq[i][d] * m[d];
            for (std::size_t i = 0; i < ne; ++i)
                if (sys.eq[i][d] != 0) eres[i] -= sys.eq[i][d] * m[d];
            self(self, d + 1);
            for (std::size_t i = 0; i < ni; ++i)
                if (sys.ineq[i][d] != 0) ires[i] += sys.ineq[i][d] * m[d];
            for (std::size_t i = 0; i < ne; ++i)
                if (sys.eq[i][d] != 0) eres[i] += sys.eq[i][d] * m[d];
        }
        m[d] = 0;
    };
    rec(rec, 0);
}

}  // namespace detail

void enumerate_points(const AffineLattice& l, const Polytope& k,
                      const std::function<bool(const QVec&)>& visit) {
    if (l.ambient_dim() != k.dim()) throw std::invalid_argument("enumerate_points: dimension mismatch");
    if (l.rank() == 0) {
        if (k.contains(l.shift())) visit(l.shift());
        return;
    }
    QMat reduced = lll_reduce(l.basis());
    detail::RawSystem sys;
    sys.dim = reduced.cols();
    const QMat& a = k.ineq_matrix();
    QVec ashift = a * l.shift();
    QMat ab = a * reduced;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sys.ineq.push_back(ab.row(i));
        sys.ineq_rhs.push_back(k.ineq_rhs()[i] - ashift[i]);
    }
    const QMat& c = k.eq_matrix();
    if (c.rows() > 0) {
        QVec cshift = c * l.shift();
        QMat cb = c * reduced;
        for (std::size_t i = 0; i < c.rows(); ++i) {
            sys.eq.push_back(cb.row(i));
            sys.eq_rhs.push_back(k.eq_rhs()[i] - cshift[i]);
        }
    }
    detail::enumerate_integer_points(sys, [&](const QVec& m) {
        return visit(add(l.shift(), reduced * m));
    });
}

std::vector<QVec> collect_points(const AffineLattice& l, const Polytope& k) {
    std::vector<QVec> out;
    enumerate_points(l, k, [&](const QVec& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

namespace {

QVec canonical_sign(QVec y) {
    for (const auto& e : y) {
        if (e == 0) continue;
        if (e < 0) return negate(y);
        break;
    }
    return y;
}

FlatDirection finish_direction(const Polytope& k, const AffineLattice& l, QVec y) {
    FlatDirection fd;
    fd.dual_vector = canonical_sign(std::move(y));
    fd.max_value = k.support(fd.dual_vector);
    fd.min_value = -k.support(negate(fd.dual_vector));
    fd.width = fd.max_value - fd.min_value;
    // lattice values of <y, x> lie in <y, shift> + Z; pick the class value in range
    Rat base = dot(fd.dual_vector, l.shift());
    Rat candidate = base + Rat(rat_ceil(fd.min_value - base));
    if (candidate <= fd.max_value) fd.beta = candidate;
    return fd;
}

}  // namespace

std::optional<FlatDirection> flat_direction(const Polytope& k, const AffineLattice& l,
                                            const Rat& threshold) {
    if (!k.full_dimensional())
        throw std::invalid_argument("flat_direction: full-dimensional polytope required");
    const std::size_t n = k.dim();
    if (l.ambient_dim() != n || l.rank() != n)
        throw std::invalid_argument("flat_direction: full-rank lattice required");
    QMat dual = dual_basis(l.basis());

    // fast path: dual basis directions against the outer box
    const auto& box = k.outer_box();
    for (std::size_t j = 0; j < n; ++j) {
        QVec y = dual.col(j);
        Rat bound(0);
        for (std::size_t i = 0; i < n; ++i) bound += abs(y[i]) * (box.second[i] - box.first[i]);
        if (bound <= threshold) {
            FlatDirection fd = finish_direction(k, l, std::move(y));
            if (fd.width <= threshold) return fd;
        }
    }

    // complete scan: integer points of {w : width(K, D w) <= threshold}
    const auto& verts = k.vertices();
    detail::RawSystem sys;
    sys.dim = n;
    QMat dt = dual.transpose();
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < verts.size(); ++j) {
            if (i == j) continue;
            sys.ineq.push_back(dt * sub(verts[i], verts[j]));
            sys.ineq_rhs.push_back(threshold);
        }
    std::optional<QVec> hit;
    detail::enumerate_integer_points(sys, [&](const QVec& w) {
        if (is_zero(w)) return true;
        hit = w;
        return false;
    });
    if (!hit) return std::nullopt;
    FlatDirection fd = finish_direction(k, l, dual * *hit);
    if (fd.width > threshold)
        throw InvariantViolationError("flat_direction: scan produced a wide direction");
    return fd;
}

std::optional<AffineLattice> hyperplane_section(const AffineLattice& l, const QVec& y,
                                                const Rat& beta) {
    const std::size_t r = l.rank();
    QVec g(r);
    bool nonzero = false;
    for (std::size_t j = 0; j < r; ++j) {
        g[j] = dot(y, l.basis().col(j));
        if (!is_integer(g[j]))
            throw std::invalid_argument("hyperplane_section: y is not a dual vector of L");
        if (g[j] != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("hyperplane_section: y vanishes on the lattice span");
    Rat t = beta - dot(y, l.shift());
    if (!is_integer(t)) return std::nullopt;
    QMat grow(1, r);
    grow.set_row(0, g);
    auto sol = solve_diophantine(grow, {t});
    if (!sol) return std::nullopt;
    QVec new_shift = add(l.shift(), l.basis() * sol->particular);
    QMat new_basis = l.basis() * sol->kernel_basis;
    return AffineLattice(std::move(new_shift), std::move(new_basis));
}

}  // namespace latticecut
