#include "latticecut/polytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace latticecut {

namespace {

// scale (a, b) so that a is a primitive integer vector; b keeps up
void primitive_row(QVec& a, Rat& b) {
    Int l(1);
    for (const auto& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Rat f(l);
    if (l != 1) {
        for (auto& x : a) x *= f;
        b *= f;
    }
    Int g(0);
    for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    if (g > 1) {
        Rat inv = make_rat(Int(1), g);
        for (auto& x : a) x *= inv;
        b *= inv;
    }
}

LpProblem lp_over(const QMat& a, const QVec& b, const QMat& eq, const QVec& eqd, QVec objective) {
    LpProblem p;
    p.objective = std::move(objective);
    const std::size_t m = a.rows(), me = eq.rows();
    p.constraints = QMat(m + me, p.objective.size());
    p.rhs.resize(m + me);
    p.senses.resize(m + me);
    for (std::size_t i = 0; i < m; ++i) {
        p.constraints.set_row(i, a.row(i));
        p.rhs[i] = b[i];
        p.senses[i] = RowSense::Le;
    }
    for (std::size_t i = 0; i < me; ++i) {
        p.constraints.set_row(m + i, eq.row(i));
        p.rhs[m + i] = eqd[i];
        p.senses[m + i] = RowSense::Eq;
    }
    return p;
}

}  // namespace

std::optional<Polytope> Polytope::build(QMat a, QVec b, QMat c, QVec d, bool throw_on_empty) {
    std::size_t n = a.cols() > 0 ? a.cols() : c.cols();
    if (n == 0) throw std::invalid_argument("Polytope: ambient dimension is zero");
    if (a.rows() != b.size() || c.rows() != d.size())
        throw std::invalid_argument("Polytope: row count mismatch");
    if ((a.rows() > 0 && a.cols() != n) || (c.rows() > 0 && c.cols() != n))
        throw std::invalid_argument("Polytope: column count mismatch");

    std::vector<QVec> ineq_rows;
    std::vector<Rat> ineq_rhs;
    std::vector<QVec> eq_rows;
    std::vector<Rat> eq_rhs;
    auto empty_out = [&]() -> std::optional<Polytope> {
        if (throw_on_empty) throw EmptyPolytopeError("Polytope: empty feasible set");
        return std::nullopt;
    };

    for (std::size_t i = 0; i < a.rows(); ++i) {
        QVec row = a.row(i);
        Rat rhs = b[i];
        if (is_zero(row)) {
            if (rhs < 0) return empty_out();
            continue;
        }
        primitive_row(row, rhs);
        bool dup = false;
        for (std::size_t k = 0; k < ineq_rows.size(); ++k) {
            if (ineq_rows[k] == row) {
                ineq_rhs[k] = std::min(ineq_rhs[k], rhs);
                dup = true;
                break;
            }
        }
        if (!dup) {
            ineq_rows.push_back(std::move(row));
            ineq_rhs.push_back(rhs);
        }
    }
    for (std::size_t i = 0; i < c.rows(); ++i) {
        QVec row = c.row(i);
        Rat rhs = d[i];
        if (is_zero(row)) {
            if (rhs != 0) return empty_out();
            continue;
        }
        primitive_row(row, rhs);
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs);
    }

    QMat am = QMat(ineq_rows.size(), n);
    for (std::size_t i = 0; i < ineq_rows.size(); ++i) am.set_row(i, ineq_rows[i]);
    QMat cm = QMat(eq_rows.size(), n);
    for (std::size_t i = 0; i < eq_rows.size(); ++i) cm.set_row(i, eq_rows[i]);
    QVec bv(ineq_rhs.begin(), ineq_rhs.end());
    QVec dv(eq_rhs.begin(), eq_rhs.end());

    // nonempty?
    {
        auto r = solve_lp(lp_over(am, bv, cm, dv, QVec(n, Rat(0))));
        if (r.status == LpStatus::Infeasible) return empty_out();
    }
    // bounded? record the exact box on the way
    QVec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        QVec obj(n, Rat(0));
        obj[i] = 1;
        auto rmax = solve_lp(lp_over(am, bv, cm, dv, obj));
        obj[i] = -1;
        auto rmin = solve_lp(lp_over(am, bv, cm, dv, obj));
        if (rmax.status != LpStatus::Optimal || rmin.status != LpStatus::Optimal)
            throw UnboundedPolytopeError("Polytope: unbounded in coordinate " + std::to_string(i));
        hi[i] = rmax.value;
        lo[i] = -rmin.value;
    }
    // implicit equalities: rows tight on the whole feasible set
    std::vector<bool> to_eq(am.rows(), false);
    for (std::size_t i = 0; i < am.rows(); ++i) {
        auto r = solve_lp(lp_over(am, bv, cm, dv, negate(am.row(i))));
        if (-r.value == bv[i]) to_eq[i] = true;
    }
    Polytope k;
    k.n_ = n;
    std::vector<QVec> fin_a;
    QVec fin_b;
    for (std::size_t i = 0; i < am.rows(); ++i) {
        if (to_eq[i]) {
            eq_rows.push_back(am.row(i));
            eq_rhs.push_back(bv[i]);
        } else {
            fin_a.push_back(am.row(i));
            fin_b.push_back(bv[i]);
        }
    }
    // canonical sign and dedupe for the hull block
    std::vector<QVec> fin_c;
    QVec fin_d;
    for (std::size_t i = 0; i < eq_rows.size(); ++i) {
        QVec row = eq_rows[i];
        Rat rhs = eq_rhs[i];
        for (const auto& e : row) {
            if (e == 0) continue;
            if (e < 0) {
                row = negate(row);
                rhs = -rhs;
            }
            break;
        }
        bool dup = false;
        for (std::size_t j = 0; j < fin_c.size() && !dup; ++j)
            dup = fin_c[j] == row && fin_d[j] == rhs;
        if (!dup) {
            fin_c.push_back(std::move(row));
            fin_d.push_back(rhs);
        }
    }
    k.a_ = QMat(fin_a.size(), n);
    for (std::size_t i = 0; i < fin_a.size(); ++i) k.a_.set_row(i, fin_a[i]);
    k.b_ = fin_b;
    k.eq_ = QMat(fin_c.size(), n);
    for (std::size_t i = 0; i < fin_c.size(); ++i) k.eq_.set_row(i, fin_c[i]);
    k.eqd_ = fin_d;
    k.box_ = std::make_pair(lo, hi);
    return k;
}

Polytope::Polytope(QMat a, QVec b) { *this = *build(std::move(a), std::move(b), {}, {}, true); }

Polytope::Polytope(QMat a, QVec b, QMat c, QVec d) {
    *this = *build(std::move(a), std::move(b), std::move(c), std::move(d), true);
}

std::optional<Polytope> Polytope::try_create(QMat a, QVec b, QMat c, QVec d) {
    return build(std::move(a), std::move(b), std::move(c), std::move(d), false);
}

std::size_t Polytope::affine_dim() const { return n_ - eq_.rank(); }

bool Polytope::contains(const QVec& x) const {
    if (x.size() != n_) throw std::invalid_argument("contains: dimension mismatch");
    for (std::size_t i = 0; i < a_.rows(); ++i)
        if (dot(a_.row(i), x) > b_[i]) return false;
    for (std::size_t i = 0; i < eq_.rows(); ++i)
        if (dot(eq_.row(i), x) != eqd_[i]) return false;
    return true;
}

Rat Polytope::support(const QVec& y) const {
    auto r = solve_lp(lp_over(a_, b_, eq_, eqd_, y));
    if (r.status != LpStatus::Optimal)
        throw InvariantViolationError("support: LP not optimal on a canonical polytope");
    return r.value;
}

Rat Polytope::width(const QVec& y) const { return support(y) + support(negate(y)); }

const std::pair<QVec, QVec>& Polytope::outer_box() const {
    if (!box_) box_ = exact_box();
    return *box_;
}

std::pair<QVec, QVec> Polytope::exact_box() const {
    QVec lo(n_), hi(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        QVec e(n_, Rat(0));
        e[i] = 1;
        hi[i] = support(e);
        e[i] = -1;
        lo[i] = -support(e);
    }
    box_ = std::make_pair(lo, hi);
    return *box_;
}

QVec Polytope::relative_interior_point() const {
    // max t  s.t.  a_i x + ||a_i||_1 t <= b_i,  eq rows,  t <= 1
    const std::size_t m = a_.rows(), me = eq_.rows();
    LpProblem p;
    p.objective = QVec(n_ + 1, Rat(0));
    p.objective[n_] = 1;
    p.constraints = QMat(m + me + 1, n_ + 1);
    p.rhs.resize(m + me + 1);
    p.senses.assign(m + me + 1, RowSense::Le);
    for (std::size_t i = 0; i < m; ++i) {
        Rat s1(0);
        for (std::size_t j = 0; j < n_; ++j) {
            p.constraints(i, j) = a_(i, j);
            s1 += abs(a_(i, j));
        }
        p.constraints(i, n_) = s1;
        p.rhs[i] = b_[i];
    }
    for (std::size_t i = 0; i < me; ++i) {
        for (std::size_t j = 0; j < n_; ++j) p.constraints(m + i, j) = eq_(i, j);
        p.rhs[m + i] = eqd_[i];
        p.senses[m + i] = RowSense::Eq;
    }
    p.constraints(m + me, n_) = 1;
    p.rhs[m + me] = 1;
    auto r = solve_lp(p);
    if (r.status != LpStatus::Optimal || r.value <= 0)
        throw InvariantViolationError("relative_interior_point: no strictly feasible point");
    return QVec(r.point.begin(), r.point.begin() + n_);
}

const std::vector<QVec>& Polytope::vertices() const {
    if (verts_) return *verts_;
    const std::size_t m = a_.rows();
    const std::size_t rank_eq = eq_.rank();
    const std::size_t need = n_ - rank_eq;
    std::vector<QVec> found;

    std::vector<std::size_t> combo(need);
    auto try_combo = [&]() {
        QMat s(eq_.rows() + need, n_);
        QVec rhs(eq_.rows() + need);
        for (std::size_t i = 0; i < eq_.rows(); ++i) {
            s.set_row(i, eq_.row(i));
            rhs[i] = eqd_[i];
        }
        for (std::size_t k = 0; k < need; ++k) {
            s.set_row(eq_.rows() + k, a_.row(combo[k]));
            rhs[eq_.rows() + k] = b_[combo[k]];
        }
        if (s.rank() != n_) return;
        auto x = s.solve(rhs);
        if (!x) return;
        if (contains(*x)) found.push_back(*x);
    };
    auto next_combination = [&]() {
        for (std::size_t i = need; i-- > 0;) {
            if (combo[i] < m - need + i) {
                ++combo[i];
                for (std::size_t j = i + 1; j < need; ++j) combo[j] = combo[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    if (need == 0) {
        try_combo();
    } else if (m >= need) {
        for (std::size_t k = 0; k < need; ++k) combo[k] = k;
        do {
            try_combo();
        } while (next_combination());
    }
    std::sort(found.begin(), found.end(), lex_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    verts_ = std::make_shared<const std::vector<QVec>>(std::move(found));
    return *verts_;
}

Polytope Polytope::translated(const QVec& t) const {
    if (t.size() != n_) throw std::invalid_argument("translated: dimension mismatch");
    Polytope k(*this);
    k.b_ = add(b_, a_ * t);
    k.eqd_ = add(eqd_, eq_ * t);
    if (box_) k.box_ = std::make_pair(add(box_->first, t), add(box_->second, t));
    if (verts_) {
        std::vector<QVec> vs;
        vs.reserve(verts_->size());
        for (const auto& v : *verts_) vs.push_back(add(v, t));
        k.verts_ = std::make_shared<const std::vector<QVec>>(std::move(vs));
    }
    return k;
}

Polytope Polytope::preimage_full_rank(const QMat& basis) const {
    if (basis.rows() != n_ || basis.cols() != n_)
        throw std::invalid_argument("preimage_full_rank: square basis required");
    bool diag_pos = true;
    for (std::size_t i = 0; i < n_ && diag_pos; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j ? basis(i, j) <= 0 : basis(i, j) != 0) {
                diag_pos = false;
                break;
            }
        }
    if (!diag_pos && basis.det() == 0) throw std::invalid_argument("preimage_full_rank: singular basis");

    Polytope k;
    k.n_ = n_;
    k.a_ = a_ * basis;
    k.b_ = b_;
    for (std::size_t i = 0; i < k.a_.rows(); ++i) {
        QVec row = k.a_.row(i);
        primitive_row(row, k.b_[i]);
        k.a_.set_row(i, row);
    }
    k.eq_ = eq_ * basis;
    k.eqd_ = eqd_;
    for (std::size_t i = 0; i < k.eq_.rows(); ++i) {
        QVec row = k.eq_.row(i);
        primitive_row(row, k.eqd_[i]);
        k.eq_.set_row(i, row);
    }
    if (diag_pos && box_) {
        QVec lo(n_), hi(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            lo[i] = box_->first[i] / basis(i, i);
            hi[i] = box_->second[i] / basis(i, i);
        }
        k.box_ = std::make_pair(lo, hi);
    }
    return k;
}

Polytope Polytope::hull_slice_trusted(const QVec& shift, const QMat& w) const {
    if (shift.size() != n_ || w.rows() != n_)
        throw std::invalid_argument("hull_slice_trusted: dimension mismatch");
    // the equality block must vanish identically on shift + im(W)
    if (!is_zero(sub(eq_ * shift, eqd_)))
        throw InvariantViolationError("hull_slice_trusted: shift violates the hull equations");
    QMat ew = eq_ * w;
    for (std::size_t i = 0; i < ew.rows(); ++i)
        for (std::size_t j = 0; j < ew.cols(); ++j)
            if (ew(i, j) != 0)
                throw InvariantViolationError("hull_slice_trusted: W leaves the hull");

    Polytope k;
    k.n_ = w.cols();
    k.a_ = a_ * w;
    k.b_ = sub(b_, a_ * shift);
    for (std::size_t i = 0; i < k.a_.rows(); ++i) {
        QVec row = k.a_.row(i);
        primitive_row(row, k.b_[i]);
        k.a_.set_row(i, row);
    }
    k.eq_ = QMat(0, k.n_);
    k.eqd_ = {};
    if (verts_) {
        std::vector<QVec> vs;
        vs.reserve(verts_->size());
        bool ok = true;
        for (const auto& v : *verts_) {
            auto s = w.solve(sub(v, shift));
            if (!s) {
                ok = false;
                break;
            }
            vs.push_back(*s);
        }
        if (ok) {
            std::sort(vs.begin(), vs.end(), lex_less);
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            k.verts_ = std::make_shared<const std::vector<QVec>>(std::move(vs));
        }
    }
    return k;
}

std::optional<Polytope> Polytope::slice(const QVec& shift, const QMat& w) const {
    QMat a2 = a_ * w;
    QVec b2 = sub(b_, a_ * shift);
    QMat c2 = eq_ * w;
    QVec d2 = sub(eqd_, eq_ * shift);
    return try_create(std::move(a2), std::move(b2), std::move(c2), std::move(d2));
}

Polytope Polytope::scaled_from(const QVec& center, const Rat& factor) const {
    if (factor <= 0) throw std::invalid_argument("scaled_from: positive factor required");
    Polytope k(*this);
    QVec ac = a_ * center;
    for (std::size_t i = 0; i < b_.size(); ++i) k.b_[i] = factor * b_[i] - (factor - 1) * ac[i];
    QVec cc = eq_ * center;
    for (std::size_t i = 0; i < eqd_.size(); ++i) k.eqd_[i] = factor * eqd_[i] - (factor - 1) * cc[i];
    if (box_) {
        QVec lo(n_), hi(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            lo[i] = center[i] + factor * (box_->first[i] - center[i]);
            hi[i] = center[i] + factor * (box_->second[i] - center[i]);
        }
        k.box_ = std::make_pair(lo, hi);
    } else {
        k.box_.reset();
    }
    if (verts_) {
        std::vector<QVec> vs;
        vs.reserve(verts_->size());
        for (const auto& v : *verts_)
            vs.push_back(add(center, scale(sub(v, center), factor)));
        k.verts_ = std::make_shared<const std::vector<QVec>>(std::move(vs));
    } else {
        k.verts_.reset();
    }
    return k;
}

std::optional<Polytope> Polytope::cut(const QVec& normal, const Rat& rhs, RowSense sense) const {
    if (normal.size() != n_) throw std::invalid_argument("cut: dimension mismatch");
    QVec a = normal;
    Rat beta = rhs;
    if (sense == RowSense::Ge) {
        a = negate(a);
        beta = -beta;
    }
    if (sense == RowSense::Eq) {
        QMat c2(eq_.rows() + 1, n_);
        QVec d2(eq_.rows() + 1);
        for (std::size_t i = 0; i < eq_.rows(); ++i) {
            c2.set_row(i, eq_.row(i));
            d2[i] = eqd_[i];
        }
        c2.set_row(eq_.rows(), a);
        d2[eq_.rows()] = beta;
        return try_create(a_, b_, std::move(c2), std::move(d2));
    }
    QMat a2(a_.rows() + 1, n_);
    QVec b2(a_.rows() + 1);
    for (std::size_t i = 0; i < a_.rows(); ++i) {
        a2.set_row(i, a_.row(i));
        b2[i] = b_[i];
    }
    a2.set_row(a_.rows(), a);
    b2[a_.rows()] = beta;
    return try_create(std::move(a2), std::move(b2), eq_, eqd_);
}

Polytope Polytope::cut_interior_trusted(const QVec& normal, const Rat& rhs) const {
    if (normal.size() != n_ || is_zero(normal))
        throw std::invalid_argument("cut_interior_trusted: bad normal");
    Polytope k(*this);
    QVec a = normal;
    Rat beta = rhs;
    primitive_row(a, beta);
    QMat a2(a_.rows() + 1, n_);
    for (std::size_t i = 0; i < a_.rows(); ++i) a2.set_row(i, a_.row(i));
    a2.set_row(a_.rows(), a);
    k.a_ = std::move(a2);
    k.b_.push_back(beta);
    k.verts_.reset();  // box stays a valid outer bound
    return k;
}

Rat gauge_norm(const Polytope& k, const QVec& origin, const QVec& x) {
    if (!k.full_dimensional()) throw GaugeDomainError("gauge_norm: body is not full dimensional");
    const QMat& a = k.ineq_matrix();
    const QVec& b = k.ineq_rhs();
    QVec ao = a * origin;
    QVec ax = a * x;
    Rat best(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat slack = b[i] - ao[i];
        if (slack <= 0) throw GaugeDomainError("gauge_norm: origin not strictly interior");
        if (ax[i] > 0) {
            Rat q = ax[i] / slack;
            if (q > best) best = q;
        }
    }
    return best;
}

}  // namespace latticecut
