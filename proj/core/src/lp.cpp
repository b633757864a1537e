#include "latticecut/lp.hpp"

#include <limits>
#include <stdexcept>

namespace latticecut {

void LpProblem::validate() const {
    const std::size_t n = objective.size();
    if (constraints.rows() != rhs.size() || constraints.rows() != senses.size())
        throw std::invalid_argument("LpProblem: row count mismatch");
    if (constraints.rows() > 0 && constraints.cols() != n)
        throw std::invalid_argument("LpProblem: column count mismatch");
    if (!lower.empty() && lower.size() != n) throw std::invalid_argument("LpProblem: lower bound size");
    if (!upper.empty() && upper.size() != n) throw std::invalid_argument("LpProblem: upper bound size");
    for (std::size_t i = 0; i < n; ++i) {
        if (!lower.empty() && !upper.empty() && lower[i] && upper[i] && *lower[i] > *upper[i])
            throw std::invalid_argument("LpProblem: crossing bounds");
    }
}

namespace {

// Dense tableau simplex over exact rationals.
//
// Internal variables y_j >= 0 arise from the usual substitutions:
//   x_i = L_i + y      (lower bound present)
//   x_i = U_i - y      (only an upper bound)
//   x_i = y+ - y-      (free)
// Rows carry slack/surplus and, while phase 1 runs, artificial columns.
struct Tableau {
    std::vector<QVec> rows;                // structural + slack + artificial columns
    QVec rhs;                              // per row, kept >= 0
    std::vector<std::size_t> basis;        // column index per row
    std::vector<char> enterable;           // per column

    void pivot(std::size_t r, std::size_t c, std::vector<QVec>& obj_rows, QVec& obj_rhs) {
        Rat inv = Rat(1) / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        for (std::size_t k = 0; k < obj_rows.size(); ++k) {
            if (obj_rows[k][c] == 0) continue;
            Rat f = obj_rows[k][c];
            for (std::size_t j = 0; j < obj_rows[k].size(); ++j) obj_rows[k][j] -= f * rows[r][j];
            obj_rhs[k] -= f * rhs[r];
        }
        basis[r] = c;
    }
};

// runs one objective to optimality; earlier objective rows (locked) must stay
// at value: entering columns are restricted to zero reduced cost in them.
// Returns false when unbounded.
bool optimize(Tableau& t, std::vector<QVec>& obj_rows, QVec& obj_rhs) {
    const std::size_t cur = obj_rows.size() - 1;
    for (;;) {
        // Bland: smallest enterable column improving the current objective and
        // neutral for every locked one.
        std::size_t enter = std::numeric_limits<std::size_t>::max();
        for (std::size_t j = 0; j < obj_rows[cur].size(); ++j) {
            if (!t.enterable[j]) continue;
            if (obj_rows[cur][j] <= 0) continue;
            bool locked_ok = true;
            for (std::size_t k = 0; k + 1 < obj_rows.size(); ++k)
                if (obj_rows[k][j] != 0) { locked_ok = false; break; }
            if (locked_ok) { enter = j; break; }
        }
        if (enter == std::numeric_limits<std::size_t>::max()) return true;  // optimal
        std::size_t leave = std::numeric_limits<std::size_t>::max();
        Rat best;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            if (t.rows[i][enter] <= 0) continue;
            Rat ratio = t.rhs[i] / t.rows[i][enter];
            if (leave == std::numeric_limits<std::size_t>::max() || ratio < best ||
                (ratio == best && t.basis[i] < t.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == std::numeric_limits<std::size_t>::max()) return false;  // unbounded
        t.pivot(leave, enter, obj_rows, obj_rhs);
    }
}

// reduced objective row for a fresh objective `c` over all current columns;
// assumes the tableau is in reduced form (basic columns are unit vectors)
QVec reduced_row(const Tableau& t, const QVec& c, Rat& out_rhs) {
    const std::size_t w = t.rows.empty() ? c.size() : t.rows[0].size();
    QVec row = c;
    row.resize(w, Rat(0));
    out_rhs = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Rat f = row[t.basis[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < w; ++j) row[j] -= f * t.rows[i][j];
        out_rhs -= f * t.rhs[i];
    }
    return row;
}

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    p.validate();
    const std::size_t n = p.num_vars();
    const std::size_t m = p.constraints.rows();

    // variable substitution bookkeeping: x_i = shift_i + sign_i * y_{col_i} (+ optional pair column)
    struct VarMap {
        Rat shift;
        int sign;                 // +1 or -1
        std::size_t col;          // primary internal column
        std::optional<std::size_t> neg_col;  // for free variables: x = y(col) - y(neg_col)
    };
    std::vector<VarMap> vmap(n);
    std::size_t next_col = 0;
    std::vector<std::pair<std::size_t, Rat>> extra_ub_rows;  // internal col <= bound
    for (std::size_t i = 0; i < n; ++i) {
        std::optional<Rat> lo = p.lower.empty() ? std::nullopt : p.lower[i];
        std::optional<Rat> hi = p.upper.empty() ? std::nullopt : p.upper[i];
        if (lo) {
            vmap[i] = {*lo, +1, next_col++, std::nullopt};
            if (hi) extra_ub_rows.emplace_back(vmap[i].col, *hi - *lo);
        } else if (hi) {
            vmap[i] = {*hi, -1, next_col++, std::nullopt};
        } else {
            vmap[i] = {Rat(0), +1, next_col, next_col + 1};
            next_col += 2;
        }
    }
    const std::size_t n_struct = next_col;
    const std::size_t n_rows = m + extra_ub_rows.size();

    // substituted rows with rhs sign normalized
    std::vector<QVec> raw(n_rows, QVec(n_struct, Rat(0)));
    QVec raw_rhs(n_rows, Rat(0));
    std::vector<RowSense> sense(n_rows);
    for (std::size_t r = 0; r < m; ++r) {
        Rat b = p.rhs[r];
        for (std::size_t i = 0; i < n; ++i) {
            const Rat& a = p.constraints(r, i);
            if (a == 0) continue;
            b -= a * vmap[i].shift;
            raw[r][vmap[i].col] += a * vmap[i].sign;
            if (vmap[i].neg_col) raw[r][*vmap[i].neg_col] -= a * vmap[i].sign;
        }
        raw_rhs[r] = b;
        sense[r] = p.senses[r];
    }
    for (std::size_t k = 0; k < extra_ub_rows.size(); ++k) {
        raw[m + k][extra_ub_rows[k].first] = 1;
        raw_rhs[m + k] = extra_ub_rows[k].second;
        sense[m + k] = RowSense::Le;
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (raw_rhs[r] < 0) {
            for (auto& v : raw[r]) v = -v;
            raw_rhs[r] = -raw_rhs[r];
            if (sense[r] == RowSense::Le) sense[r] = RowSense::Ge;
            else if (sense[r] == RowSense::Ge) sense[r] = RowSense::Le;
        }
    }

    // slack / surplus columns, then artificials
    std::size_t n_slack = 0;
    for (auto s : sense)
        if (s != RowSense::Eq) ++n_slack;
    const std::size_t ncols = n_struct + n_slack;
    std::size_t n_art = 0;
    for (auto s : sense)
        if (s != RowSense::Le) ++n_art;

    Tableau t;
    t.rows.assign(n_rows, QVec(ncols + n_art, Rat(0)));
    t.rhs = raw_rhs;
    t.basis.assign(n_rows, 0);
    t.enterable.assign(ncols + n_art, 1);

    std::size_t slack_at = n_struct, art_at = ncols;
    std::vector<std::size_t> art_cols;
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t j = 0; j < n_struct; ++j) t.rows[r][j] = raw[r][j];
        switch (sense[r]) {
            case RowSense::Le:
                t.rows[r][slack_at] = 1;
                t.basis[r] = slack_at++;
                break;
            case RowSense::Ge:
                t.rows[r][slack_at] = -1;
                ++slack_at;
                t.rows[r][art_at] = 1;
                t.basis[r] = art_at;
                art_cols.push_back(art_at++);
                break;
            case RowSense::Eq:
                t.rows[r][art_at] = 1;
                t.basis[r] = art_at;
                art_cols.push_back(art_at++);
                break;
        }
    }

    std::vector<QVec> obj_rows;
    QVec obj_rhs;

    if (n_art > 0) {
        // phase 1: maximize -sum(artificials)
        QVec phase1(ncols + n_art, Rat(0));
        for (auto c : art_cols) phase1[c] = -1;
        Rat rr;
        obj_rows.push_back(reduced_row(t, phase1, rr));
        obj_rhs.push_back(rr);
        if (!optimize(t, obj_rows, obj_rhs))
            throw std::logic_error("solve_lp: phase 1 unbounded");
        Rat art_sum(0);
        for (std::size_t r = 0; r < n_rows; ++r)
            if (t.basis[r] >= ncols) art_sum += t.rhs[r];
        if (art_sum != 0) return {LpStatus::Infeasible, {}, Rat(0)};
        // drive artificials out of the basis or drop redundant rows
        for (std::size_t r = 0; r < t.rows.size();) {
            if (t.basis[r] < ncols) { ++r; continue; }
            std::size_t c = ncols;
            for (std::size_t j = 0; j < ncols; ++j)
                if (t.enterable[j] && t.rows[r][j] != 0) { c = j; break; }
            if (c < ncols) {
                t.pivot(r, c, obj_rows, obj_rhs);
                ++r;
            } else {
                t.rows.erase(t.rows.begin() + r);
                t.rhs.erase(t.rhs.begin() + r);
                t.basis.erase(t.basis.begin() + r);
            }
        }
        for (auto c : art_cols) t.enterable[c] = 0;
        obj_rows.clear();
        obj_rhs.clear();
    }

    // phase 2: the user objective in internal coordinates
    QVec c_int(ncols + n_art, Rat(0));
    Rat c_const(0);
    for (std::size_t i = 0; i < n; ++i) {
        const Rat& ci = p.objective[i];
        if (ci == 0) continue;
        c_const += ci * vmap[i].shift;
        c_int[vmap[i].col] += ci * vmap[i].sign;
        if (vmap[i].neg_col) c_int[*vmap[i].neg_col] -= ci * vmap[i].sign;
    }
    Rat rr;
    obj_rows.push_back(reduced_row(t, c_int, rr));
    obj_rhs.push_back(rr);
    if (!optimize(t, obj_rows, obj_rhs)) return {LpStatus::Unbounded, {}, Rat(0)};

    // lexicographic refinement: maximize x_1, x_2, ... over the optimal face.
    // An unbounded refinement direction is only possible for unbounded feasible
    // regions; refinement simply stops improving that coordinate then.
    for (std::size_t i = 0; i < n; ++i) {
        QVec e(ncols + n_art, Rat(0));
        e[vmap[i].col] += vmap[i].sign;
        if (vmap[i].neg_col) e[*vmap[i].neg_col] -= vmap[i].sign;
        Rat r2;
        obj_rows.push_back(reduced_row(t, e, r2));
        obj_rhs.push_back(r2);
        if (!optimize(t, obj_rows, obj_rhs)) {
            // drop the unbounded direction and pin the coordinate instead
            obj_rows.pop_back();
            obj_rhs.pop_back();
        }
    }

    // read out the solution
    QVec y(ncols + n_art, Rat(0));
    for (std::size_t r = 0; r < t.rows.size(); ++r) y[t.basis[r]] = t.rhs[r];
    QVec x(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rat v = y[vmap[i].col];
        if (vmap[i].neg_col) v -= y[*vmap[i].neg_col];
        x[i] = vmap[i].shift + Rat(vmap[i].sign) * v;
    }
    return {LpStatus::Optimal, x, dot(p.objective, x)};
}

}  // namespace latticecut
