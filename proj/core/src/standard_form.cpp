#include "latticecut/standard_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace latticecut {

void StandardFormIP::validate() const {
    if (a.rows() != b.size()) throw std::invalid_argument("StandardFormIP: row mismatch");
    if (a.cols() != u.size()) throw std::invalid_argument("StandardFormIP: column mismatch");
    if (!a.all_integer() || !all_integer(b)) throw std::invalid_argument("StandardFormIP: integer data required");
    for (long ui : u)
        if (ui < 1) throw std::invalid_argument("StandardFormIP: bounds must be >= 1");
}

std::vector<Rat> cell_thresholds(long u) {
    if (u < 1) throw std::invalid_argument("cell_thresholds: u >= 1 required");
    std::vector<Rat> t{Rat(0), Rat(u)};
    long jmax = 0;
    while ((1L << jmax) < u) ++jmax;  // ceil(log2(u))
    for (long j = 0; j <= jmax; ++j) {
        Rat plane = j == 0 ? make_rat(1, 2) : Rat(1L << (j - 1));
        Rat mirror = Rat(u) - plane;
        if (plane >= 0 && plane <= u) t.push_back(plane);
        if (mirror >= 0 && mirror <= u) t.push_back(mirror);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

std::size_t interval_count(long u) { return cell_thresholds(u).size() - 1; }

std::size_t cell_count(const std::vector<long>& u) {
    std::size_t total = 1;
    for (long ui : u) total *= interval_count(ui);
    return total;
}

void enumerate_cells(const std::vector<long>& u, const std::function<bool(const CellIndex&)>& visit) {
    const std::size_t n = u.size();
    std::vector<std::size_t> counts(n);
    for (std::size_t i = 0; i < n; ++i) counts[i] = interval_count(u[i]);
    CellIndex cell;
    cell.interval.assign(n, 0);
    for (;;) {
        if (!visit(cell)) return;
        std::size_t d = n;
        while (d > 0) {
            --d;
            if (++cell.interval[d] < counts[d]) break;
            cell.interval[d] = 0;
            if (d == 0) return;
        }
        if (n == 0) return;
    }
}

bool reflect_check(const QVec& lo, const QVec& hi, const std::vector<long>& u, const QVec& v) {
    const std::size_t n = u.size();
    const Rat half(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < lo[i] || v[i] > hi[i]) throw std::invalid_argument("reflect_check: v outside the cell");
        // scaled coordinate range is [2 lo - v, 2 hi - v]
        if (Rat(2) * lo[i] - v[i] < -half) return false;
        if (Rat(2) * hi[i] - v[i] > Rat(u[i]) + half) return false;
    }
    return true;
}

void CellCounters::absorb(const CellCounters& other) {
    cells_total += other.cells_total;
    cells_examined += other.cells_examined;
    cells_skipped += other.cells_skipped;
    oracle_calls += other.oracle_calls;
    gamma_probes += other.gamma_probes;
}

namespace {

// one cell: [lo, hi] box intersected with {Ax = b}, parametrized through the
// integer solution lattice x = x0 + W s
struct CellPipeline {
    const QMat& w;          // n x kappa kernel basis
    const QVec& x0;         // particular integer solution
    const StandardFormIP& inst;
    const ApxIpOracle& oracle;
    std::uint64_t seed;
    CellCounters& counters;

    // returns the feasible point when the oracle finds one in this cell
    std::optional<QVec> run(const QVec& lo, const QVec& hi, std::size_t cell_ordinal) {
        const std::size_t n = inst.u.size(), kappa = w.cols();
        if (kappa == 0) {
            // rank(A) = n: x0 is the only real solution of Ax = b
            ++counters.oracle_calls;
            for (std::size_t i = 0; i < n; ++i)
                if (x0[i] < lo[i] || x0[i] > hi[i]) return std::nullopt;
            return check_and_finish(x0);
        }
        // box rows in s-space: lo - x0 <= W s <= hi - x0
        QMat rows(2 * n, kappa);
        QVec rhs(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < kappa; ++j) {
                rows(i, j) = w(i, j);
                rows(n + i, j) = -w(i, j);
            }
            rhs[i] = hi[i] - x0[i];
            rhs[n + i] = x0[i] - lo[i];
        }
        auto cell = Polytope::try_create(std::move(rows), std::move(rhs));
        if (!cell) {
            ++counters.cells_skipped;  // empty after intersecting the equations
            return std::nullopt;
        }
        // reduce a degenerate slice to its hull over the integer sublattice
        QVec shift(kappa, Rat(0));
        QMat basis = QMat::identity(kappa);
        Polytope body = *cell;
        while (!body.full_dimensional()) {
            auto [ce, de] = integerize_rows(body.eq_matrix(), body.eq_rhs());
            auto dio = solve_diophantine(ce, de);
            if (!dio) {
                ++counters.cells_skipped;  // hull holds no integer point
                return std::nullopt;
            }
            shift = add(shift, basis * dio->particular);
            if (dio->kernel_basis.cols() == 0) {
                ++counters.oracle_calls;
                if (!body.contains(dio->particular)) return std::nullopt;
                return finish_from_s(shift);
            }
            basis = basis * dio->kernel_basis;
            body = body.hull_slice_trusted(dio->particular, dio->kernel_basis);
        }
        auto [center, inner] = interior_center(body, mix_seed(seed, cell_ordinal), 256);
        (void)inner;
        OracleQuery q{body, center, AffineLattice::standard(body.dim())};
        ++counters.oracle_calls;
        OracleAnswer ans = oracle(q);
        verify_oracle_answer(q, ans);
        if (ans.empty()) return std::nullopt;
        return finish_from_s(add(shift, basis * *ans.point));
    }

    std::optional<QVec> finish_from_s(const QVec& s) { return check_and_finish(add(x0, w * s)); }

    std::optional<QVec> check_and_finish(const QVec& x) {
        if (!all_integer(x)) throw InvariantViolationError("standard-form: non-integer candidate");
        if (inst.a * x != inst.b) throw InvariantViolationError("standard-form: candidate violates Ax=b");
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < 0 || x[i] > inst.u[i])
                throw InvariantViolationError("standard-form: candidate escapes the box bounds");
        return x;
    }
};

}  // namespace

StandardFormResult solve_standard_form(const StandardFormIP& inst, const ApxIpOracle& oracle,
                                       std::uint64_t seed) {
    inst.validate();
    const std::size_t n = inst.u.size();
    StandardFormResult out;
    out.counters.cells_total = cell_count(inst.u);

    auto dio = solve_diophantine(inst.a, inst.b);
    if (!dio) {
        out.counters.cells_examined = out.counters.cells_total;
        out.counters.cells_skipped = out.counters.cells_total;
        return out;  // no integer solution of Ax = b at all
    }

    std::vector<std::vector<Rat>> th(n);
    std::vector<std::size_t> counts(n);
    for (std::size_t i = 0; i < n; ++i) {
        th[i] = cell_thresholds(inst.u[i]);
        counts[i] = th[i].size() - 1;
    }
    // suffix cell products for bulk-skip accounting
    std::vector<std::size_t> suffix(n + 1, 1);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * counts[i];

    // interval pruning state per equality row: partial sum of chosen
    // intervals, plus [0, u] hull for the free coordinates
    const std::size_t m = inst.a.rows();
    std::vector<std::vector<Rat>> free_min(m, std::vector<Rat>(n + 1, Rat(0)));
    auto free_max = free_min;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = n; i-- > 0;) {
            Rat lo = inst.a(r, i) * Rat(0), hi = inst.a(r, i) * Rat(inst.u[i]);
            if (lo > hi) std::swap(lo, hi);
            free_min[r][i] = free_min[r][i + 1] + lo;
            free_max[r][i] = free_max[r][i + 1] + hi;
        }

    CellPipeline pipe{dio->kernel_basis, dio->particular, inst, oracle, seed, out.counters};
    QVec lo(n), hi(n);
    std::vector<Rat> row_min(m, Rat(0)), row_max(m, Rat(0));
    std::size_t ordinal = 0;

    auto rec = [&](auto&& self, std::size_t depth) -> bool {  // true = stop (found)
        for (std::size_t r = 0; r < m; ++r) {
            if (row_min[r] + free_min[r][depth] > inst.b[r] ||
                row_max[r] + free_max[r][depth] < inst.b[r]) {
                out.counters.cells_examined += suffix[depth];
                out.counters.cells_skipped += suffix[depth];
                ordinal += suffix[depth];
                return false;  // no cell below here meets the equations
            }
        }
        if (depth == n) {
            std::size_t my_ordinal = ordinal++;
            out.counters.cells_examined += 1;
            auto x = pipe.run(lo, hi, my_ordinal);
            if (x) {
                out.x = std::move(x);
                return true;
            }
            return false;
        }
        for (std::size_t iv = 0; iv < counts[depth]; ++iv) {
            lo[depth] = th[depth][iv];
            hi[depth] = th[depth][iv + 1];
            for (std::size_t r = 0; r < m; ++r) {
                Rat a = inst.a(r, depth) * lo[depth], b2 = inst.a(r, depth) * hi[depth];
                if (a > b2) std::swap(a, b2);
                row_min[r] += a;
                row_max[r] += b2;
            }
            bool found = self(self, depth + 1);
            for (std::size_t r = 0; r < m; ++r) {
                Rat a = inst.a(r, depth) * lo[depth], b2 = inst.a(r, depth) * hi[depth];
                if (a > b2) std::swap(a, b2);
                row_min[r] -= a;
                row_max[r] -= b2;
            }
            if (found) return true;
        }
        return false;
    };
    rec(rec, 0);
    return out;
}

namespace {

// substitute away fixed (range-zero) columns and solve the equation form
struct SlackSystem {
    StandardFormIP inst;
    std::vector<std::size_t> keep;  // original column index per kept column
    std::size_t total_cols = 0;
    bool infeasible = false;

    static SlackSystem build(const QMat& a, const QVec& b, const std::vector<Rat>& ubound) {
        SlackSystem s;
        s.total_cols = a.cols();
        QVec fixed_contrib(a.rows(), Rat(0));
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (ubound[j] < 0) {
                s.infeasible = true;
                return s;
            }
            if (ubound[j] >= 1) {
                s.keep.push_back(j);
            }
            // range-zero columns are fixed at 0 and contribute nothing
        }
        s.inst.a = QMat(a.rows(), s.keep.size());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < s.keep.size(); ++j) s.inst.a(i, j) = a(i, s.keep[j]);
        s.inst.b = b;
        for (std::size_t j = 0; j < s.keep.size(); ++j)
            s.inst.u.push_back(rat_floor(ubound[s.keep[j]]).get_si());
        return s;
    }

    std::optional<QVec> expand(const std::optional<QVec>& x) const {
        if (!x) return std::nullopt;
        QVec full(total_cols, Rat(0));
        for (std::size_t j = 0; j < keep.size(); ++j) full[keep[j]] = (*x)[j];
        return full;
    }
};

}  // namespace

InequalityFormResult solve_inequality_form(const QMat& a, const QVec& b, const QVec& c,
                                           const std::vector<long>& u, const ApxIpOracle& oracle,
                                           std::uint64_t seed) {
    const std::size_t n = u.size(), m = a.rows();
    if (a.cols() != n || b.size() != m || c.size() != n)
        throw std::invalid_argument("solve_inequality_form: dimension mismatch");
    if (!a.all_integer() || !all_integer(b) || !all_integer(c))
        throw std::invalid_argument("solve_inequality_form: integer data required");

    InequalityFormResult out;
    Rat lo_obj(0), hi_obj(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (c[j] > 0) hi_obj += c[j] * Rat(u[j]);
        else lo_obj += c[j] * Rat(u[j]);
    }
    // exact slack ranges per row from the data
    QVec row_min(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) < 0) row_min[i] += a(i, j) * Rat(u[j]);

    auto feasible = [&](const Rat& gamma) -> std::optional<QVec> {
        ++out.counters.gamma_probes;
        // x columns, objective slack y, row slacks z:  c x - y = gamma, A x + z = b
        QMat big(1 + m, n + 1 + m);
        QVec rhs(1 + m);
        std::vector<Rat> ubound(n + 1 + m);
        for (std::size_t j = 0; j < n; ++j) {
            big(0, j) = c[j];
            ubound[j] = Rat(u[j]);
        }
        big(0, n) = -1;
        rhs[0] = gamma;
        ubound[n] = hi_obj - gamma;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) big(1 + i, j) = a(i, j);
            big(1 + i, n + 1 + i) = 1;
            rhs[1 + i] = b[i];
            ubound[n + 1 + i] = b[i] - row_min[i];
        }
        auto sys = SlackSystem::build(big, rhs, ubound);
        if (sys.infeasible) return std::nullopt;
        auto res = solve_standard_form(sys.inst, oracle, mix_seed(seed, out.counters.gamma_probes));
        out.counters.cells_total += res.counters.cells_total;
        out.counters.cells_examined += res.counters.cells_examined;
        out.counters.cells_skipped += res.counters.cells_skipped;
        out.counters.oracle_calls += res.counters.oracle_calls;
        auto full = sys.expand(res.x);
        if (!full) return std::nullopt;
        return QVec(full->begin(), full->begin() + n);
    };

    Int lo = rat_ceil(lo_obj), hi = rat_floor(hi_obj);
    auto base = feasible(Rat(lo));
    if (!base) return out;  // infeasible instance
    QVec witness = *base;
    while (lo < hi) {
        Int mid = lo + (hi - lo + 1) / 2;
        auto w = feasible(Rat(mid));
        if (w) {
            witness = *w;
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    out.x = witness;
    out.value = dot(c, witness);
    if (out.value < Rat(lo))
        throw InvariantViolationError("solve_inequality_form: witness value below the proven gamma");
    return out;
}

StandardFormResult subset_sum(const std::vector<long>& z, long t, const std::vector<long>& u,
                              const ApxIpOracle& oracle, std::uint64_t seed) {
    StandardFormIP inst;
    inst.a = QMat(1, z.size());
    for (std::size_t j = 0; j < z.size(); ++j) inst.a(0, j) = z[j];
    inst.b = {Rat(t)};
    inst.u = u;
    return solve_standard_form(inst, oracle, seed);
}

InequalityFormResult knapsack(const std::vector<long>& c, const std::vector<long>& a, long beta,
                              const std::vector<long>& u, const ApxIpOracle& oracle,
                              std::uint64_t seed) {
    for (long v : c)
        if (v < 0) throw std::invalid_argument("knapsack: nonnegative data required");
    for (long v : a)
        if (v < 0) throw std::invalid_argument("knapsack: nonnegative data required");
    if (beta < 0) throw std::invalid_argument("knapsack: nonnegative capacity required");
    QMat am(1, a.size());
    for (std::size_t j = 0; j < a.size(); ++j) am(0, j) = a[j];
    return solve_inequality_form(am, {Rat(beta)}, qvec_of_ints(c), u, oracle, seed);
}

std::optional<std::vector<long>> dp_subset_sum(const std::vector<long>& z, long t,
                                               const std::vector<long>& u) {
    if (t < 0) return std::nullopt;
    if (t > 10'000'000L) throw std::invalid_argument("dp_subset_sum: table guard exceeded");
    const std::size_t n = z.size();
    // choice[i][s] = multiplicity of item i used to first reach s at stage i
    std::vector<char> reach(static_cast<std::size_t>(t) + 1, 0);
    reach[0] = 1;
    std::vector<std::vector<long>> choice(n, std::vector<long>(static_cast<std::size_t>(t) + 1, -1));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> next(static_cast<std::size_t>(t) + 1, 0);
        for (long s = 0; s <= t; ++s) {
            if (!reach[s]) continue;
            for (long k = 0; k <= u[i]; ++k) {
                long s2 = s + k * z[i];
                if (s2 > t) break;
                if (!next[s2]) {
                    next[s2] = 1;
                    choice[i][s2] = k;
                }
                if (z[i] == 0) break;  // higher multiplicities reach nothing new
            }
        }
        reach = std::move(next);
    }
    if (!reach[t]) return std::nullopt;
    std::vector<long> x(n, 0);
    long s = t;
    for (std::size_t i = n; i-- > 0;) {
        long k = choice[i][s];
        x[i] = k;
        s -= k * z[i];
    }
    return x;
}

std::pair<long, std::vector<long>> dp_knapsack(const std::vector<long>& c,
                                               const std::vector<long>& a, long beta,
                                               const std::vector<long>& u) {
    if (beta < 0) throw std::invalid_argument("dp_knapsack: negative capacity");
    if (beta > 2'000'000L) throw std::invalid_argument("dp_knapsack: table guard exceeded");
    const std::size_t n = c.size();
    std::vector<long> best(static_cast<std::size_t>(beta) + 1, 0);
    std::vector<std::vector<long>> choice(n, std::vector<long>(static_cast<std::size_t>(beta) + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> next = best;
        for (long cap = 0; cap <= beta; ++cap) {
            long kmax = a[i] > 0 ? std::min<long>(u[i], cap / a[i]) : u[i];
            for (long k = 1; k <= kmax; ++k) {
                long prev = best[cap - k * a[i]] + k * c[i];
                if (prev > next[cap]) {
                    next[cap] = prev;
                    choice[i][cap] = k;
                }
            }
        }
        best = std::move(next);
    }
    std::vector<long> x(n, 0);
    long cap = beta;
    for (std::size_t i = n; i-- > 0;) {
        long k = choice[i][cap];
        x[i] = k;
        cap -= k * a[i];
    }
    return {best[beta], x};
}

}  // namespace latticecut
