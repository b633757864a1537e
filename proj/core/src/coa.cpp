#include "latticecut/coa.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>

namespace latticecut {

void CoaStats::absorb(const CoaStats& other) {
    outer_cuts += other.outer_cuts;
    inner_iterations += other.inner_iterations;
    oracle_calls += other.oracle_calls;
    averaging_rounds += other.averaging_rounds;
    centroid_rounds += other.centroid_rounds;
    max_depth = std::max(max_depth, other.max_depth);
    cap_violations += other.cap_violations;
    cut_budget = std::max(cut_budget, other.cut_budget);
    budget_alarms += other.budget_alarms;
}

namespace {

// advisory cut budget 64 n^2 log2(n r / lambda_1); doubles suffice since the
// budget is reported, never enforced
double advisory_cut_budget(const Polytope& k, const AffineLattice& l) {
    const std::size_t n = l.rank();
    auto box = k.outer_box();
    double r2 = 0.0;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        double m = std::max(std::fabs(to_double(box.first[i])), std::fabs(to_double(box.second[i])));
        r2 += m * m;
    }
    double radius = std::sqrt(std::max(1e-12, r2));
    // lambda_1 lower bound: the least Gram-Schmidt norm of an LLL basis
    QMat red = lll_reduce(l.basis());
    double lambda_lb = 0.0;
    std::vector<QVec> bstar;
    for (std::size_t j = 0; j < red.cols(); ++j) {
        QVec v = red.col(j);
        for (const auto& prev : bstar) {
            Rat den = dot(prev, prev);
            if (den != 0) v = sub(v, scale(prev, dot(red.col(j), prev) / den));
        }
        double norm = std::sqrt(std::max(0.0, to_double(dot(v, v))));
        bstar.push_back(std::move(v));
        lambda_lb = j == 0 ? norm : std::min(lambda_lb, norm);
    }
    if (lambda_lb <= 0.0) lambda_lb = 1e-9;
    double logterm = std::log2(std::max(2.0, static_cast<double>(n) * radius / lambda_lb));
    return 64.0 * static_cast<double>(n * n) * logterm;
}

}  // namespace

namespace {

struct LocalResult {
    std::optional<QVec> point;
    std::vector<std::pair<QVec, Rat>> witness;
};

struct Ctx {
    const ApxIpOracle& oracle;
    const CoaOptions& opt;
    long ell;
    CoaStats stats;
    EmptyReason reason = EmptyReason::None;

    void trace_event(std::size_t depth, const std::string& line) {
        if (opt.trace) (*opt.trace) << "{\"depth\":" << depth << "," << line << "}\n";
    }
};

LocalResult empty_result(Ctx& ctx, EmptyReason why, std::size_t depth, const char* what) {
    ctx.reason = why;
    ctx.trace_event(depth, std::string("\"event\":\"empty\",\"via\":\"") + what + "\"");
    return {};
}

LocalResult map_through(LocalResult r, const QVec& shift, const QMat& w) {
    if (!r.point) return r;
    r.point = add(shift, w * *r.point);
    for (auto& [p, wt] : r.witness) p = add(shift, w * p);
    return r;
}

LocalResult descend(Ctx& ctx, const Polytope& kt, std::size_t depth);

// Full-dimensional instance over the standard lattice Z^dim.
LocalResult coa_core(Ctx& ctx, Polytope k, std::size_t depth) {
    const std::size_t nu = k.dim();
    const AffineLattice lattice = AffineLattice::standard(nu);
    const Rat rho = make_rat(1, 4 * static_cast<long>(nu));
    const Rat exit_threshold = make_rat(1, 16);

    constexpr std::size_t kOuterSafety = 100000;
    for (std::size_t outer = 0;; ++outer) {
        if (outer > kOuterSafety)
            throw InvariantViolationError("coa: outer loop failed to terminate");
        auto fd = flat_direction(k, lattice);
        if (fd) {
            ctx.trace_event(depth, "\"event\":\"flat\",\"width\":\"" + rat_to_string(fd->width) + "\"");
            if (!fd->beta) return empty_result(ctx, EmptyReason::FlatNoInteger, depth, "flat-direction");
            const Rat beta = *fd->beta;
            if (nu == 1) {
                Rat xstar = beta / fd->dual_vector[0];
                if (!is_integer(xstar))
                    return empty_result(ctx, EmptyReason::OneDim, depth, "one-dim");
                // beta sits in the support interval, so xstar lies in K
                return {QVec{xstar}, {}};
            }
            auto slice = k.cut(fd->dual_vector, beta, RowSense::Eq);
            if (!slice)
                throw InvariantViolationError("coa: flat hyperplane misses K despite beta in range");
            return descend(ctx, *slice, depth + 1);
        }

        // no flat direction: certify a rounding and pull lattice points
        std::uint64_t seed = mix_seed(mix_seed(ctx.opt.seed, depth), outer);
        RoundingCertificate cert = centroid_and_rounding(k, seed);
        ctx.stats.centroid_rounds += 1;
        const QVec& c = cert.center;
        const QMat& m = cert.shape.matrix();
        const Rat r2 = cert.radius_squared();
        ctx.trace_event(depth, "\"event\":\"centroid\",\"outer\":" + std::to_string(outer) +
                                   ",\"R2\":\"" + rat_to_string(r2) + "\"");

        OracleQuery q0{k, c, lattice};
        ctx.stats.oracle_calls += 1;
        OracleAnswer a0 = ctx.oracle(q0);
        verify_oracle_answer(q0, a0);
        if (a0.empty()) return empty_result(ctx, EmptyReason::OracleEmpty, depth, "oracle");

        std::vector<QVec> x_set{*a0.point};
        QVec zbar = *a0.point;
        bool cut_made = false;
        while (true) {
            const std::size_t kcount = x_set.size();
            QVec dev = sub(zbar, c);
            Rat dist2 = cert.shape.norm_squared(dev);
            Rat law_bound = Rat(9) * r2 / Rat(static_cast<long>(kcount));
            if (dist2 > law_bound)
                throw InvariantViolationError("coa: inner-loop distance law violated");
            ctx.trace_event(depth, "\"event\":\"inner\",\"outer\":" + std::to_string(outer) +
                                       ",\"k\":" + std::to_string(kcount) + ",\"dist2\":\"" +
                                       rat_to_string(dist2) + "\",\"law\":\"" +
                                       rat_to_string(law_bound) + "\"");
            if (dist2 <= exit_threshold) break;
            if (Rat(static_cast<long>(kcount)) > Rat(36) * r2) ctx.stats.cap_violations += 1;

            QVec a = negate(m * dev);  // a = -M (z - c)
            Rat shat = rat_sqrt_upper(dist2);
            QVec dhat = scale(dev, Rat(-1) / shat);  // E-norm <= 1 exactly
            Rat adot = dist2 / shat;                 // <a, dhat> > 0
            Rat theta = dot(a, c) + rho / 2 * adot;
            QVec center2 = add(c, scale(dhat, rho));

            Polytope restricted = k.cut_interior_trusted(negate(a), -theta);  // <a, x> >= theta
            OracleQuery q{restricted, center2, lattice};
            ctx.stats.oracle_calls += 1;
            OracleAnswer ans = ctx.oracle(q);
            verify_oracle_answer(q, ans);
            if (ctx.opt.check_symmetrizer && ctx.opt.trace) {
                // advisory precondition of fast oracles: the query symmetrizer
                // keeps (1-rho)^n * rho/(2R) * 2^-n of the body volume
                double ratio = symmetrizer_volume_ratio(restricted, center2, mix_seed(seed, kcount), 20000);
                double bound = std::pow(1.0 - to_double(rho), static_cast<double>(nu)) *
                               to_double(rho) / (2.0 * std::sqrt(to_double(r2))) *
                               std::pow(0.5, static_cast<double>(nu));
                ctx.trace_event(depth, "\"event\":\"symmetrizer\",\"ratio\":" + std::to_string(ratio) +
                                           ",\"bound\":" + std::to_string(bound));
            }

            if (ans.empty()) {
                // the halfspace beyond the cut holds no lattice point: shrink K
                Polytope cut = k.cut_interior_trusted(a, theta);
                ctx.stats.outer_cuts += 1;
                ctx.trace_event(depth, "\"event\":\"cut\",\"outer\":" + std::to_string(outer));
                if (ctx.opt.cut_observer) ctx.opt.cut_observer(k, cut);
                k = std::move(cut);
                cut_made = true;
                break;
            }
            const QVec& x = *ans.point;
            if (dot(a, sub(x, c)) < 0)
                throw InvariantViolationError("coa: admitted point behind the query halfspace");
            if (gauge_norm(k, c, sub(x, c)) > 3)
                throw InvariantViolationError("coa: admitted point escapes the 3-scaling");
            x_set.push_back(x);
            Rat inv(1, static_cast<long>(x_set.size()));
            inv.canonicalize();
            zbar = add(scale(zbar, Rat(1) - inv), scale(x, inv));
            ctx.stats.inner_iterations += 1;
        }
        if (cut_made) continue;  // re-enter the loop guard on the shrunk body

        // averaging step: unweighted-average certificate into K
        WeightedCombination wc = combination_into_k(x_set, c, cert.shape, zbar, k, ctx.ell);
        ctx.stats.averaging_rounds += 1;
        QVec scaled = scale(wc.point, Rat(ctx.ell));
        if (!all_integer(scaled))
            throw InvariantViolationError("coa: averaged point misses the 1/l lattice");
        ctx.trace_event(depth, "\"event\":\"point\",\"support\":" + std::to_string(wc.weights.size()));
        LocalResult out;
        out.point = wc.point;
        for (const auto& [idx, w] : wc.weights) out.witness.emplace_back(x_set[idx], w);
        return out;
    }
}

// Entry for a (possibly degenerate) body over Z^dim: reduce to the affine
// hull through an integer parametrization and run the full-dimensional core.
LocalResult descend(Ctx& ctx, const Polytope& kt, std::size_t depth) {
    ctx.stats.max_depth = std::max(ctx.stats.max_depth, depth);
    if (kt.full_dimensional()) return coa_core(ctx, kt, depth);
    auto [c, d] = integerize_rows(kt.eq_matrix(), kt.eq_rhs());
    auto dio = solve_diophantine(c, d);
    if (!dio) return empty_result(ctx, EmptyReason::SliceMissed, depth, "hull-misses-lattice");
    if (dio->kernel_basis.cols() == 0) {
        if (kt.contains(dio->particular)) return {dio->particular, {}};
        return empty_result(ctx, EmptyReason::SliceMissed, depth, "pinned-point-outside");
    }
    Polytope ks = kt.hull_slice_trusted(dio->particular, dio->kernel_basis);
    LocalResult sub = descend(ctx, ks, depth);
    return map_through(std::move(sub), dio->particular, dio->kernel_basis);
}

}  // namespace

CoaResult cut_or_average(const Polytope& k, const AffineLattice& l, long ell,
                         const ApxIpOracle& oracle, const CoaOptions& opt) {
    const std::size_t r = l.rank();
    if (ell < 5 * static_cast<long>(r + 1))
        throw std::invalid_argument("cut_or_average: l must be at least 5(r+1)");
    if (k.dim() != l.ambient_dim()) throw std::invalid_argument("cut_or_average: dimension mismatch");

    Ctx ctx{oracle, opt, ell, {}, EmptyReason::None};
    CoaResult out;

    if (r == 0) {
        if (k.contains(l.shift())) {
            out.point = l.shift();
        } else {
            ctx.reason = EmptyReason::SliceMissed;
        }
        out.stats = ctx.stats;
        out.stats.empty_reason = ctx.reason;
        return out;
    }

    Polytope k1 = k.translated(negate(l.shift()));
    LocalResult local;
    if (r == k.dim()) {
        local = descend(ctx, k1.preimage_full_rank(l.basis()), 0);
    } else {
        auto kt = k1.slice(QVec(k.dim(), Rat(0)), l.basis());
        if (!kt) {
            ctx.reason = EmptyReason::SliceMissed;
            out.stats = ctx.stats;
            out.stats.empty_reason = ctx.reason;
            return out;
        }
        local = descend(ctx, *kt, 0);
    }
    if (local.point) {
        QVec x = add(l.shift(), l.basis() * *local.point);
        if (!k.contains(x))
            throw InvariantViolationError("cut_or_average: returned point escapes K");
        auto coeff = l.coefficients(x);
        if (!coeff || !all_integer(scale(*coeff, Rat(ell))))
            throw InvariantViolationError("cut_or_average: returned point misses the 1/l lattice");
        out.point = std::move(x);
        for (auto& [p, w] : local.witness)
            out.witness.emplace_back(add(l.shift(), l.basis() * p), w);
    }
    out.stats = ctx.stats;
    out.stats.cut_budget = advisory_cut_budget(k, l);
    if (static_cast<double>(out.stats.outer_cuts) > out.stats.cut_budget) {
        out.stats.budget_alarms = 1;
        if (opt.trace)
            (*opt.trace) << "{\"event\":\"budget-alarm\",\"cuts\":" << out.stats.outer_cuts
                         << ",\"budget\":" << out.stats.cut_budget << "}\n";
    }
    out.stats.empty_reason = local.point ? EmptyReason::None : ctx.reason;
    return out;
}

std::optional<QVec> solve_with_residues(const Polytope& k, const AffineLattice& l,
                                        const std::vector<long>& residues, long ell,
                                        const ApxIpOracle& oracle, const CoaOptions& opt,
                                        CoaStats* stats_out) {
    const std::size_t r = l.rank();
    if (residues.size() != r) throw std::invalid_argument("solve_with_residues: residue count");
    for (long v : residues)
        if (v < 0 || v >= ell) throw std::invalid_argument("solve_with_residues: residue out of range");

    QVec vvec(r);
    for (std::size_t i = 0; i < r; ++i) vvec[i] = residues[i];
    QVec class_shift = add(l.shift(), l.basis() * vvec);
    AffineLattice coarse(class_shift, l.basis());
    CoaResult res = cut_or_average(k, coarse.with_scaled_basis(Rat(ell)), ell, oracle, opt);
    if (stats_out) stats_out->absorb(res.stats);
    if (!res.point) return std::nullopt;
    const QVec& x = *res.point;
    if (!k.contains(x) || !l.contains(x))
        throw InvariantViolationError("solve_with_residues: class point fails verification");
    return x;
}

ExactIpResult solve_exact_ip(const Polytope& k, const AffineLattice& l, const ApxIpOracle& oracle,
                             const CoaOptions& opt) {
    const std::size_t r = l.rank();
    ExactIpResult out;
    out.ell = 5 * static_cast<long>(r + 1);
    if (r == 0) {
        out.residue_classes_tried = 1;
        if (k.contains(l.shift())) out.point = l.shift();
        return out;
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= static_cast<std::size_t>(out.ell);

    auto residues_of = [&](std::size_t index) {
        std::vector<long> v(r);
        for (std::size_t i = r; i-- > 0;) {
            v[i] = static_cast<long>(index % static_cast<std::size_t>(out.ell));
            index /= static_cast<std::size_t>(out.ell);
        }
        return v;  // v[0] varies slowest: lexicographic class order
    };

    const unsigned jobs = opt.trace ? 1u : std::max(1u, opt.jobs);
    struct ClassOutcome {
        std::optional<QVec> point;
        CoaStats stats;
    };
    auto run_class = [&](std::size_t index) {
        ClassOutcome oc;
        oc.point = solve_with_residues(k, l, residues_of(index), out.ell, oracle, opt, &oc.stats);
        return oc;
    };

    for (std::size_t base = 0; base < total;) {
        const std::size_t block = std::min<std::size_t>(total - base, jobs == 1 ? 1 : jobs * 4);
        std::vector<ClassOutcome> outcomes(block);
        if (jobs == 1) {
            outcomes[0] = run_class(base);
        } else {
            std::vector<std::future<ClassOutcome>> futs;
            futs.reserve(block);
            for (std::size_t i = 0; i < block; ++i)
                futs.push_back(std::async(std::launch::async, run_class, base + i));
            for (std::size_t i = 0; i < block; ++i) outcomes[i] = futs[i].get();
        }
        for (std::size_t i = 0; i < block; ++i) {
            out.stats.absorb(outcomes[i].stats);
            if (outcomes[i].point) {
                out.point = outcomes[i].point;
                out.residue_classes_tried = base + i + 1;
                return out;
            }
        }
        base += block;
    }
    out.residue_classes_tried = total;
    return out;
}

}  // namespace latticecut
