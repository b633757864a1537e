#include "latticecut/caratheodory.hpp"

#include <algorithm>
#include <stdexcept>

#include "latticecut/lp.hpp"

namespace latticecut {

ConvexCombination zero_convex_combination(const std::vector<QVec>& x) {
    if (x.empty()) throw NotInHullError("zero_convex_combination: empty point set");
    const std::size_t n = x[0].size(), m = x.size();
    LpProblem p;
    p.objective = QVec(m, Rat(0));
    p.constraints = QMat(n + 1, m);
    p.rhs = QVec(n + 1, Rat(0));
    p.senses.assign(n + 1, RowSense::Eq);
    for (std::size_t j = 0; j < m; ++j) {
        if (x[j].size() != n) throw std::invalid_argument("zero_convex_combination: ragged points");
        p.constraints(0, j) = 1;
        for (std::size_t d = 0; d < n; ++d) p.constraints(1 + d, j) = x[j][d];
    }
    p.rhs[0] = 1;
    p.lower.assign(m, Rat(0));
    p.upper.assign(m, std::nullopt);
    auto r = solve_lp(p);
    if (r.status != LpStatus::Optimal) throw NotInHullError("zero_convex_combination: 0 not in conv(X)");
    ConvexCombination c;
    c.num_points = m;
    c.dim = n;
    for (std::size_t j = 0; j < m; ++j)
        if (r.point[j] > 0) c.support.emplace_back(j, r.point[j]);
    if (c.support.size() > n + 1)
        throw InvariantViolationError("zero_convex_combination: non-vertex support");
    return c;
}

IntegralCombination integral_rounding(const ConvexCombination& lambda, long k) {
    const long ell = static_cast<long>(lambda.caratheodory_bound());
    if (k <= ell) throw std::invalid_argument("integral_rounding: requires k > min(|X|, n+1)");
    const Rat kl(k - ell);
    IntegralCombination out;
    out.total = 0;
    std::vector<Rat> slack;  // ceil(v) - v, the headroom already granted
    for (const auto& [idx, w] : lambda.support) {
        Rat v = kl * w;
        Int up = rat_ceil(v);
        out.support.emplace_back(idx, up);
        slack.push_back(Rat(up) - v);
        out.total += up;
    }
    Int deficit = Int(k) - out.total;
    if (deficit < 0)
        throw InvariantViolationError("integral_rounding: ceilings exceed k");
    // hand out the missing units, largest fractional slack first, ties by index
    std::vector<std::size_t> order(out.support.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return slack[a] > slack[b]; });
    for (std::size_t pos = 0; deficit > 0; pos = (pos + 1) % order.size()) {
        out.support[order[pos]].second += 1;
        out.total += 1;
        deficit -= 1;
    }
    return out;
}

std::vector<std::size_t> asym_caratheodory_indices(const std::vector<QVec>& x,
                                                   const Polytope& gauge_body, const QVec& origin,
                                                   long k) {
    if (x.empty() || k <= 0) throw std::invalid_argument("asym_caratheodory: empty input");
    const std::size_t n = x[0].size();
    for (const auto& p : x)
        if (gauge_norm(gauge_body, origin, sub(p, origin)) > 1)
            throw GaugeViolationError("asym_caratheodory: point outside the gauge body");
    std::vector<QVec> centered;
    centered.reserve(x.size());
    for (const auto& p : x) centered.push_back(sub(p, origin));
    ConvexCombination lambda = zero_convex_combination(centered);  // validates 0 in conv(X)

    const long ell = static_cast<long>(std::min(x.size(), n + 1));
    std::vector<std::size_t> picks;
    if (k <= ell) {
        std::size_t least = 0;
        for (std::size_t j = 1; j < x.size(); ++j)
            if (lex_less(x[j], x[least])) least = j;
        picks.assign(static_cast<std::size_t>(k), least);
        return picks;
    }
    IntegralCombination mu = integral_rounding(lambda, k);
    for (const auto& [idx, count] : mu.support)
        for (Int c(0); c < count; ++c) picks.push_back(idx);
    return picks;
}

std::vector<QVec> asym_caratheodory(const std::vector<QVec>& x, const Polytope& gauge_body,
                                    const QVec& origin, long k) {
    std::vector<QVec> out;
    for (std::size_t idx : asym_caratheodory_indices(x, gauge_body, origin, k)) out.push_back(x[idx]);
    return out;
}

WeightedCombination combination_into_k(const std::vector<QVec>& x, const QVec& c,
                                       const Ellipsoid& e, const QVec& z, const Polytope& k,
                                       long ell) {
    if (x.empty()) throw std::invalid_argument("combination_into_k: empty X");
    const std::size_t n = c.size();
    if (ell < 5 * static_cast<long>(n + 1))
        throw std::invalid_argument("combination_into_k: l below 5(n+1)");
    if (!k.full_dimensional()) throw std::invalid_argument("combination_into_k: degenerate body");
    for (const auto& p : x)
        if (gauge_norm(k, c, sub(p, c)) > 3)
            throw std::invalid_argument("combination_into_k: point outside the 3-scaling");
    if (e.norm_squared(sub(z, c)) > make_rat(1, 16))
        throw std::invalid_argument("combination_into_k: z too far from the center");

    // recenter at z; gauge body (13/4)(K - c) around 0
    Polytope kc = k.translated(negate(c));
    Polytope body = kc.scaled_from(QVec(n, Rat(0)), make_rat(13, 4));
    std::vector<QVec> shifted;
    shifted.reserve(x.size());
    QVec zc = sub(z, c);
    for (const auto& p : x) shifted.push_back(sub(sub(p, c), zc));

    auto picks = asym_caratheodory_indices(shifted, body, QVec(n, Rat(0)), ell);

    std::vector<Int> counts(x.size(), Int(0));
    for (std::size_t idx : picks) counts[idx] += 1;
    WeightedCombination out;
    out.point = QVec(n, Rat(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (counts[j] == 0) continue;
        Rat w = make_rat(counts[j], Int(ell));
        out.weights.emplace_back(j, w);
        out.point = add(out.point, scale(x[j], w));
    }
    if (!k.contains(out.point))
        throw InvariantViolationError("combination_into_k: combination escaped K");
    return out;
}

}  // namespace latticecut
