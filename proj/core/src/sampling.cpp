#include "latticecut/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace latticecut {

namespace {

constexpr std::size_t kBurnIn = 128;
constexpr long kSnapDenomBits = 20;

struct DoubleRows {
    std::vector<std::vector<double>> a;
    std::vector<double> b;

    explicit DoubleRows(const Polytope& k) {
        const QMat& am = k.ineq_matrix();
        a.assign(am.rows(), std::vector<double>(am.cols()));
        b.resize(am.rows());
        for (std::size_t i = 0; i < am.rows(); ++i) {
            for (std::size_t j = 0; j < am.cols(); ++j) a[i][j] = to_double(am(i, j));
            b[i] = to_double(k.ineq_rhs()[i]);
        }
    }

    bool inside(const std::vector<double>& x, double tol) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            double s = -b[i];
            for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
            if (s > tol) return false;
        }
        return true;
    }
};

double normal_draw(std::mt19937_64& rng) {
    // Box-Muller; kept explicit so the stream is fixed by the seed alone
    std::uniform_real_distribution<double> u(1e-12, 1.0);
    static thread_local bool have_spare = false;
    static thread_local double spare = 0.0;
    if (have_spare) {
        have_spare = false;
        return spare;
    }
    double u1 = u(rng), u2 = u(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    have_spare = true;
    spare = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

Rat snap_dyadic(double v) {
    double scaled = std::ldexp(v, kSnapDenomBits);
    if (!std::isfinite(scaled)) throw std::invalid_argument("snap_dyadic: non-finite sample");
    Int num(rat_from_double(std::nearbyint(scaled)).get_num());
    Int den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), kSnapDenomBits);
    return make_rat(num, den);
}

// double-precision matrix inverse, n <= ~10
bool dinvert(std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(m[i][c]) > std::fabs(m[p][c])) p = i;
        if (std::fabs(m[p][c]) < 1e-300) return false;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        double f = 1.0 / m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] *= f;
            inv[c][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0.0) continue;
            double g = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= g * m[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    m = std::move(inv);
    return true;
}

struct WalkStats {
    std::vector<double> mean;
    std::vector<std::vector<double>> cov;
};

WalkStats hit_and_run(const Polytope& k, std::uint64_t seed, std::size_t samples) {
    const std::size_t n = k.dim();
    DoubleRows rows(k);
    QVec start = k.relative_interior_point();
    std::vector<double> x(n), x0(n);
    for (std::size_t i = 0; i < n; ++i) x0[i] = x[i] = to_double(start[i]);

    std::mt19937_64 rng(mix_seed(seed, 0x48524e57ULL));
    std::uniform_real_distribution<double> unit(1e-9, 1.0 - 1e-9);
    std::vector<double> d(n);

    std::vector<double> sum(n, 0.0);
    std::vector<std::vector<double>> sq(n, std::vector<double>(n, 0.0));
    std::size_t recorded = 0;
    const std::size_t total = kBurnIn + samples;
    for (std::size_t step = 0; step < total; ++step) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = normal_draw(rng);
            norm2 += d[i] * d[i];
        }
        if (norm2 < 1e-30) continue;
        double tlo = -1e300, thi = 1e300;
        bool degenerate = false;
        for (std::size_t i = 0; i < rows.a.size(); ++i) {
            double ad = 0.0, ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                ad += rows.a[i][j] * d[j];
                ax += rows.a[i][j] * x[j];
            }
            double slack = rows.b[i] - ax;
            if (std::fabs(ad) < 1e-14) {
                if (slack < 0) degenerate = true;
                continue;
            }
            double t = slack / ad;
            if (ad > 0) thi = std::min(thi, t);
            else tlo = std::max(tlo, t);
        }
        if (!degenerate && tlo < thi) {
            double t = tlo + unit(rng) * (thi - tlo);
            for (std::size_t i = 0; i < n; ++i) x[i] += t * d[i];
            if (!rows.inside(x, 1e-9)) x = x0;  // numeric drift; restart from the interior point
        }
        if (step >= kBurnIn) {
            for (std::size_t i = 0; i < n; ++i) {
                sum[i] += x[i];
                for (std::size_t j = 0; j < n; ++j) sq[i][j] += x[i] * x[j];
            }
            ++recorded;
        }
    }
    WalkStats st;
    st.mean.assign(n, 0.0);
    st.cov.assign(n, std::vector<double>(n, 0.0));
    const double inv = 1.0 / static_cast<double>(recorded);
    for (std::size_t i = 0; i < n; ++i) st.mean[i] = sum[i] * inv;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            st.cov[i][j] = sq[i][j] * inv - st.mean[i] * st.mean[j];
        trace += st.cov[i][i];
    }
    double ridge = std::max(1e-12, 1e-9 * trace / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) st.cov[i][i] += ridge;
    return st;
}

// exact interior-verified center plus inner-certified ellipsoid
std::pair<QVec, Ellipsoid> build_inner(const Polytope& k, std::uint64_t seed, std::size_t samples) {
    if (!k.full_dimensional())
        throw std::invalid_argument("centroid: full-dimensional polytope required (reduce to the hull first)");
    const std::size_t n = k.dim();
    if (samples == 0) samples = default_centroid_samples(n);
    WalkStats st = hit_and_run(k, seed, samples);

    const QMat& a = k.ineq_matrix();
    const QVec& b = k.ineq_rhs();

    QVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = snap_dyadic(st.mean[i]);
    bool strict = true;
    for (std::size_t i = 0; i < a.rows() && strict; ++i)
        strict = dot(a.row(i), c) < b[i];
    if (!strict) c = k.relative_interior_point();

    QMat m(n, n);
    bool have_m = false;
    {
        std::vector<std::vector<double>> cov = st.cov;
        if (dinvert(cov)) {
            bool finite = true;
            for (std::size_t i = 0; i < n && finite; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    double sym = 0.5 * (cov[i][j] + cov[j][i]);
                    if (!std::isfinite(sym)) {
                        finite = false;
                        break;
                    }
                    m(i, j) = snap_dyadic(sym);
                    m(j, i) = m(i, j);
                }
            have_m = finite && Ellipsoid::is_spd(m);
        }
    }
    if (!have_m) m = QMat::identity(n);

    // exact shrink so that c + E touches the tightest facet from inside
    QMat minv = m.inverse();
    Rat g(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        QVec row = a.row(i);
        Rat slack = b[i] - dot(row, c);
        Rat q = dot(row, minv * row) / (slack * slack);
        if (q > g) g = q;
    }
    if (g == 0) throw InvariantViolationError("centroid: bounded polytope without facets");
    QMat mshrunk(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mshrunk(i, j) = m(i, j) * g;
    return {std::move(c), Ellipsoid(std::move(mshrunk))};
}

}  // namespace

std::size_t default_centroid_samples(std::size_t dim) { return 4096 + 64 * dim * dim; }

std::pair<QVec, Ellipsoid> interior_center(const Polytope& k, std::uint64_t seed, std::size_t samples) {
    return build_inner(k, seed, samples);
}

RoundingCertificate centroid_and_rounding(const Polytope& k, std::uint64_t seed, std::size_t samples) {
    auto [c, e] = build_inner(k, seed, samples);
    Rat r2(0);
    for (const auto& v : k.vertices()) {
        Rat q = e.norm_squared(sub(v, c));
        if (q > r2) r2 = q;
    }
    Rat r = rat_sqrt_upper(r2);
    if (r < 1) r = 1;
    RoundingCertificate cert{std::move(c), std::move(e), std::move(r)};
    if (!certificate_valid(cert, k))
        throw InvariantViolationError("centroid_and_rounding: certificate failed its own re-check");
    return cert;
}

double mc_volume(const Polytope& k, std::uint64_t seed, std::size_t samples) {
    if (!k.full_dimensional())
        throw std::invalid_argument("mc_volume: degenerate polytope has no n-volume");
    const std::size_t n = k.dim();
    auto box = k.exact_box();
    std::vector<double> lo(n), len(n);
    double box_vol = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = to_double(box.first[i]);
        len[i] = to_double(box.second[i]) - lo[i];
        box_vol *= len[i];
    }
    DoubleRows rows(k);
    std::mt19937_64 rng(mix_seed(seed, 0x4d43564cULL));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < n; ++i) x[i] = lo[i] + u(rng) * len[i];
        if (rows.inside(x, 0.0)) ++hits;
    }
    return box_vol * static_cast<double>(hits) / static_cast<double>(samples);
}

double mc_volume_ratio(const Polytope& inner, const Polytope& outer, std::uint64_t seed,
                       std::size_t samples) {
    if (!outer.full_dimensional())
        throw std::invalid_argument("mc_volume_ratio: degenerate outer polytope");
    const std::size_t n = outer.dim();
    auto box = outer.exact_box();
    std::vector<double> lo(n), len(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = to_double(box.first[i]);
        len[i] = to_double(box.second[i]) - lo[i];
    }
    DoubleRows orows(outer), irows(inner);
    std::vector<double> x(n);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::mt19937_64 rng(mix_seed(seed, 0x52415449ULL + attempt));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t outer_hits = 0, inner_hits = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            for (std::size_t i = 0; i < n; ++i) x[i] = lo[i] + u(rng) * len[i];
            if (!orows.inside(x, 0.0)) continue;
            ++outer_hits;
            if (irows.inside(x, 0.0)) ++inner_hits;
        }
        if (outer_hits >= 50)
            return static_cast<double>(inner_hits) / static_cast<double>(outer_hits);
        samples *= 4;
    }
    return 1.0;  // could not resolve the parent volume; report conservatively
}

}  // namespace latticecut
