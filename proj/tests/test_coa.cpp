#include <doctest.h>

#include <random>
#include <sstream>

#include "latticecut/coa.hpp"
#include "test_util.hpp"

using namespace latticecut;
using lct::box;
using lct::qm;
using lct::qv;
using lct::qvs;

namespace {

const ApxIpOracle kOracle = [](const OracleQuery& q) { return enumeration_oracle(q); };

// test-local referee: scan the integer box and test membership directly
std::vector<QVec> naive_integer_points(const Polytope& k) {
    auto bx = k.exact_box();
    const std::size_t n = k.dim();
    std::vector<long> lo(n), hi(n), cur(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = rat_ceil(bx.first[i]).get_si();
        hi[i] = rat_floor(bx.second[i]).get_si();
        if (lo[i] > hi[i]) return {};
        cur[i] = lo[i];
    }
    std::vector<QVec> out;
    for (;;) {
        QVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = cur[i];
        if (k.contains(x)) out.push_back(x);
        std::size_t d = 0;
        while (d < n && ++cur[d] > hi[d]) {
            cur[d] = lo[d];
            ++d;
        }
        if (d == n) break;
    }
    return out;
}

void check_fractional_contract(const CoaResult& res, const Polytope& k, const AffineLattice& l,
                               long ell) {
    REQUIRE(res.feasible());
    CHECK(k.contains(*res.point));
    auto m = l.coefficients(*res.point);
    REQUIRE(m.has_value());
    CHECK(all_integer(scale(*m, Rat(ell))));
}

}  // namespace

TEST_CASE("unit square: fractional point in K and the refined lattice") {
    auto sq = box(qv({0, 0}), qv({1, 1}));
    auto l = AffineLattice::standard(2);
    auto res = cut_or_average(sq, l, 15, kOracle, {});
    check_fractional_contract(res, sq, l, 15);
    CHECK(res.stats.cap_violations == 0);
}

TEST_CASE("thin strip: Empty through the flat-direction branch") {
    auto strip = box(qvs({"0", "1/5"}), qvs({"10", "3/5"}));
    auto res = cut_or_average(strip, AffineLattice::standard(2), 15, kOracle, {});
    CHECK_FALSE(res.feasible());
    CHECK(res.stats.empty_reason == EmptyReason::FlatNoInteger);
}

TEST_CASE("infeasibility family: strips of every length certify Empty") {
    for (long m : {5L, 10L, 20L}) {
        auto strip = box(qvs({"0", "1/5"}), {Rat(m), parse_rat("3/5")});
        auto res = cut_or_average(strip, AffineLattice::standard(2), 15, kOracle, {});
        CHECK_FALSE(res.feasible());
        CHECK(res.stats.empty_reason == EmptyReason::FlatNoInteger);
    }
}

TEST_CASE("thickened diagonal slab in 3d matches brute force") {
    // |x1+x2+x3 - 3/2| <= 1/10 inside [0,2]^3
    QMat a(8, 3);
    QVec b(8);
    for (std::size_t i = 0; i < 3; ++i) {
        a(2 * i, i) = 1;
        b[2 * i] = 2;
        a(2 * i + 1, i) = -1;
        b[2 * i + 1] = 0;
    }
    a(6, 0) = a(6, 1) = a(6, 2) = 1;
    b[6] = parse_rat("8/5");
    a(7, 0) = a(7, 1) = a(7, 2) = -1;
    b[7] = parse_rat("-7/5");
    Polytope slab(a, b);
    auto res = cut_or_average(slab, AffineLattice::standard(3), 20, kOracle, {});
    CHECK_FALSE(res.feasible());  // sum of integers cannot be within 1/10 of 3/2
    CHECK(naive_integer_points(slab).empty());
}

TEST_CASE("ell below 5(n+1) is rejected") {
    auto sq = box(qv({0, 0}), qv({1, 1}));
    CHECK_THROWS_AS(cut_or_average(sq, AffineLattice::standard(2), 14, kOracle, {}),
                    std::invalid_argument);
}

TEST_CASE("solve_with_residues: one-dimensional pinned interval") {
    auto k = box(qvs({"29/10"}), qvs({"31/10"}));
    auto x = solve_with_residues(k, AffineLattice::standard(1), {3}, 10, kOracle, {});
    REQUIRE(x.has_value());
    CHECK(*x == qv({3}));
}

TEST_CASE("solve_with_residues: planted residues recover an integer point") {
    // K around the planted solution (2,5)
    Polytope k(qm({{1, 1}, {-1, 0}, {0, -1}, {1, -1}}), qvs({"15/2", "-3/2", "-9/2", "-5/2"}));
    CHECK(k.contains(qv({2, 5})));
    auto x = solve_with_residues(k, AffineLattice::standard(2), {2, 5}, 15, kOracle, {});
    REQUIRE(x.has_value());
    CHECK(k.contains(*x));
    CHECK(all_integer(*x));
}

TEST_CASE("solve_with_residues: a class with no point answers None") {
    auto k = box(qvs({"29/10"}), qvs({"31/10"}));
    auto x = solve_with_residues(k, AffineLattice::standard(1), {4}, 10, kOracle, {});
    CHECK_FALSE(x.has_value());
}

TEST_CASE("solve_exact_ip on the unit square returns the lexicographic first hit") {
    auto res = solve_exact_ip(box(qv({0, 0}), qv({1, 1})), AffineLattice::standard(2), kOracle, {});
    REQUIRE(res.point.has_value());
    CHECK(*res.point == qv({0, 0}));
    CHECK(res.residue_classes_tried == 1);
    CHECK(res.ell == 15);
}

TEST_CASE("solve_exact_ip certifies an empty diamond") {
    Polytope diamond(qm({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}),
                     qvs({"7/5", "2/5", "2/5", "-3/5"}));
    auto res = solve_exact_ip(diamond, AffineLattice::standard(2), kOracle, {});
    CHECK_FALSE(res.point.has_value());
    CHECK(res.residue_classes_tried == 225);
}

TEST_CASE("random 2d bodies: feasibility matches the naive referee") {
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<long> coeff(-10, 10);
    std::uniform_int_distribution<long> den(1, 5);
    std::uniform_int_distribution<long> slack(0, 9);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        QMat a(4 + 4, 2);
        QVec b(4 + 4);
        QVec anchor = {make_rat(coeff(rng), den(rng)), make_rat(coeff(rng), den(rng))};
        for (std::size_t i = 0; i < 4; ++i) {
            QVec row = {Rat(coeff(rng)), Rat(coeff(rng))};
            if (is_zero(row)) row[0] = 1;
            a.set_row(i, row);
            b[i] = Rat(rat_ceil(dot(row, anchor))) + slack(rng) % 3;
        }
        for (std::size_t j = 0; j < 2; ++j) {
            a(4 + 2 * j, j) = 1;
            b[4 + 2 * j] = 6;
            a(4 + 2 * j + 1, j) = -1;
            b[4 + 2 * j + 1] = 6;
        }
        auto k = Polytope::try_create(a, b);
        if (!k || !k->full_dimensional()) continue;
        auto res = solve_exact_ip(*k, AffineLattice::standard(2), kOracle, {});
        bool brute = !naive_integer_points(*k).empty();
        CHECK(res.point.has_value() == brute);
        if (res.point) {
            CHECK(k->contains(*res.point));
            CHECK(all_integer(*res.point));
        }
        CHECK(res.stats.cap_violations == 0);
        ++checked;
    }
    CHECK(checked >= 6);
}

TEST_CASE("witness weights certify the averaging branch") {
    // fat box so the run must go through centroid + averaging at least once
    auto sq = box(qv({0, 0}), qv({10, 10}));
    auto l = AffineLattice::standard(2);
    auto res = cut_or_average(sq, l, 15, kOracle, {});
    check_fractional_contract(res, sq, l, 15);
    REQUIRE(res.stats.averaging_rounds > 0);
    REQUIRE_FALSE(res.witness.empty());
    QVec combo(2, Rat(0));
    Rat total(0);
    for (const auto& [p, w] : res.witness) {
        CHECK(all_integer(p));  // oracle points are lattice points
        CHECK(is_integer(w * 15));
        combo = add(combo, scale(p, w));
        total += w;
    }
    CHECK(total == 1);
    CHECK(combo == *res.point);
}

TEST_CASE("lower-rank lattices restrict the search to their span") {
    // planar lattice Z^2 x {0} inside a 3d box that misses the plane
    QMat basis(3, 2);
    basis(0, 0) = 1;
    basis(1, 1) = 1;
    AffineLattice planar(qv({0, 0, 0}), basis);

    auto hit = box(qv({0, 0, 0}), qv({2, 2, 1}));
    auto res = cut_or_average(hit, planar, 15, kOracle, {});
    REQUIRE(res.feasible());
    CHECK((*res.point)[2] == 0);
    CHECK(hit.contains(*res.point));

    auto miss = box(qvs({"0", "0", "1/4"}), qvs({"2", "2", "1"}));
    auto res2 = cut_or_average(miss, planar, 15, kOracle, {});
    CHECK_FALSE(res2.feasible());
    CHECK(res2.stats.empty_reason == EmptyReason::SliceMissed);
}

TEST_CASE("rank-zero lattice is a single-candidate check") {
    AffineLattice point(qvs({"1/2", "1/2"}), QMat(2, 0));
    auto in = cut_or_average(box(qv({0, 0}), qv({1, 1})), point, 15, kOracle, {});
    REQUIRE(in.feasible());
    CHECK(*in.point == qvs({"1/2", "1/2"}));
    auto out = cut_or_average(box(qv({2, 2}), qv({3, 3})), point, 15, kOracle, {});
    CHECK_FALSE(out.feasible());
}

TEST_CASE("cut budget is reported and not exceeded at desk scale") {
    auto sq = box(qv({0, 0}), qv({10, 10}));
    auto res = cut_or_average(sq, AffineLattice::standard(2), 15, kOracle, {});
    CHECK(res.stats.cut_budget > 0.0);
    CHECK(res.stats.budget_alarms == 0);
}

TEST_CASE("trace stream records the run") {
    std::ostringstream trace;
    CoaOptions opt;
    opt.trace = &trace;
    auto sq = box(qv({0, 0}), qv({4, 4}));
    auto res = cut_or_average(sq, AffineLattice::standard(2), 15, kOracle, opt);
    CHECK(res.feasible());
    CHECK(trace.str().find("\"event\"") != std::string::npos);
}

TEST_CASE("restricted queries satisfy the advisory symmetrizer bound") {
    std::ostringstream trace;
    CoaOptions opt;
    opt.trace = &trace;
    opt.check_symmetrizer = true;
    opt.seed = 5;
    auto sq = box(qv({0, 0}), qv({10, 10}));
    auto res = cut_or_average(sq, AffineLattice::standard(2), 15, kOracle, opt);
    CHECK(res.feasible());
    std::istringstream lines(trace.str());
    std::string line;
    int events = 0;
    while (std::getline(lines, line)) {
        auto rpos = line.find("\"ratio\":");
        if (rpos == std::string::npos) continue;
        double ratio = std::strtod(line.c_str() + rpos + 8, nullptr);
        auto bpos = line.find("\"bound\":");
        REQUIRE(bpos != std::string::npos);
        double bound = std::strtod(line.c_str() + bpos + 8, nullptr);
        CHECK(ratio + 0.02 >= bound);  // MC slack; the bound is tiny by design
        ++events;
    }
    CHECK(events > 0);
}
