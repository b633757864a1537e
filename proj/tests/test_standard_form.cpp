#include <doctest.h>

#include <random>

#include "latticecut/standard_form.hpp"
#include "test_util.hpp"

using namespace latticecut;
using lct::qm;
using lct::qv;
using lct::qvs;

namespace {
const ApxIpOracle kOracle = [](const OracleQuery& q) { return enumeration_oracle(q); };
}

TEST_CASE("cell thresholds") {
    CHECK(cell_thresholds(4) == lct::qvs({"0", "1/2", "1", "2", "3", "7/2", "4"}));
    CHECK(cell_thresholds(1) == lct::qvs({"0", "1/2", "1"}));
    CHECK(cell_thresholds(2) == lct::qvs({"0", "1/2", "1", "3/2", "2"}));
}

TEST_CASE("cell counts") {
    CHECK(cell_count({4, 4}) == 36);
    CHECK(cell_count({1}) == 2);
    CHECK(cell_count({1, 1, 1}) == 8);
    std::size_t seen = 0;
    enumerate_cells({4, 4}, [&](const CellIndex&) {
        ++seen;
        return true;
    });
    CHECK(seen == 36);
}

TEST_CASE("reflect_check examples") {
    // cell [1/2,1] x [2,3] of u = (4,4), v = (3/4, 5/2)
    CHECK(reflect_check(qvs({"1/2", "2"}), qvs({"1", "3"}), {4, 4}, qvs({"3/4", "5/2"})));
    // a non-cell box violates the reflection bound
    CHECK_FALSE(reflect_check(qvs({"0"}), qvs({"3"}), {4}, qvs({"0"})));
}

TEST_CASE("cells cover the box and overlap only on boundaries") {
    std::mt19937_64 rng(2023);
    std::uniform_int_distribution<long> ud(1, 16);
    std::uniform_int_distribution<long> nd(1, 3);
    std::uniform_int_distribution<long> num(0, 97);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = nd(rng);
        std::vector<long> u(n);
        QVec p(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = ud(rng);
            p[i] = Rat(u[i]) * make_rat(num(rng), 97);  // generic: never on a threshold
        }
        std::size_t covering = 0;
        enumerate_cells(u, [&](const CellIndex& cell) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i) {
                auto th = cell_thresholds(u[i]);
                inside = th[cell.interval[i]] <= p[i] && p[i] <= th[cell.interval[i] + 1];
            }
            if (inside) ++covering;
            return true;
        });
        // denominator 97 avoids every half-integer and integer threshold, so
        // a generic point lies in exactly one cell; boundary points in more
        bool on_boundary = false;
        for (std::size_t i = 0; i < n; ++i)
            for (const Rat& t : cell_thresholds(u[i]))
                if (p[i] == t) on_boundary = true;
        if (on_boundary) CHECK(covering >= 1);
        else CHECK(covering == 1);
    }
}

TEST_CASE("reflect_check holds on random cells") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> ud(1, 64);
    std::uniform_int_distribution<long> nd(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = nd(rng);
        std::vector<long> u(n);
        QVec lo(n), hi(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = ud(rng);
            auto th = cell_thresholds(u[i]);
            std::uniform_int_distribution<std::size_t> pick(0, th.size() - 2);
            std::size_t iv = pick(rng);
            lo[i] = th[iv];
            hi[i] = th[iv + 1];
            std::uniform_int_distribution<long> frac(0, 8);
            v[i] = lo[i] + (hi[i] - lo[i]) * make_rat(frac(rng), 8);
        }
        CHECK(reflect_check(lo, hi, u, v));
    }
}

TEST_CASE("standard form: 3x+5y+7z = 10 within u=(2,2,2)") {
    StandardFormIP inst;
    inst.a = qm({{3, 5, 7}});
    inst.b = qv({10});
    inst.u = {2, 2, 2};
    auto res = solve_standard_form(inst, kOracle, 9);
    REQUIRE(res.x.has_value());
    CHECK(inst.a * *res.x == inst.b);
    CHECK(all_integer(*res.x));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK((*res.x)[i] >= 0);
        CHECK((*res.x)[i] <= 2);
    }
    CHECK(dp_subset_sum({3, 5, 7}, 10, {2, 2, 2}).has_value());
    CHECK(res.counters.oracle_calls == res.counters.cells_examined - res.counters.cells_skipped);
}

TEST_CASE("standard form infeasible: x1 + x2 = 5 with u=(2,2)") {
    StandardFormIP inst;
    inst.a = qm({{1, 1}});
    inst.b = qv({5});
    inst.u = {2, 2};
    auto res = solve_standard_form(inst, kOracle, 1);
    CHECK_FALSE(res.x.has_value());
    // exhausted scans account for every cell exactly once
    CHECK(res.counters.cells_examined == res.counters.cells_total);
    CHECK(res.counters.oracle_calls == res.counters.cells_total - res.counters.cells_skipped);
}

TEST_CASE("standard form: diagonal x1 = x2") {
    StandardFormIP inst;
    inst.a = qm({{1, -1}});
    inst.b = qv({0});
    inst.u = {3, 3};
    auto res = solve_standard_form(inst, kOracle, 4);
    REQUIRE(res.x.has_value());
    CHECK((*res.x)[0] == (*res.x)[1]);
}

TEST_CASE("oracle-call accounting on exhausted scans") {
    for (long t : {1L, 3L, 26L, 27L, 28L}) {
        StandardFormIP inst;
        inst.a = qm({{2, 4, 6}});
        inst.b = {Rat(t)};
        inst.u = {3, 3, 3};
        auto res = solve_standard_form(inst, kOracle, 5);
        CHECK(res.counters.oracle_calls == res.counters.cells_examined - res.counters.cells_skipped);
        if (!res.x.has_value())
            CHECK(res.counters.cells_examined == res.counters.cells_total);
        bool dp = dp_subset_sum({2, 4, 6}, t, {3, 3, 3}).has_value();
        CHECK(res.x.has_value() == dp);
    }
}

TEST_CASE("subset sum examples") {
    auto feasible = subset_sum({3, 5, 7}, 10, {2, 2, 2}, kOracle, 3);
    REQUIRE(feasible.x.has_value());

    auto zero = subset_sum({3, 5, 7}, 0, {2, 2, 2}, kOracle, 3);
    REQUIRE(zero.x.has_value());
    CHECK(is_zero(*zero.x));

    auto parity = subset_sum({2, 4}, 7, {3, 3}, kOracle, 3);
    CHECK_FALSE(parity.x.has_value());
}

TEST_CASE("subset sum agrees with the DP oracle on random instances") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> zd(0, 9);
    std::uniform_int_distribution<long> ud(1, 6);
    std::uniform_int_distribution<long> nd(2, 4);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = nd(rng);
        std::vector<long> z(n), u(n);
        long zmax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = zd(rng);
            u[i] = ud(rng);
            zmax += z[i] * u[i];
        }
        std::uniform_int_distribution<long> td(0, zmax + 2);
        long t = td(rng);
        auto res = subset_sum(z, t, u, kOracle, 1000 + trial);
        auto dp = dp_subset_sum(z, t, u);
        CHECK(res.x.has_value() == dp.has_value());
        if (res.x) {
            Rat sum(0);
            for (std::size_t i = 0; i < n; ++i) {
                sum += Rat(z[i]) * (*res.x)[i];
                CHECK((*res.x)[i] >= 0);
                CHECK((*res.x)[i] <= u[i]);
            }
            CHECK(sum == t);
        }
    }
}

TEST_CASE("knapsack examples") {
    auto k1 = knapsack({2, 3}, {1, 2}, 4, {3, 3}, kOracle, 2);
    REQUIRE(k1.x.has_value());
    CHECK(k1.value == 7);

    auto k2 = knapsack({2, 3}, {1, 2}, 0, {3, 3}, kOracle, 2);
    REQUIRE(k2.x.has_value());
    CHECK(k2.value == 0);
    CHECK(is_zero(*k2.x));

    auto k3 = knapsack({0, 0}, {1, 2}, 4, {3, 3}, kOracle, 2);
    REQUIRE(k3.x.has_value());
    CHECK(k3.value == 0);
}

TEST_CASE("inequality form examples") {
    auto r1 = solve_inequality_form(qm({{1, 2}}), qv({4}), qv({2, 3}), {3, 3}, kOracle, 8);
    REQUIRE(r1.x.has_value());
    CHECK(r1.value == 7);
    CHECK(*r1.x == qv({2, 1}));

    auto r2 = solve_inequality_form(qm({{1}}), qv({0}), qv({1}), {5}, kOracle, 8);
    REQUIRE(r2.x.has_value());
    CHECK(r2.value == 0);

    auto r3 = solve_inequality_form(qm({{-1}}), qv({-10}), qv({1}), {3}, kOracle, 8);
    CHECK_FALSE(r3.x.has_value());
}

TEST_CASE("knapsack optima match the DP oracle on random instances") {
    std::mt19937_64 rng(5005);
    std::uniform_int_distribution<long> cd(0, 9);
    std::uniform_int_distribution<long> ad(0, 9);
    std::uniform_int_distribution<long> ud(1, 4);
    std::uniform_int_distribution<long> nd(2, 3);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = nd(rng);
        std::vector<long> c(n), a(n), u(n);
        long amax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = cd(rng);
            a[i] = ad(rng);
            u[i] = ud(rng);
            amax += a[i] * u[i];
        }
        std::uniform_int_distribution<long> bd(0, amax + 1);
        long beta = bd(rng);
        auto res = knapsack(c, a, beta, u, kOracle, 9000 + trial);
        auto [dpval, dpx] = dp_knapsack(c, a, beta, u);
        REQUIRE(res.x.has_value());  // x = 0 is always feasible
        CHECK(res.value == dpval);
        Rat w(0), v(0);
        for (std::size_t i = 0; i < n; ++i) {
            w += Rat(a[i]) * (*res.x)[i];
            v += Rat(c[i]) * (*res.x)[i];
        }
        CHECK(w <= beta);
        CHECK(v == res.value);
    }
}

TEST_CASE("dp oracles on their own examples") {
    auto s = dp_subset_sum({3, 5, 7}, 10, {2, 2, 2});
    REQUIRE(s.has_value());
    long sum = 0;
    for (std::size_t i = 0; i < 3; ++i) sum += (*s)[i] * std::vector<long>{3, 5, 7}[i];
    CHECK(sum == 10);
    CHECK(dp_subset_sum({2, 4}, 7, {3, 3}) == std::nullopt);
    CHECK(dp_subset_sum({1, 1}, 0, {3, 3}).has_value());

    auto [v, x] = dp_knapsack({2, 3}, {1, 2}, 4, {3, 3});
    CHECK(v == 7);
    CHECK_THROWS_AS(dp_subset_sum({1}, 100'000'000L, {1}), std::invalid_argument);
}
