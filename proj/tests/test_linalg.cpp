#include <doctest.h>

#include <random>

#include "latticecut/hnf.hpp"
#include "latticecut/linalg.hpp"
#include "test_util.hpp"

using namespace latticecut;
using lct::qm;
using lct::qv;

TEST_CASE("matrix basics") {
    QMat m = qm({{1, 2}, {3, 4}});
    CHECK(m.det() == -2);
    CHECK(m.rank() == 2);
    QMat inv = m.inverse();
    CHECK(m * inv == QMat::identity(2));
    CHECK(qm({{1, 2}, {2, 4}}).rank() == 1);
    CHECK_THROWS(qm({{1, 2}, {2, 4}}).inverse());
}

TEST_CASE("solve and nullspace") {
    QMat m = qm({{1, 1, 0}, {0, 1, 1}});
    auto x = m.solve(qv({2, 1}));
    REQUIRE(x.has_value());
    CHECK(m * *x == qv({2, 1}));
    auto ns = m.nullspace();
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(m * ns[0]));

    QMat bad = qm({{1, 1}, {1, 1}});
    CHECK_FALSE(bad.solve(qv({0, 1})).has_value());
}

TEST_CASE("hnf identity") {
    auto [h, u] = hnf(QMat::identity(3));
    CHECK(h == QMat::identity(3));
    CHECK(u == QMat::identity(3));
}

TEST_CASE("hnf preserves determinant magnitude") {
    QMat m = qm({{2, 1}, {0, 1}});
    auto [h, u] = hnf(m);
    CHECK(h == m * u);
    CHECK(abs(u.det()) == 1);
    CHECK(abs(h.det()) == 2);
}

TEST_CASE("hnf random property: H = MU, U unimodular, canonical across scrambles") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        QMat m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = d(rng);
        auto [h, u] = hnf(m);
        CHECK(h == m * u);
        Rat du = u.det();
        CHECK((du == 1 || du == -1));
    }
}

TEST_CASE("diophantine: parity obstruction") {
    CHECK_FALSE(solve_diophantine(qm({{2}}), qv({3})).has_value());
}

TEST_CASE("diophantine: x1 + x2 = 2") {
    auto sol = solve_diophantine(qm({{1, 1}}), qv({2}));
    REQUIRE(sol.has_value());
    CHECK(sol->particular == qv({2, 0}));
    REQUIRE(sol->kernel_basis.cols() == 1);
    CHECK(sol->kernel_basis.col(0) == qv({1, -1}));
}

TEST_CASE("diophantine: 3x+5y+7z = 10 has a 2-dim kernel") {
    QMat a = qm({{3, 5, 7}});
    auto sol = solve_diophantine(a, qv({10}));
    REQUIRE(sol.has_value());
    CHECK(a * sol->particular == qv({10}));
    REQUIRE(sol->kernel_basis.cols() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(is_zero(a * sol->kernel_basis.col(j)));
        CHECK(sol->kernel_basis.col(j).size() == 3);
        CHECK(all_integer(sol->kernel_basis.col(j)));
    }
    CHECK(all_integer(sol->particular));
}

TEST_CASE("diophantine random: substitution check and kernel completeness") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        QMat a(2, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = d(rng);
        QVec xstar = qv({d(rng), d(rng), d(rng), d(rng)});
        QVec b = a * xstar;  // guaranteed solvable
        auto sol = solve_diophantine(a, b);
        REQUIRE(sol.has_value());
        CHECK(a * sol->particular == b);
        for (std::size_t j = 0; j < sol->kernel_basis.cols(); ++j)
            CHECK(is_zero(a * sol->kernel_basis.col(j)));
        // xstar - particular must be an integer combination of the kernel basis
        if (sol->kernel_basis.cols() > 0) {
            auto coeff = sol->kernel_basis.solve(sub(xstar, sol->particular));
            REQUIRE(coeff.has_value());
            CHECK(all_integer(*coeff));
            CHECK(sol->kernel_basis * *coeff == sub(xstar, sol->particular));
        } else {
            CHECK(sol->particular == xstar);
        }
    }
}

TEST_CASE("integerize_rows clears denominators without changing solutions") {
    QMat c = lct::qms({{"1/2", "1/3"}, {"2", "1"}});
    QVec d = lct::qvs({"5/6", "3"});
    auto [c2, d2] = integerize_rows(c, d);
    CHECK(c2.all_integer());
    CHECK(all_integer(d2));
    QVec x = lct::qvs({"1", "1"});
    CHECK(c * x == d);
    CHECK(c2 * x == d2);
}
