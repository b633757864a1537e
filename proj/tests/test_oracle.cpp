#include <doctest.h>

#include <random>

#include "latticecut/oracle.hpp"
#include "test_util.hpp"

using namespace latticecut;
using lct::box;
using lct::qm;
using lct::qv;
using lct::qvs;

TEST_CASE("unit square: lex-least point of the 2-scaling") {
    OracleQuery q{box(qv({0, 0}), qv({1, 1})), qvs({"1/2", "1/2"}), AffineLattice::standard(2)};
    auto ans = enumeration_oracle(q);
    REQUIRE_FALSE(ans.empty());
    CHECK(*ans.point == qv({0, 0}));
    verify_oracle_answer(q, ans);
}

TEST_CASE("a Point answer does not certify K meets the lattice") {
    // l1-diamond around (1/2,1/2) of radius 3/5: no integer point, but the
    // 2-scaling (radius 6/5) reaches (0,0) at l1-distance 1
    Polytope diamond(qm({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}),
                     qvs({"8/5", "3/5", "3/5", "-2/5"}));
    CHECK(collect_points(AffineLattice::standard(2), diamond).empty());
    OracleQuery q{diamond, qvs({"1/2", "1/2"}), AffineLattice::standard(2)};
    auto ans = enumeration_oracle(q);
    REQUIRE_FALSE(ans.empty());
    CHECK(*ans.point == qv({0, 0}));
    verify_oracle_answer(q, ans);
}

TEST_CASE("thin strip: Empty certifies disjointness") {
    auto strip = box(qvs({"0", "1/5"}), qvs({"10", "2/5"}));
    OracleQuery q{strip, qvs({"5", "3/10"}), AffineLattice::standard(2)};
    auto ans = enumeration_oracle(q);
    CHECK(ans.empty());
    CHECK(collect_points(AffineLattice::standard(2), strip).empty());
}

TEST_CASE("center outside the body is rejected") {
    OracleQuery q{box(qv({0, 0}), qv({1, 1})), qv({2, 2}), AffineLattice::standard(2)};
    CHECK_THROWS_AS(enumeration_oracle(q), std::invalid_argument);
}

TEST_CASE("contract verification rejects foreign points") {
    OracleQuery q{box(qv({0, 0}), qv({1, 1})), qvs({"1/2", "1/2"}), AffineLattice::standard(2)};
    CHECK_THROWS_AS(verify_oracle_answer(q, OracleAnswer::make_point(qvs({"1/2", "0"}))),
                    OracleContractError);
    CHECK_THROWS_AS(verify_oracle_answer(q, OracleAnswer::make_point(qv({9, 9}))),
                    OracleContractError);
}

TEST_CASE("soundness and determinism on random bodies") {
    std::mt19937_64 rng(2025);
    std::uniform_int_distribution<long> c(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    int empties = 0, points = 0;
    for (int trial = 0; trial < 30; ++trial) {
        QMat a(3 + 4, 2);
        QVec b(3 + 4);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = c(rng);
            b[i] = make_rat(3 + c(rng), den(rng));
        }
        for (std::size_t j = 0; j < 2; ++j) {
            a(3 + 2 * j, j) = 1;
            b[3 + 2 * j] = make_rat(5, den(rng));
            a(3 + 2 * j + 1, j) = -1;
            b[3 + 2 * j + 1] = make_rat(5, den(rng));
        }
        auto k = Polytope::try_create(a, b);
        if (!k || !k->full_dimensional()) continue;
        OracleQuery q{*k, k->relative_interior_point(), AffineLattice::standard(2)};
        auto ans = enumeration_oracle(q);
        auto again = enumeration_oracle(q);
        CHECK(ans.empty() == again.empty());
        if (!ans.empty()) {
            CHECK(*ans.point == *again.point);
            verify_oracle_answer(q, ans);
            ++points;
        } else {
            CHECK(collect_points(q.lattice, q.body).empty());
            ++empties;
        }
    }
    CHECK(points > 0);
}

TEST_CASE("registry") {
    auto fn = OracleRegistry::instance().get("enumeration");
    OracleQuery q{box(qv({0, 0}), qv({1, 1})), qvs({"1/2", "1/2"}), AffineLattice::standard(2)};
    CHECK_FALSE(fn(q).empty());
    CHECK_THROWS_AS(OracleRegistry::instance().get("no-such-oracle"), std::out_of_range);
    auto names = OracleRegistry::instance().names();
    CHECK(std::find(names.begin(), names.end(), "enumeration") != names.end());
}
