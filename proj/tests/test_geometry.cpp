#include <doctest.h>

#include <cmath>
#include <random>

#include "latticecut/oracle.hpp"
#include "latticecut/sampling.hpp"
#include "test_util.hpp"

using namespace latticecut;
using lct::box;
using lct::qm;
using lct::qv;
using lct::qvs;

TEST_CASE("ellipsoid norms") {
    Ellipsoid unit(QMat::identity(2));
    CHECK(unit.norm_squared(qv({3, 4})) == 25);
    CHECK(unit.norm(qv({3, 4})) == doctest::Approx(5.0));
    CHECK(unit.norm_squared(qv({0, 0})) == 0);

    Ellipsoid stretched(qm({{4, 0}, {0, 1}}));
    CHECK(stretched.norm_squared(qv({1, 0})) == 4);  // norm 2
}

TEST_CASE("ellipsoid rejects non-SPD matrices") {
    CHECK_THROWS(Ellipsoid(qm({{1, 2}, {3, 1}})));    // asymmetric
    CHECK_THROWS(Ellipsoid(qm({{1, 2}, {2, 1}})));    // indefinite
    CHECK_THROWS(Ellipsoid(qm({{0, 0}, {0, 1}})));    // singular
    CHECK(Ellipsoid::is_spd(qm({{2, 1}, {1, 2}})));
}

TEST_CASE("centroid of the unit square") {
    auto sq = box(qv({0, 0}), qv({1, 1}));
    auto cert = centroid_and_rounding(sq, 7, 4096);
    CHECK(certificate_valid(cert, sq));
    CHECK(std::fabs(to_double(cert.center[0]) - 0.5) < 0.1);
    CHECK(std::fabs(to_double(cert.center[1]) - 0.5) < 0.1);
    // covariance-scaled box: R stays near sqrt(n)
    CHECK(to_double(cert.radius_factor) <= std::sqrt(2.0) * 1.25);
}

TEST_CASE("centroid of a triangle") {
    Polytope tri(qm({{-1, 0}, {0, -1}, {1, 1}}), qv({0, 0, 1}));
    auto cert = centroid_and_rounding(tri, 3, 4096);
    CHECK(certificate_valid(cert, tri));
    CHECK(std::fabs(to_double(cert.center[0]) - 1.0 / 3) < 0.1);
    CHECK(std::fabs(to_double(cert.center[1]) - 1.0 / 3) < 0.1);
}

TEST_CASE("centroid requires a full-dimensional body") {
    Polytope seg(qm({{0, 1}, {0, -1}}), qv({2, 0}), qm({{1, 0}}), qv({1}));
    CHECK_THROWS_AS(centroid_and_rounding(seg, 1, 256), std::invalid_argument);
}

TEST_CASE("mc volume") {
    auto sq = box(qv({0, 0}), qv({1, 1}));
    CHECK(mc_volume(sq, 1, 100000) == doctest::Approx(1.0).epsilon(0.02));

    Polytope tri(qm({{-1, 0}, {0, -1}, {1, 1}}), qv({0, 0, 1}));
    CHECK(mc_volume(tri, 2, 100000) == doctest::Approx(0.5).epsilon(0.04));

    Polytope thin(qm({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), qv({0, 0, 1, 0}));
    CHECK_THROWS_AS(mc_volume(thin, 3, 100), std::invalid_argument);
}

TEST_CASE("mc volume is reproducible for a fixed seed") {
    auto sq = box(qv({0, 0}), qv({3, 2}));
    CHECK(mc_volume(sq, 42, 20000) == mc_volume(sq, 42, 20000));
    auto cert1 = centroid_and_rounding(sq, 42, 1024);
    auto cert2 = centroid_and_rounding(sq, 42, 1024);
    CHECK(cert1.center == cert2.center);
    CHECK(cert1.radius_factor == cert2.radius_factor);
}

TEST_CASE("volume ratio of a half square") {
    auto sq = box(qv({0, 0}), qv({2, 2}));
    auto half = sq.cut_interior_trusted(qv({1, 0}), Rat(1));
    double r = mc_volume_ratio(half, sq, 5, 100000);
    CHECK(r == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("grunbaum: halfspaces through the sampled centroid") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> c(-3, 3);
    int tested = 0;
    for (int trial = 0; trial < 12 && tested < 6; ++trial) {
        QMat a(4 + 4, 2);
        QVec b(4 + 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = c(rng);
            b[i] = 5 + (trial % 4);
        }
        for (std::size_t j = 0; j < 2; ++j) {
            a(4 + 2 * j, j) = 1;
            b[4 + 2 * j] = 4;
            a(4 + 2 * j + 1, j) = -1;
            b[4 + 2 * j + 1] = 4;
        }
        auto k = Polytope::try_create(a, b);
        if (!k || !k->full_dimensional()) continue;
        auto cert = centroid_and_rounding(*k, 1000 + trial, 8192);
        QVec dir = qv({1 + trial % 2, trial % 3 == 0 ? -1 : 1});
        auto side = k->cut_interior_trusted(dir, dot(dir, cert.center));
        double frac = mc_volume_ratio(side, *k, 17 + trial, 100000);
        const double lo = 1.0 / M_E - 0.05, hi = 1.0 - 1.0 / M_E + 0.05;
        CHECK(frac >= lo);
        CHECK(frac <= hi);
        ++tested;
    }
    CHECK(tested >= 4);
}

TEST_CASE("milman-pajor: symmetrizer volume at the sampled centroid") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<long> c(-3, 3);
    int tested = 0;
    for (int trial = 0; trial < 10 && tested < 5; ++trial) {
        QMat a(3 + 4, 2);
        QVec b(3 + 4);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = c(rng);
            b[i] = 4 + (trial % 3);
        }
        for (std::size_t j = 0; j < 2; ++j) {
            a(3 + 2 * j, j) = 1;
            b[3 + 2 * j] = 3;
            a(3 + 2 * j + 1, j) = -1;
            b[3 + 2 * j + 1] = 3;
        }
        auto k = Polytope::try_create(a, b);
        if (!k || !k->full_dimensional()) continue;
        auto cert = centroid_and_rounding(*k, 500 + trial, 8192);
        double ratio = symmetrizer_volume_ratio(*k, cert.center, 29 + trial, 100000);
        CHECK(ratio >= 0.8 * 0.25);  // 2^-n with MC+centroid slack, n = 2
        ++tested;
    }
    CHECK(tested >= 3);
}

TEST_CASE("certificate_valid spots broken certificates") {
    auto sq = box(qv({0, 0}), qv({1, 1}));
    auto cert = centroid_and_rounding(sq, 11, 2048);
    RoundingCertificate bad = cert;
    bad.radius_factor = make_rat(1, 100);  // outer inclusion now false
    CHECK_FALSE(certificate_valid(bad, sq));
    RoundingCertificate off = cert;
    off.center = qv({5, 5});
    CHECK_FALSE(certificate_valid(off, sq));
}
