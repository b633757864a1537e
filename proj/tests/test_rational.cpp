#include <doctest.h>

#include "latticecut/rational.hpp"

using namespace latticecut;

TEST_CASE("canonical form and parsing") {
    CHECK(make_rat(2, 4) == make_rat(1, 2));
    CHECK(make_rat(-2, -4) == make_rat(1, 2));
    CHECK(make_rat(3, -6) == make_rat(-1, 2));
    CHECK(parse_rat("7/3") == make_rat(7, 3));
    CHECK(parse_rat("-4/8") == make_rat(-1, 2));
    CHECK(parse_rat("5") == Rat(5));
    CHECK(rat_to_string(make_rat(6, 4)) == "3/2");
    CHECK(rat_to_string(Rat(-7)) == "-7");
    CHECK_THROWS(parse_rat("1/0"));
}

TEST_CASE("floor ceil round") {
    CHECK(rat_floor(make_rat(7, 2)) == 3);
    CHECK(rat_ceil(make_rat(7, 2)) == 4);
    CHECK(rat_floor(make_rat(-7, 2)) == -4);
    CHECK(rat_ceil(make_rat(-7, 2)) == -3);
    CHECK(rat_floor(Rat(5)) == 5);
    CHECK(rat_ceil(Rat(5)) == 5);
    CHECK(rat_round(make_rat(5, 4)) == 1);
    CHECK(rat_round(make_rat(7, 4)) == 2);
}

TEST_CASE("sqrt upper bound is tight and sound") {
    for (long p : {1L, 2L, 5L, 144L, 10007L}) {
        for (long q : {1L, 3L, 7L}) {
            Rat x = make_rat(p, q);
            Rat s = rat_sqrt_upper(x);
            CHECK(s * s >= x);
            CHECK(s * s < x * make_rat(1048578, 1048576));
        }
    }
    CHECK(rat_sqrt_upper(Rat(0)) == 0);
    CHECK(rat_sqrt_upper(Rat(4)) * rat_sqrt_upper(Rat(4)) >= 4);
}

TEST_CASE("double round trips are exact") {
    CHECK(rat_from_double(0.5) == make_rat(1, 2));
    CHECK(rat_from_double(-1.25) == make_rat(-5, 4));
}

TEST_CASE("seed mixing separates salts") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}
