#include <doctest.h>

#include "latticecut/instance_io.hpp"
#include "test_util.hpp"

using namespace latticecut;
using lct::qv;
using lct::qvs;

TEST_CASE("polytope json round trip") {
    json j = json::parse(R"({
        "A": [["1","0"],["-1","0"],["0","1"],["0","-1"]],
        "b": ["10","0","3/5","-1/5"]
    })");
    Polytope k = polytope_from_json(j);
    CHECK(k.dim() == 2);
    CHECK(k.contains(qvs({"5", "2/5"})));
    json back = polytope_to_json(k);
    Polytope again = polytope_from_json(back);
    CHECK(again.contains(qvs({"5", "2/5"})));
    CHECK_FALSE(again.contains(qv({5, 0})));
}

TEST_CASE("degenerate polytope keeps its hull block in json") {
    Polytope seg(lct::qm({{0, 1}, {0, -1}}), qv({2, 0}), lct::qm({{1, 0}}), qv({1}));
    json j = polytope_to_json(seg);
    CHECK(j.contains("eq"));
    Polytope back = polytope_from_json(j);
    CHECK(back.affine_dim() == 1);
}

TEST_CASE("lattice json round trip") {
    json j = json::parse(R"({"shift": ["1/2","0"], "basis": [["2","0"],["1","1"]]})");
    AffineLattice l = lattice_from_json(j);
    CHECK(l.rank() == 2);
    CHECK(l.contains(qvs({"7/2", "1"})));  // shift + col0 + col1
    json back = lattice_to_json(l);
    AffineLattice again = lattice_from_json(back);
    CHECK(again.contains(qvs({"7/2", "1"})));
    CHECK_FALSE(again.contains(qvs({"5/2", "1"})));
}

TEST_CASE("instance parsing covers every type") {
    auto std_inst = instance_from_json(json::parse(
        R"({"type":"standard","A":[[3,5,7]],"b":[10],"u":[2,2,2]})"));
    CHECK(std_inst.type == Instance::Type::Standard);
    CHECK(std_inst.u == std::vector<long>{2, 2, 2});

    auto ineq = instance_from_json(json::parse(
        R"({"type":"inequality","A":[[1,2]],"b":[4],"c":[2,3],"u":[3,3]})"));
    CHECK(ineq.type == Instance::Type::Inequality);

    auto ss = instance_from_json(json::parse(
        R"({"type":"subset_sum","z":[3,5,7],"t":10,"u":[2,2,2]})"));
    CHECK(ss.target == 10);

    auto kn = instance_from_json(json::parse(
        R"({"type":"knapsack","c":[2,3],"a":[1,2],"beta":4,"u":[3,3]})"));
    CHECK(kn.capacity == 4);

    auto lip = instance_from_json(json::parse(
        R"({"type":"lattice_ip","polytope":{"A":[["1"],["-1"]],"b":["1","0"]}})"));
    CHECK(lip.polytope.has_value());
    CHECK_FALSE(lip.lattice.has_value());
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(instance_from_json(json::parse(R"({"type":"martian"})")), std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json(json::parse(R"({"type":"subset_sum","z":[1],"t":"1/2","u":[1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(rat_from_json(json::parse("1.5")), std::invalid_argument);
}
