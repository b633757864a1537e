#pragma once

#include <json.hpp>

#include "latticecut/lattice.hpp"
#include "latticecut/standard_form.hpp"

namespace latticecut {

using json = nlohmann::ordered_json;

/// Rationals serialize as canonical "p/q" strings ("/q" elided for integers);
/// plain JSON numbers are accepted on input for integral values.
Rat rat_from_json(const json& j);
json rat_to_json(const Rat& q);

QVec qvec_from_json(const json& j);
json qvec_to_json(const QVec& v);

/// {"A": [[...]], "b": [...], "eq": {"C": [[...]], "d": [...]}}
Polytope polytope_from_json(const json& j);
json polytope_to_json(const Polytope& k);

/// {"shift": [...], "basis": [[col], [col], ...]}
AffineLattice lattice_from_json(const json& j);
json lattice_to_json(const AffineLattice& l);

/// One solver instance: {"type": "standard" | "inequality" | "subset_sum" |
/// "knapsack" | "lattice_ip", fields per type, integers as numbers}.
struct Instance {
    enum class Type { Standard, Inequality, SubsetSum, Knapsack, LatticeIp };
    Type type;

    // standard / inequality
    QMat a;
    QVec b;
    QVec objective;       // inequality form
    std::vector<long> u;  // standard, inequality, subset_sum, knapsack

    // subset_sum / knapsack
    std::vector<long> z;       // subset-sum items / knapsack weights
    std::vector<long> values;  // knapsack profits
    long target = 0;           // subset-sum t
    long capacity = 0;         // knapsack beta

    // lattice_ip
    std::optional<Polytope> polytope;
    std::optional<AffineLattice> lattice;  // defaults to Z^n
};

Instance instance_from_json(const json& j);
Instance load_instance(const std::string& path);

}  // namespace latticecut
