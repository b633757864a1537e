#include "latticecut/instance_io.hpp"

#include <fstream>

namespace latticecut {

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw std::invalid_argument("rational fields must be \"p/q\" strings or integers");
}

json rat_to_json(const Rat& q) { return rat_to_string(q); }

QVec qvec_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector field must be an array");
    QVec v;
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

json qvec_to_json(const QVec& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(rat_to_json(e));
    return out;
}

namespace {

QMat qmat_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix field must be an array of rows");
    std::vector<QVec> rows;
    for (const auto& r : j) rows.push_back(qvec_from_json(r));
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
    return QMat::from_rows(rows);
}

json qmat_rows_to_json(const QMat& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(qvec_to_json(m.row(i)));
    return out;
}

std::vector<long> longs_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<long> v;
    for (const auto& e : j) {
        Rat q = rat_from_json(e);
        if (!is_integer(q)) throw std::invalid_argument(std::string(what) + " must be integer");
        v.push_back(q.get_num().get_si());
    }
    return v;
}

long long_from_json(const json& j, const char* what) {
    Rat q = rat_from_json(j);
    if (!is_integer(q)) throw std::invalid_argument(std::string(what) + " must be integer");
    return q.get_num().get_si();
}

}  // namespace

Polytope polytope_from_json(const json& j) {
    QMat a = qmat_from_json(j.at("A"));
    QVec b = qvec_from_json(j.at("b"));
    QMat c;
    QVec d;
    if (j.contains("eq")) {
        c = qmat_from_json(j.at("eq").at("C"));
        d = qvec_from_json(j.at("eq").at("d"));
    }
    return Polytope(std::move(a), std::move(b), std::move(c), std::move(d));
}

json polytope_to_json(const Polytope& k) {
    json out;
    out["A"] = qmat_rows_to_json(k.ineq_matrix());
    out["b"] = qvec_to_json(k.ineq_rhs());
    if (k.eq_matrix().rows() > 0) {
        out["eq"]["C"] = qmat_rows_to_json(k.eq_matrix());
        out["eq"]["d"] = qvec_to_json(k.eq_rhs());
    }
    return out;
}

AffineLattice lattice_from_json(const json& j) {
    QVec shift = qvec_from_json(j.at("shift"));
    if (!j.at("basis").is_array()) throw std::invalid_argument("lattice basis must be a column list");
    std::vector<QVec> cols;
    for (const auto& c : j.at("basis")) cols.push_back(qvec_from_json(c));
    return AffineLattice(std::move(shift), QMat::from_cols(cols));
}

json lattice_to_json(const AffineLattice& l) {
    json out;
    out["shift"] = qvec_to_json(l.shift());
    json cols = json::array();
    for (std::size_t j = 0; j < l.basis().cols(); ++j) cols.push_back(qvec_to_json(l.basis().col(j)));
    out["basis"] = cols;
    return out;
}

Instance instance_from_json(const json& j) {
    Instance inst;
    const std::string type = j.at("type").get<std::string>();
    if (type == "standard") {
        inst.type = Instance::Type::Standard;
        inst.a = qmat_from_json(j.at("A"));
        inst.b = qvec_from_json(j.at("b"));
        inst.u = longs_from_json(j.at("u"), "u");
    } else if (type == "inequality") {
        inst.type = Instance::Type::Inequality;
        inst.a = qmat_from_json(j.at("A"));
        inst.b = qvec_from_json(j.at("b"));
        inst.objective = qvec_from_json(j.at("c"));
        inst.u = longs_from_json(j.at("u"), "u");
    } else if (type == "subset_sum") {
        inst.type = Instance::Type::SubsetSum;
        inst.z = longs_from_json(j.at("z"), "z");
        inst.target = long_from_json(j.at("t"), "t");
        inst.u = longs_from_json(j.at("u"), "u");
    } else if (type == "knapsack") {
        inst.type = Instance::Type::Knapsack;
        inst.values = longs_from_json(j.at("c"), "c");
        inst.z = longs_from_json(j.at("a"), "a");
        inst.capacity = long_from_json(j.at("beta"), "beta");
        inst.u = longs_from_json(j.at("u"), "u");
    } else if (type == "lattice_ip") {
        inst.type = Instance::Type::LatticeIp;
        inst.polytope = polytope_from_json(j.at("polytope"));
        if (j.contains("lattice")) inst.lattice = lattice_from_json(j.at("lattice"));
    } else {
        throw std::invalid_argument("unknown instance type '" + type + "'");
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
    json j;
    in >> j;
    return instance_from_json(j);
}

}  // namespace latticecut
