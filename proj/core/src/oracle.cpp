#include "latticecut/oracle.hpp"

#include "latticecut/sampling.hpp"

namespace latticecut {

Polytope two_scaling(const Polytope& k, const QVec& center) {
    return k.scaled_from(center, Rat(2));
}

void verify_oracle_answer(const OracleQuery& q, const OracleAnswer& a) {
    if (a.empty()) return;
    if (!q.lattice.contains(*a.point))
        throw OracleContractError("oracle point is not a lattice point");
    if (!two_scaling(q.body, q.center).contains(*a.point))
        throw OracleContractError("oracle point escapes the 2-scaling");
}

OracleAnswer enumeration_oracle(const OracleQuery& q) {
    if (!q.body.contains(q.center))
        throw std::invalid_argument("enumeration_oracle: center outside the body");
    Polytope scaled = two_scaling(q.body, q.center);
    OracleAnswer ans = OracleAnswer::make_empty();
    enumerate_points(q.lattice, scaled, [&](const QVec& x) {
        ans.point = x;
        return false;  // first hit in coefficient-lex order
    });
    return ans;
}

OracleRegistry::OracleRegistry() {
    fns_["enumeration"] = [](const OracleQuery& q) { return enumeration_oracle(q); };
}

OracleRegistry& OracleRegistry::instance() {
    static OracleRegistry reg;
    return reg;
}

void OracleRegistry::register_oracle(const std::string& name, ApxIpOracle fn) {
    fns_[name] = std::move(fn);
}

ApxIpOracle OracleRegistry::get(const std::string& name) const { return fns_.at(name); }

std::vector<std::string> OracleRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, fn] : fns_) out.push_back(name);
    return out;
}

double symmetrizer_volume_ratio(const Polytope& k, const QVec& c, std::uint64_t seed,
                                std::size_t samples) {
    Polytope centered = k.translated(negate(c));
    const QMat& a = centered.ineq_matrix();
    const QVec& b = centered.ineq_rhs();
    QMat sym(2 * a.rows(), a.cols());
    QVec symb(2 * a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sym.set_row(i, a.row(i));
        symb[i] = b[i];
        sym.set_row(a.rows() + i, negate(a.row(i)));
        symb[a.rows() + i] = b[i];
    }
    auto body = Polytope::try_create(std::move(sym), std::move(symb));
    if (!body || !body->full_dimensional()) return 0.0;
    return mc_volume_ratio(*body, centered, seed, samples);
}

}  // namespace latticecut
