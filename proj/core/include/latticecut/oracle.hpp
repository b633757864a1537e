#pragma once

#include <functional>
#include <map>
#include <string>

#include "latticecut/lattice.hpp"

namespace latticecut {

/// Input to approximate integer programming: a bounded body, a point of it,
/// and the lattice to search.
struct OracleQuery {
    Polytope body;
    QVec center;  // must lie in body
    AffineLattice lattice;
};

/// Either a lattice point of the 2-scaling of the body around the center, or
/// the claim that body and lattice are disjoint. A Point answer never implies
/// that the body itself meets the lattice.
struct OracleAnswer {
    std::optional<QVec> point;

    bool empty() const { return !point.has_value(); }
    static OracleAnswer make_empty() { return {}; }
    static OracleAnswer make_point(QVec x) { return {std::move(x)}; }
};

using ApxIpOracle = std::function<OracleAnswer(const OracleQuery&)>;

/// center + 2*(K - center), as an exact polytope.
Polytope two_scaling(const Polytope& k, const QVec& center);

/// Exact re-check of the oracle contract; throws OracleContractError.
void verify_oracle_answer(const OracleQuery& q, const OracleAnswer& a);

/// Reference oracle: complete enumeration of lattice points in the 2-scaling;
/// returns the first point in coefficient-lex order, or Empty (sound because
/// K is contained in its own 2-scaling).
OracleAnswer enumeration_oracle(const OracleQuery& q);

/// Named oracle registry ("enumeration" is pre-registered).
class OracleRegistry {
  public:
    static OracleRegistry& instance();
    void register_oracle(const std::string& name, ApxIpOracle fn);
    ApxIpOracle get(const std::string& name) const;  // throws std::out_of_range
    std::vector<std::string> names() const;

  private:
    OracleRegistry();
    std::map<std::string, ApxIpOracle> fns_;
};

/// MC estimate of Vol((K-c) cap (c-K)) / Vol(K); advisory diagnostic for the
/// symmetrizer precondition of fast oracle implementations. Never rejects.
double symmetrizer_volume_ratio(const Polytope& k, const QVec& c, std::uint64_t seed,
                                std::size_t samples);

}  // namespace latticecut
