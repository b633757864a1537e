#include "latticecut/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace latticecut {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int rat_round(const Rat& q) {
    // floor(q + 1/2) for q >= 0, ceil(q - 1/2) otherwise
    Rat half(1, 2);
    return q >= 0 ? rat_floor(q + half) : rat_ceil(q - half);
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

double to_double(const Rat& q) { return q.get_d(); }

Rat rat_from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("rat_from_double: non-finite");
    Rat q;
    mpq_set_d(q.get_mpq_t(), d);
    return q;
}

Rat rat_sqrt_upper(const Rat& q) {
    if (q < 0) throw std::invalid_argument("rat_sqrt_upper: negative");
    if (q == 0) return Rat(0);
    // sqrt(num/den) = sqrt(num*den)/den; floor-sqrt the product at 64 extra
    // bits and round up, so the result exceeds sqrt(q) by < 2^-64 relative.
    Int m = q.get_num() * q.get_den();
    Int scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), m.get_mpz_t(), 128);
    Int r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    r += 1;
    Int den;
    mpz_mul_2exp(den.get_mpz_t(), q.get_den().get_mpz_t(), 64);
    return make_rat(r, den);
}

Rat parse_rat(const std::string& s) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("parse_rat: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace latticecut
