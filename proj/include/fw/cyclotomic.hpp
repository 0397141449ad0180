#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fw/field.hpp"

namespace fw {

using Int = boost::multiprecision::cpp_int;

// Coefficients of the m-th cyclotomic polynomial, low degree first, monic,
// size phi(m)+1. Cached per level; call prewarm_cyclotomic before sharing a
// level across threads.
const std::vector<Int>& cyclotomic_polynomial(unsigned m);
void prewarm_cyclotomic(unsigned m);
unsigned euler_phi(unsigned m);

// Exact element of Z[zeta_m] in the power basis 1, z, ..., z^(phi(m)-1),
// reduced mod the m-th cyclotomic polynomial. Canonical: equality at a given
// level is coefficient-vector equality. Immutable value type.
class CycInt {
  public:
    CycInt() : level_(1), c_(1, 0) {}
    CycInt(unsigned level, std::vector<Int> coeffs); // coeffs size phi(level)

    static CycInt integer(const Int& n, unsigned level = 1);
    static CycInt root(unsigned m, std::uint64_t k); // zeta_m^k

    unsigned level() const { return level_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const CycInt& o) const = default;

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt operator-() const;
    CycInt pow(std::uint64_t n) const;

    // complex conjugation zeta -> zeta^(m-1)
    CycInt conj() const;
    // Galois action zeta -> zeta^t, gcd(t, m) = 1
    CycInt galois(std::uint64_t t) const;
    // image in Z[zeta_M], level() | M
    CycInt lift(unsigned M) const;

    std::optional<Int> as_rational_integer() const;
    // values under zeta_m -> exp(2*pi*i*k/m) for gcd(k, m) = 1
    std::vector<std::complex<double>> embeddings() const;

    // "c0 + c1*z + ...@m"
    std::string str() const;

    // total order for canonical multiset output: (level, coeffs lexicographic)
    static bool canonical_less(const CycInt& a, const CycInt& b);

  private:
    unsigned level_;
    std::vector<Int> c_;
};

CycInt parse_cycint(const std::string& s);

struct RationalityWitness {
    std::optional<std::uint64_t> n; // minimal N with a^N = q^(N*w/2), N*w even
};

// Decides whether some power of a is the matching power of q, given that a
// has weight w (a * conj(a) == q^w is verified exactly and a violation
// throws). The minimal witness always divides 2*lcm(2, level).
RationalityWitness power_rationality(const CycInt& a, unsigned w, const Int& q);

} // namespace fw
