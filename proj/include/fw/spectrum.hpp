#pragma once

#include <map>

#include "fw/weil.hpp"

namespace fw {

// One Frobenius eigenvalue: either the exact power q^e (non-middle classes
// and hyperplane classes) or an exact cyclotomic value of declared weight.
struct Eigenvalue {
    bool is_qpow = true;
    std::uint64_t e = 0; // exponent when is_qpow
    CycInt v;            // value otherwise
    int weight = 0;

    static Eigenvalue qpow(std::uint64_t e, int weight) { return {true, e, CycInt(), weight}; }
    static Eigenvalue cyc(CycInt v, int weight) { return {false, 0, std::move(v), weight}; }
    bool operator==(const Eigenvalue&) const = default;
};

bool eigenvalue_less(const Eigenvalue& a, const Eigenvalue& b);

struct Spectrum {
    std::uint64_t q = 0;
    int dim = 0;
    std::map<int, std::vector<Eigenvalue>> h; // degree -> sorted eigenvalue multiset

    static Spectrum point(std::uint64_t q);
    std::size_t betti(int i) const {
        auto it = h.find(i);
        return it == h.end() ? 0 : it->second.size();
    }
};

struct ZetaFunction {
    std::uint64_t q = 0;
    std::map<int, std::vector<Int>> P; // degree -> integer coefficients of P_i(T), P_i(0)=1
};

// factor of a product variety: degree m, dimension r, coefficients over the base field
struct FactorSpec {
    unsigned m = 1;
    unsigned r = 1;
    Coefficients a; // empty => all ones
};

Spectrum hypersurface_spectrum(unsigned m, unsigned r, const Coefficients& a, const FieldTable& t,
                               const RunConfig& cfg = {});

Spectrum product_spectrum(const std::vector<Spectrum>& specs);

// Lefschetz trace over F_{q^n}; must reduce to a rational integer
Int point_count(const Spectrum& s, unsigned n, const RunConfig& cfg = {});

// Exhaustive projective point count of the product over the degree-n
// extension, independent of the eigenvalue machinery.
Int brute_force_count(const std::vector<FactorSpec>& factors, const FieldTable& t, unsigned n,
                      const RunConfig& cfg = {});

// exact P_i(T) = prod (1 - alpha T) per degree; cyclotomic parts must cancel
ZetaFunction zeta_rational(const Spectrum& s);

// rho_{a/2} = (-1)^(a+1) * mult(q^(a/2) in H^a) for even a, 0 for odd a
long long zeta_order(const Spectrum& s, unsigned a);
// S(2) = sum over a > 4 of rho_{a/2}
long long zeta_s2(const Spectrum& s);

} // namespace fw
