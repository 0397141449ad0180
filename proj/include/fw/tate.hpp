#pragma once

#include <set>

#include "fw/spectrum.hpp"

namespace fw {

// ||gamma|| = sum over all entries of <gamma_i/m> minus 1; an integer in
// 0..r for tuples in D_{m,r}, kept as an exact rational
struct GammaNorm {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const GammaNorm&) const = default;
};

GammaNorm gamma_norm(const ExponentTuple& g);

// multiplicity of q^i in H^{2i}: the exact Tate-class dimension for
// semisimple Frobenius
long long tate_dim_exact(const Spectrum& s, unsigned i);

struct StableDim {
    long long dimension = 0;
    std::uint64_t extension = 1; // lcm of the per-class witnesses
};

// classes that become Tate after a finite extension, with the degree that
// realizes all of them
StableDim tate_dim_stable(const Spectrum& s, unsigned i);

// #I(i) for factors with all r_j odd: tuples (i_1..i_d), sum i, 0<=i_j<=min(r_j,i)
long long dim_case2(const std::vector<unsigned>& rs, unsigned i, bool allow_even_r = false,
                    const RunConfig& cfg = {});

// #I'(i) + sum over I''(i) of prod over middle factors of middle_dims[j];
// all r_j even, middle_dims indexed by factor position
long long dim_case3(const std::vector<unsigned>& rs, unsigned i,
                    const std::map<std::size_t, long long>& middle_dims,
                    const RunConfig& cfg = {});

// 1 + #{gamma : weil_number(gamma, a) = q^(r/2)}, r even
long long middle_tate_dim_exact(unsigned m, unsigned r, const Coefficients& a,
                                const FieldTable& t, const RunConfig& cfg = {});

// {gamma in D_{m,r} : sum over h in <p> of ||h t gamma|| = r*f/2 for all
// units t}, the large-q middle Tate classes beyond the hyperplane powers
std::set<ExponentTuple> stable_B(unsigned m, unsigned r, std::uint64_t p,
                                 const RunConfig& cfg = {});

struct SkEquivalence {
    bool pred_power_of_p = false; // some power of alpha is a power of p
    bool pred_norm = false;       // the ||.|| criterion
};

// both sides of the Shioda-Katsura dichotomy for the Fermat eigenvalue of
// gamma over GF(p^f), f = ord of p mod m
SkEquivalence sk_equivalence(const ExponentTuple& g, std::uint64_t p, const RunConfig& cfg = {});

struct ProductRationality {
    Int value;           // (prod alpha)^n
    std::uint64_t n = 1; // first exponent dividing lcm(2, level) that lands in Q
};

std::optional<ProductRationality> product_rationality(const std::vector<CycInt>& alphas);

struct PairingWitness {
    std::vector<std::size_t> order; // pairs (order[0],order[1]), (order[2],order[3]), ...
    std::uint64_t n = 1;
};

// perfect matching of 2i weight-1 values into pairs whose products are
// root-of-unity multiples of q; requires prod = q^i exactly
std::optional<PairingWitness> pairing_witness(const std::vector<CycInt>& alphas, const Int& q,
                                              unsigned i);

struct CaseEvidence {
    bool holds = false;
    std::string evidence; // human-readable witness of failure, empty when holds
};

struct ExternalAssumption {
    unsigned m = 0;
    unsigned r = 0;
    std::optional<long long> middle_dim_exact;  // over GF(p^f) when in budget
    std::optional<long long> stable_b_size;
};

struct CaseReport {
    std::uint64_t p = 0;
    std::vector<std::pair<unsigned, unsigned>> factors; // (m_j, r_j)
    bool all_r_one = false, all_r_odd = false, all_r_even = false;

    CaseEvidence case1a;             // at most one large-gcd partner per factor
    CaseEvidence case1b;             // Soule-style subset condition
    CaseEvidence case2_gcd;          // pairwise gcd <= 2
    std::map<unsigned, bool> order_parity; // m_j -> ord_p(m_j) odd
    CaseEvidence case2;              // gcd + all orders odd  (r_j all odd)
    CaseEvidence case3_gcd;
    std::vector<ExternalAssumption> case3_assumptions;
    CaseEvidence case4_gcd;
    CaseEvidence case4_order;        // orders odd for odd-r factors
    std::vector<ExternalAssumption> case4_assumptions;
};

CaseReport hypothesis_check(std::uint64_t p, const std::vector<std::pair<unsigned, unsigned>>& factors,
                            const RunConfig& cfg = {});

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

} // namespace fw
