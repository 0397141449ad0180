#include "fw/spectrum.hpp"

#include <algorithm>
#include <numeric>

namespace fw {

namespace {

Int int_pow(const Int& b, std::uint64_t e) {
    Int r = 1, x = b;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

void sort_degree(std::vector<Eigenvalue>& v) { std::sort(v.begin(), v.end(), eigenvalue_less); }

} // namespace

bool eigenvalue_less(const Eigenvalue& a, const Eigenvalue& b) {
    if (a.is_qpow != b.is_qpow) return a.is_qpow; // exact powers first
    if (a.is_qpow) return a.e < b.e;
    return CycInt::canonical_less(a.v, b.v);
}

Spectrum Spectrum::point(std::uint64_t q) {
    Spectrum s;
    s.q = q;
    s.dim = 0;
    s.h[0] = {Eigenvalue::qpow(0, 0)};
    return s;
}

Spectrum hypersurface_spectrum(unsigned m, unsigned r, const Coefficients& a, const FieldTable& t,
                               const RunConfig& cfg) {
    if ((t.q() - 1) % m != 0) throw domain_error("hypersurface_spectrum: m does not divide q-1");
    Coefficients coeff = a.a.empty() ? Coefficients::ones(r) : a;
    if (coeff.a.size() != r + 2) throw domain_error("coefficient count != r+2");

    Spectrum s;
    s.q = t.q();
    s.dim = int(r);
    for (unsigned i = 0; i <= 2 * r; i += 2)
        if (i != r) s.h[int(i)] = {Eigenvalue::qpow(i / 2, int(i))};

    std::vector<Eigenvalue>& mid = s.h[int(r)];
    if (r % 2 == 0) mid.push_back(Eigenvalue::qpow(r / 2, int(r))); // hyperplane class
    std::vector<ExponentTuple> tuples = exponent_tuples(m, r, cfg);
    std::vector<CycInt> jac = jacobi_map(t, tuples, cfg);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        std::uint64_t twist = 0;
        for (std::size_t k = 0; k < coeff.a.size(); ++k) {
            if (coeff.a[k] == 0) throw domain_error("zero coefficient");
            std::uint64_t d = t.dlog(coeff.a[k]) % m;
            twist = (twist + std::uint64_t(tuples[i].e[k]) * ((m - d) % m)) % m;
        }
        CycInt val = jac[i] * CycInt::root(m, twist);
        if (r % 2 == 1) val = -val;
        mid.push_back(Eigenvalue::cyc(std::move(val), int(r)));
    }
    if (mid.empty()) s.h.erase(int(r));
    else sort_degree(mid);
    return s;
}

namespace {

Eigenvalue eig_mul(const Eigenvalue& x, const Eigenvalue& y, std::uint64_t q) {
    int w = x.weight + y.weight;
    if (x.is_qpow && y.is_qpow) return Eigenvalue::qpow(x.e + y.e, w);
    if (x.is_qpow || y.is_qpow) {
        const Eigenvalue& pw = x.is_qpow ? x : y;
        const Eigenvalue& cy = x.is_qpow ? y : x;
        return Eigenvalue::cyc(cy.v * CycInt::integer(int_pow(Int(q), pw.e), cy.v.level()), w);
    }
    unsigned L = std::lcm(x.v.level(), y.v.level());
    return Eigenvalue::cyc(x.v.lift(L) * y.v.lift(L), w);
}

} // namespace

Spectrum product_spectrum(const std::vector<Spectrum>& specs) {
    if (specs.empty()) throw domain_error("product_spectrum: no factors");
    Spectrum acc = Spectrum::point(specs[0].q);
    for (const Spectrum& s : specs) {
        if (s.q != acc.q) throw domain_error("product_spectrum: mismatched q");
        Spectrum next;
        next.q = acc.q;
        next.dim = acc.dim + s.dim;
        for (const auto& [i, ei] : acc.h)
            for (const auto& [j, ej] : s.h) {
                std::vector<Eigenvalue>& out = next.h[i + j];
                for (const Eigenvalue& x : ei)
                    for (const Eigenvalue& y : ej) out.push_back(eig_mul(x, y, acc.q));
            }
        for (auto& [d, v] : next.h) sort_degree(v);
        acc = std::move(next);
    }
    return acc;
}

Int point_count(const Spectrum& s, unsigned n, const RunConfig& cfg) {
    (void)cfg;
    Int total = 0;
    unsigned L = 1;
    for (const auto& [d, v] : s.h)
        for (const Eigenvalue& ev : v)
            if (!ev.is_qpow) L = std::lcm(L, ev.v.level());
    CycInt cyc_total = CycInt::integer(0, L);
    for (const auto& [d, v] : s.h) {
        int sign = d % 2 == 0 ? 1 : -1;
        for (const Eigenvalue& ev : v) {
            if (ev.is_qpow) total += sign * int_pow(Int(s.q), ev.e * n);
            else {
                CycInt p = ev.v.pow(n).lift(L);
                cyc_total = sign > 0 ? cyc_total + p : cyc_total - p;
            }
        }
    }
    auto rat = cyc_total.as_rational_integer();
    if (!rat) throw std::logic_error("point_count: trace is not a rational integer");
    return total + *rat;
}

namespace {

// projective count of a_0 x_0^m + ... + a_{r+1} x_{r+1}^m = 0 over ext
Int count_hypersurface(const FieldTable& ext, unsigned m, const std::vector<std::uint32_t>& a,
                       const RunConfig& cfg) {
    std::uint64_t q = ext.q();
    if (double(q) * double(q) * double(a.size()) > double(cfg.max_ops))
        throw budget_error("brute_force_count over budget");
    // histogram h_i[c] = #{x in F_q : a_i x^m = c}, then convolve over the
    // additive group and read the count at 0
    std::vector<Int> dp(q, 0);
    dp[0] = 1;
    for (std::uint32_t ai : a) {
        std::vector<std::uint64_t> hist(q, 0);
        hist[0] += 1; // x = 0
        for (std::uint64_t e = 0; e < q - 1; ++e) {
            std::uint32_t val = ext.mul(ai, ext.exp(e * m % (q - 1)));
            hist[val] += 1;
        }
        std::vector<Int> nxt(q, 0);
        for (std::uint64_t c = 0; c < q; ++c) {
            if (dp[c] == 0) continue;
            for (std::uint64_t d = 0; d < q; ++d) {
                if (hist[d] == 0) continue;
                nxt[ext.add(std::uint32_t(c), std::uint32_t(d))] += dp[c] * hist[d];
            }
        }
        dp = std::move(nxt);
    }
    return (dp[0] - 1) / Int(q - 1);
}

} // namespace

Int brute_force_count(const std::vector<FactorSpec>& factors, const FieldTable& t, unsigned n,
                      const RunConfig& cfg) {
    FieldTable ext_store;
    const FieldTable* ext = &t;
    if (n > 1) {
        ext_store = build_field(t.p(), t.f() * n, cfg);
        ext = &ext_store;
    }
    Int total = 1;
    for (const FactorSpec& fs : factors) {
        Coefficients coeff = fs.a.a.empty() ? Coefficients::ones(fs.r) : fs.a;
        if (coeff.a.size() != fs.r + 2) throw domain_error("coefficient count != r+2");
        std::vector<std::uint32_t> emb;
        for (std::uint32_t c : coeff.a) {
            if (c == 0 || c >= t.q()) throw domain_error("coefficient not in k^x");
            emb.push_back(n > 1 ? embed_element(t, *ext, c) : c);
        }
        total *= count_hypersurface(*ext, fs.m, emb, cfg);
    }
    return total;
}

ZetaFunction zeta_rational(const Spectrum& s) {
    ZetaFunction z;
    z.q = s.q;
    for (const auto& [d, v] : s.h) {
        unsigned L = 1;
        for (const Eigenvalue& ev : v)
            if (!ev.is_qpow) L = std::lcm(L, ev.v.level());
        std::vector<CycInt> poly{CycInt::integer(1, L)};
        for (const Eigenvalue& ev : v) {
            CycInt alpha = ev.is_qpow ? CycInt::integer(int_pow(Int(s.q), ev.e), L)
                                      : ev.v.lift(L);
            std::vector<CycInt> nxt(poly.size() + 1, CycInt::integer(0, L));
            for (std::size_t i = 0; i < poly.size(); ++i) {
                nxt[i] = nxt[i] + poly[i];
                nxt[i + 1] = nxt[i + 1] - poly[i] * alpha;
            }
            poly = std::move(nxt);
        }
        std::vector<Int> coeffs;
        for (const CycInt& c : poly) {
            auto r = c.as_rational_integer();
            if (!r) throw std::logic_error("zeta_rational: non-integral coefficient");
            coeffs.push_back(*r);
        }
        z.P[d] = std::move(coeffs);
    }
    return z;
}

long long zeta_order(const Spectrum& s, unsigned a) {
    if (a % 2 != 0) return 0;
    auto it = s.h.find(int(a));
    if (it == s.h.end()) return 0;
    Int target = int_pow(Int(s.q), a / 2);
    long long mult = 0;
    for (const Eigenvalue& ev : it->second) {
        if (ev.is_qpow) {
            if (ev.e == a / 2) ++mult;
        } else {
            auto r = ev.v.as_rational_integer();
            if (r && *r == target) ++mult;
        }
    }
    return -mult; // (-1)^(a+1) with a even
}

long long zeta_s2(const Spectrum& s) {
    long long total = 0;
    for (unsigned a = 5; a <= unsigned(2 * s.dim); ++a) total += zeta_order(s, a);
    return total;
}

} // namespace fw
