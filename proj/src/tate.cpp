#include "fw/tate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

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

} // namespace

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 1;
    a %= m;
    if (std::gcd(a, m) != 1) throw domain_error("multiplicative_order: gcd(a, m) != 1");
    std::uint64_t ord = 1, x = a;
    while (x != 1) {
        x = x * a % m;
        ++ord;
    }
    return ord;
}

GammaNorm gamma_norm(const ExponentTuple& g) {
    g.validate();
    // entries are already reduced to 1..m-1, so <g_i/m> = g_i/m
    std::int64_t num = -std::int64_t(g.m);
    for (unsigned e : g.e) num += e;
    std::int64_t d = std::gcd(std::abs(num), std::int64_t(g.m));
    return {num / d, std::int64_t(g.m) / d};
}

long long tate_dim_exact(const Spectrum& s, unsigned i) {
    auto it = s.h.find(int(2 * i));
    if (it == s.h.end()) return 0;
    Int target = int_pow(Int(s.q), i);
    long long n = 0;
    for (const Eigenvalue& ev : it->second) {
        if (ev.is_qpow) n += (ev.e == i) ? 1 : 0;
        else {
            auto r = ev.v.as_rational_integer();
            if (r && *r == target) ++n;
        }
    }
    return n;
}

StableDim tate_dim_stable(const Spectrum& s, unsigned i) {
    auto it = s.h.find(int(2 * i));
    if (it == s.h.end()) return {0, 1};
    StableDim out;
    for (const Eigenvalue& ev : it->second) {
        if (ev.is_qpow) {
            if (ev.e == i) {
                ++out.dimension;
            }
            continue;
        }
        auto wit = power_rationality(ev.v, 2 * i, Int(s.q));
        if (wit.n) {
            ++out.dimension;
            out.extension = std::lcm(out.extension, *wit.n);
        }
    }
    return out;
}

namespace {

template <class Fn>
void for_each_index_tuple(const std::vector<unsigned>& rs, unsigned i, Fn&& fn) {
    std::vector<unsigned> idx(rs.size(), 0);
    // bounded tuples with sum i, 0 <= i_j <= min(r_j, i)
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t j, unsigned left) {
        if (j == rs.size()) {
            if (left == 0) fn(idx);
            return;
        }
        unsigned hi = std::min(rs[j], i);
        for (unsigned v = 0; v <= hi && v <= left; ++v) {
            idx[j] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, i);
}

} // namespace

long long dim_case2(const std::vector<unsigned>& rs, unsigned i, bool allow_even_r,
                    const RunConfig& cfg) {
    if (rs.size() > std::size_t(cfg.max_d)) throw budget_error("dim_case2: too many factors");
    if (!allow_even_r)
        for (unsigned r : rs)
            if (r % 2 == 0) throw domain_error("dim_case2 requires odd r_j (pass the override)");
    long long n = 0;
    for_each_index_tuple(rs, i, [&](const std::vector<unsigned>&) { ++n; });
    return n;
}

long long dim_case3(const std::vector<unsigned>& rs, unsigned i,
                    const std::map<std::size_t, long long>& middle_dims, const RunConfig& cfg) {
    if (rs.size() > std::size_t(cfg.max_d)) throw budget_error("dim_case3: too many factors");
    for (unsigned r : rs)
        if (r % 2 != 0) throw domain_error("dim_case3 requires even r_j");
    long long total = 0;
    for_each_index_tuple(rs, i, [&](const std::vector<unsigned>& idx) {
        long long prod = 1;
        bool middle = false;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (2 * idx[j] == rs[j]) {
                middle = true;
                auto it = middle_dims.find(j);
                if (it == middle_dims.end())
                    throw domain_error("dim_case3: missing middle dimension for factor " +
                                       std::to_string(j));
                prod *= it->second;
            }
        }
        total += middle ? prod : 1;
    });
    return total;
}

long long middle_tate_dim_exact(unsigned m, unsigned r, const Coefficients& a, const FieldTable& t,
                                const RunConfig& cfg) {
    if (r % 2 != 0) throw domain_error("middle_tate_dim_exact requires even r");
    if ((t.q() - 1) % m != 0) throw domain_error("middle_tate_dim_exact: m does not divide q-1");
    Coefficients coeff = a.a.empty() ? Coefficients::ones(r) : a;
    Int target = int_pow(Int(t.q()), r / 2);
    long long n = 1; // the hyperplane class
    for (const ExponentTuple& g : exponent_tuples(m, r, cfg)) {
        auto rat = weil_number(t, g, coeff, cfg).as_rational_integer();
        if (rat && *rat == target) ++n;
    }
    return n;
}

std::set<ExponentTuple> stable_B(unsigned m, unsigned r, std::uint64_t p, const RunConfig& cfg) {
    if (std::gcd(p % m == 0 ? m : p % m, std::uint64_t(m)) != 1 && m > 1)
        throw domain_error("stable_B: gcd(p, m) != 1");
    std::set<ExponentTuple> out;
    if (m == 1) return out;
    // H = <p> in (Z/m)^x, f = |H|
    std::vector<std::uint64_t> H;
    std::uint64_t x = p % m;
    do {
        H.push_back(x);
        x = x * (p % m) % m;
    } while (x != p % m);
    std::uint64_t f = H.size();
    // criterion: sum over h in H of ||h t gamma|| == r f / 2 for every unit t
    for (const ExponentTuple& g : exponent_tuples(m, r, cfg)) {
        bool ok = true;
        for (std::uint64_t t = 1; t < m && ok; ++t) {
            if (std::gcd(t, std::uint64_t(m)) != 1) continue;
            std::int64_t num2 = 0; // accumulated 2 * sum ||.||, exact
            for (std::uint64_t h : H) {
                GammaNorm nm = gamma_norm(g.scaled(h * t % m));
                num2 += 2 * nm.num / nm.den; // ||.|| is an integer here
            }
            if (num2 != std::int64_t(r) * std::int64_t(f)) ok = false;
        }
        if (ok) out.insert(g);
    }
    return out;
}

SkEquivalence sk_equivalence(const ExponentTuple& g, std::uint64_t p, const RunConfig& cfg) {
    g.validate();
    unsigned m = g.m;
    if (m > 1 && std::gcd(p % m, std::uint64_t(m)) != 1)
        throw domain_error("sk_equivalence: gcd(p, m) != 1");
    std::uint64_t f = multiplicative_order(p, m);
    FieldTable t = build_field(p, unsigned(f), cfg);
    CycInt alpha = weil_number(t, g, Coefficients::ones(g.r()), cfg);
    SkEquivalence out;
    out.pred_power_of_p = power_rationality(alpha, g.r(), Int(t.q())).n.has_value();
    out.pred_norm = stable_B(m, g.r(), p, cfg).count(g) > 0;
    return out;
}

std::optional<ProductRationality> product_rationality(const std::vector<CycInt>& alphas) {
    unsigned L = 1;
    for (const CycInt& a : alphas) L = std::lcm(L, a.level());
    CycInt prod = CycInt::integer(1, L);
    for (const CycInt& a : alphas) prod = prod * a.lift(L);
    std::uint64_t bound = std::lcm<std::uint64_t>(2, L);
    std::vector<std::uint64_t> divs;
    for (std::uint64_t n = 1; n <= bound; ++n)
        if (bound % n == 0) divs.push_back(n);
    for (std::uint64_t n : divs) {
        auto rat = prod.pow(n).as_rational_integer();
        if (rat) return ProductRationality{*rat, n};
    }
    return std::nullopt;
}

namespace {

// all ways to pair up indices 0..2i-1, lexicographically by the pairing list
template <class Fn>
bool for_each_matching(std::vector<std::size_t>& free, std::vector<std::size_t>& cur, Fn&& fn) {
    if (free.empty()) return fn(cur);
    std::size_t a = free.front();
    for (std::size_t k = 1; k < free.size(); ++k) {
        std::size_t b = free[k];
        std::vector<std::size_t> rest;
        for (std::size_t x : free)
            if (x != a && x != b) rest.push_back(x);
        cur.push_back(a);
        cur.push_back(b);
        if (for_each_matching(rest, cur, fn)) return true;
        cur.pop_back();
        cur.pop_back();
    }
    return false;
}

} // namespace

std::optional<PairingWitness> pairing_witness(const std::vector<CycInt>& alphas, const Int& q,
                                              unsigned i) {
    if (alphas.size() != 2 * std::size_t(i)) throw domain_error("pairing_witness: need 2i values");
    unsigned L = 1;
    for (const CycInt& a : alphas) L = std::lcm(L, a.level());
    CycInt prod = CycInt::integer(1, L);
    for (const CycInt& a : alphas) prod = prod * a.lift(L);
    if (prod != CycInt::integer(int_pow(q, i), L))
        throw domain_error("pairing_witness: product != q^i");

    std::vector<std::size_t> free(alphas.size());
    std::iota(free.begin(), free.end(), 0);
    std::vector<std::size_t> cur;
    std::optional<PairingWitness> found;
    for_each_matching(free, cur, [&](const std::vector<std::size_t>& pairing) {
        std::uint64_t n = 1;
        for (std::size_t k = 0; k + 1 < pairing.size(); k += 2) {
            unsigned lv = std::lcm(alphas[pairing[k]].level(), alphas[pairing[k + 1]].level());
            CycInt pr = alphas[pairing[k]].lift(lv) * alphas[pairing[k + 1]].lift(lv);
            auto wit = power_rationality(pr, 2, q);
            if (!wit.n) return false;
            n = std::lcm(n, *wit.n);
        }
        found = PairingWitness{pairing, n};
        return true;
    });
    return found;
}

namespace {

std::string pair_str(unsigned a, unsigned b) {
    std::ostringstream os;
    os << "(" << a << "," << b << ")";
    return os.str();
}

} // namespace

CaseReport hypothesis_check(std::uint64_t p,
                            const std::vector<std::pair<unsigned, unsigned>>& factors,
                            const RunConfig& cfg) {
    CaseReport rep;
    rep.p = p;
    rep.factors = factors;
    std::size_t d = factors.size();
    if (d == 0) throw domain_error("hypothesis_check: no factors");
    if (d > std::size_t(cfg.max_d)) throw budget_error("hypothesis_check: too many factors");
    for (auto [m, r] : factors) {
        if (m > 1 && std::gcd(p % m, std::uint64_t(m)) != 1)
            throw domain_error("hypothesis_check: gcd(p, m_j) != 1 for m=" + std::to_string(m));
        if (r == 0) throw domain_error("hypothesis_check: r_j must be positive");
    }
    rep.all_r_one = std::all_of(factors.begin(), factors.end(),
                                [](auto f) { return f.second == 1; });
    rep.all_r_odd = std::all_of(factors.begin(), factors.end(),
                                [](auto f) { return f.second % 2 == 1; });
    rep.all_r_even = std::all_of(factors.begin(), factors.end(),
                                 [](auto f) { return f.second % 2 == 0; });

    // pairwise gcd condition, shared by cases 2(i), 3(i), 4(i)
    CaseEvidence gcd_ok{true, ""};
    for (std::size_t j = 0; j < d && gcd_ok.holds; ++j)
        for (std::size_t k = j + 1; k < d; ++k)
            if (std::gcd(factors[j].first, factors[k].first) > 2) {
                gcd_ok = {false, "gcd(m_" + std::to_string(j) + ", m_" + std::to_string(k) +
                                     ") = " +
                                     std::to_string(std::gcd(factors[j].first, factors[k].first)) +
                                     " > 2 for " +
                                     pair_str(factors[j].first, factors[k].first)};
                break;
            }

    // (1a): at most one large-gcd partner per index
    rep.case1a.holds = true;
    for (std::size_t j = 0; j < d && rep.case1a.holds; ++j) {
        std::vector<std::size_t> partners;
        for (std::size_t k = 0; k < d; ++k)
            if (k != j && std::gcd(factors[j].first, factors[k].first) > 2) partners.push_back(k);
        if (partners.size() > 1)
            rep.case1a = {false, "factor " + std::to_string(j) + " (m=" +
                                     std::to_string(factors[j].first) + ") has partners m=" +
                                     std::to_string(factors[partners[0]].first) + " and m=" +
                                     std::to_string(factors[partners[1]].first)};
    }

    // per-m multiplicative order parity
    for (auto [m, r] : factors)
        rep.order_parity[m] = multiplicative_order(p, m) % 2 == 1;

    // (1b): for every even j in 4..d and every size-j subset, some index a has
    // gcd <= 2 against the rest of the subset and odd order
    rep.case1b.holds = true;
    for (unsigned jsz = 4; jsz <= d && rep.case1b.holds; jsz += 2) {
        std::vector<std::size_t> sel(jsz);
        std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                                std::size_t start) -> bool {
            if (pos == jsz) {
                for (std::size_t a = 0; a < jsz; ++a) {
                    bool ok = rep.order_parity.at(factors[sel[a]].first);
                    for (std::size_t b = 0; b < jsz && ok; ++b)
                        if (b != a && std::gcd(factors[sel[a]].first, factors[sel[b]].first) > 2)
                            ok = false;
                    if (ok) return true;
                }
                std::ostringstream os;
                os << "j=" << jsz << " subset {";
                for (std::size_t b = 0; b < jsz; ++b) os << (b ? "," : "") << sel[b];
                os << "} has no admissible index";
                rep.case1b = {false, os.str()};
                return false;
            }
            for (std::size_t v = start; v < d; ++v) {
                sel[pos] = v;
                if (!rec(pos + 1, v + 1)) return false;
            }
            return true;
        };
        rec(0, 0);
    }

    rep.case2_gcd = gcd_ok;
    rep.case2.holds = gcd_ok.holds;
    rep.case2.evidence = gcd_ok.evidence;
    for (auto [m, r] : factors)
        if (!rep.order_parity[m]) {
            rep.case2.holds = false;
            rep.case2.evidence = "ord_p mod " + std::to_string(m) + " = " +
                                 std::to_string(multiplicative_order(p, m)) + " is even";
            break;
        }

    auto make_assumption = [&](unsigned m, unsigned r) {
        ExternalAssumption ea;
        ea.m = m;
        ea.r = r;
        try {
            std::uint64_t f = multiplicative_order(p, m);
            FieldTable t = build_field(p, unsigned(f), cfg);
            ea.middle_dim_exact = middle_tate_dim_exact(m, r, Coefficients::ones(r), t, cfg);
        } catch (const budget_error&) {
        }
        try {
            ea.stable_b_size = (long long)stable_B(m, r, p, cfg).size();
        } catch (const budget_error&) {
        }
        return ea;
    };

    rep.case3_gcd = gcd_ok;
    rep.case4_gcd = gcd_ok;
    for (auto [m, r] : factors)
        if (r % 2 == 0) {
            rep.case3_assumptions.push_back(make_assumption(m, r));
            rep.case4_assumptions.push_back(make_assumption(m, r));
        }
    rep.case4_order.holds = true;
    for (auto [m, r] : factors)
        if (r % 2 == 1 && !rep.order_parity[m]) {
            rep.case4_order = {false, "ord_p mod " + std::to_string(m) + " = " +
                                          std::to_string(multiplicative_order(p, m)) +
                                          " is even for odd-r factor"};
            break;
        }
    return rep;
}

} // namespace fw
