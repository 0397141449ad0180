#include "fw/weil.hpp"

#include <numeric>
#include <sstream>
#include <thread>

namespace fw {

void ExponentTuple::validate() const {
    if (m < 1 || e.size() < 2) throw domain_error("malformed exponent tuple");
    std::uint64_t s = 0;
    for (unsigned g : e) {
        if (g == 0 || g >= m) throw domain_error("exponent tuple entry not in 1..m-1");
        s += g;
    }
    if (s % m != 0) throw domain_error("exponent tuple entries do not sum to 0 mod m");
}

ExponentTuple ExponentTuple::scaled(std::uint64_t t) const {
    if (std::gcd(t % m, std::uint64_t(m)) != 1) throw domain_error("scaled: gcd(t, m) != 1");
    ExponentTuple out{m, e};
    for (unsigned& g : out.e) g = unsigned(std::uint64_t(g) * t % m);
    return out;
}

std::string ExponentTuple::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
    return os.str();
}

void for_each_exponent_tuple(unsigned m, unsigned r, const RunConfig& cfg,
                             const std::function<void(const ExponentTuple&)>& fn) {
    if (m < 1) throw domain_error("m must be >= 1");
    if (m == 1) return; // no nonzero residues
    double cand = 1;
    for (unsigned i = 0; i <= r; ++i) cand *= (m - 1);
    if (cand > double(cfg.max_enum)) throw budget_error("exponent tuple enumeration over budget");

    // entries e[0..r] free in 1..m-1 (lexicographic), e[r+1] determined
    std::vector<unsigned> e(r + 2, 1);
    while (true) {
        std::uint64_t s = 0;
        for (unsigned i = 0; i <= r; ++i) s += e[i];
        unsigned last = unsigned((m - s % m) % m);
        if (last != 0) {
            e[r + 1] = last;
            fn(ExponentTuple{m, e});
        }
        unsigned i = r + 1;
        while (i-- > 0) {
            if (++e[i] < m) break;
            e[i] = 1;
            if (i == 0) return;
        }
    }
}

std::vector<ExponentTuple> exponent_tuples(unsigned m, unsigned r, const RunConfig& cfg) {
    std::vector<ExponentTuple> out;
    for_each_exponent_tuple(m, r, cfg, [&](const ExponentTuple& g) { out.push_back(g); });
    return out;
}

namespace {

CycInt from_root_counts(unsigned m, const std::vector<Int>& counts) {
    std::vector<Int> a = counts; // degree < m polynomial in zeta
    CycInt acc = CycInt::integer(0, m);
    // build via roots to reuse the reduction: sum counts[e] * zeta^e
    for (unsigned e = 0; e < m; ++e)
        if (a[e] != 0) acc = acc + CycInt::root(m, e) * CycInt::integer(a[e], m);
    return acc;
}

void check_jacobi_pre(const FieldTable& t, const ExponentTuple& g) {
    g.validate();
    if ((t.q() - 1) % g.m != 0) throw domain_error("jacobi: m does not divide q-1");
}

// J2(a, b) = sum_{u+v=1, u,v != 0} zeta^(a*dlog(u) + b*dlog(v)), a,b nonzero mod m
CycInt jacobi2(const FieldTable& t, unsigned m, unsigned a, unsigned b) {
    std::vector<Int> counts(m, 0);
    for (std::uint64_t e = 0; e < t.q() - 1; ++e) {
        std::uint32_t u = t.exp(e);
        std::uint32_t v = t.sub(1, u);
        if (v == 0) continue;
        counts[std::size_t((std::uint64_t(a) * (e % m) + std::uint64_t(b) * (t.dlog(v) % m)) % m)] +=
            1;
    }
    return from_root_counts(m, counts);
}

} // namespace

CycInt jacobi_direct(const FieldTable& t, const ExponentTuple& g, const RunConfig& cfg) {
    check_jacobi_pre(t, g);
    unsigned m = g.m;
    unsigned r = g.r();
    double cost = 1;
    for (unsigned i = 0; i < r; ++i) cost *= double(t.q());
    if (cost > double(cfg.max_ops)) throw budget_error("jacobi_direct over budget");

    std::vector<Int> counts(m, 0);
    // iterate v_1..v_r freely over k^x; v_{r+1} = -(1 + v_1 + ... + v_r)
    std::vector<std::uint64_t> idx(r, 0); // dlogs of the free variables
    while (true) {
        std::uint32_t s = 1;
        std::uint64_t chexp = 0;
        for (unsigned i = 0; i < r; ++i) {
            std::uint32_t v = t.exp(idx[i]);
            s = t.add(s, v);
            chexp += std::uint64_t(g.e[i + 1]) * (idx[i] % m);
        }
        std::uint32_t vlast = t.neg(s);
        if (vlast != 0) {
            chexp += std::uint64_t(g.e[r + 1]) * (t.dlog(vlast) % m);
            counts[std::size_t(chexp % m)] += 1;
        }
        if (r == 0) break;
        unsigned i = r;
        bool done = false;
        while (i-- > 0) {
            if (++idx[i] < t.q() - 1) break;
            idx[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return from_root_counts(m, counts);
}

CycInt jacobi_fast(const FieldTable& t, const ExponentTuple& g, const RunConfig& cfg) {
    check_jacobi_pre(t, g);
    unsigned m = g.m;
    unsigned r = g.r();
    if (r <= 1) return jacobi_direct(t, g, cfg);

    // partial sums s_i = g_1 + ... + g_i mod m must stay nonzero for the
    // telescoping into 2-variable sums; otherwise fall back to direct
    std::vector<unsigned> s(r + 2, 0);
    s[1] = g.e[1];
    for (unsigned i = 2; i <= r; ++i) {
        s[i] = unsigned((std::uint64_t(s[i - 1]) + g.e[i]) % m);
        if (s[i] == 0) return jacobi_direct(t, g, cfg);
    }

    // j(gamma) = chi(-1)^(g_1+...+g_{r+1}) * J(chi^g1, ..., chi^g_{r+1}) with
    // J over u_1+...+u_{r+1} = 1, and J telescopes into products of J2
    CycInt J = jacobi2(t, m, g.e[1], g.e[2]);
    for (unsigned i = 3; i <= r + 1; ++i) J = J * jacobi2(t, m, s[i - 1], g.e[i]);
    std::uint64_t neg1 = (t.q() % 2 == 0) ? 0 : ((t.q() - 1) / 2) % m; // dlog(-1) mod m
    std::uint64_t twist = neg1 * ((m - g.e[0]) % m) % m;
    return J * CycInt::root(m, twist);
}

CycInt weil_number(const FieldTable& t, const ExponentTuple& g, const Coefficients& a,
                   const RunConfig& cfg) {
    check_jacobi_pre(t, g);
    if (a.a.size() != g.e.size()) throw domain_error("coefficient count != r+2");
    unsigned m = g.m;
    std::uint64_t twist = 0;
    for (std::size_t i = 0; i < a.a.size(); ++i) {
        if (a.a[i] == 0) throw domain_error("zero coefficient");
        // conj(chi)(a_i)^{g_i} = zeta^(-g_i * dlog(a_i))
        std::uint64_t d = t.dlog(a.a[i]) % m;
        twist = (twist + std::uint64_t(g.e[i]) * ((m - d) % m)) % m;
    }
    CycInt val = jacobi_fast(t, g, cfg) * CycInt::root(m, twist);
    return (g.r() % 2 == 1) ? -val : val;
}

std::vector<CycInt> jacobi_map(const FieldTable& t, const std::vector<ExponentTuple>& gs,
                               const RunConfig& cfg) {
    std::vector<CycInt> out(gs.size());
    int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1 || gs.size() < 2) {
        for (std::size_t i = 0; i < gs.size(); ++i) out[i] = jacobi_fast(t, gs[i], cfg);
        return out;
    }
    for (const ExponentTuple& g : gs) prewarm_cyclotomic(g.m);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < gs.size();)
                out[i] = jacobi_fast(t, gs[i], cfg);
        });
    for (auto& th : pool) th.join();
    return out;
}

} // namespace fw
