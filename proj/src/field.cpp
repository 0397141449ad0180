#include "fw/field.hpp"

#include <algorithm>
#include <numeric>
#include <cstring>
#include <fstream>

namespace fw {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

using Poly = std::vector<std::uint32_t>; // coefficients over GF(p), low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
    Poly r(a.size() + b.size() > 0 ? a.size() + b.size() - 1 : 0, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = std::uint32_t((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    // mod is monic of degree deg = mod.size()-1
    std::size_t deg = mod.size() - 1;
    for (std::size_t i = r.size(); i-- > deg;) {
        std::uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (std::size_t j = 0; j < deg; ++j) {
            std::uint64_t t = std::uint64_t(mod[j]) * c % p;
            r[i - deg + j] = std::uint32_t((r[i - deg + j] + p - t) % p);
        }
    }
    r.resize(deg, 0);
    return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint64_t p) {
    Poly r{1};
    r.resize(mod.size() - 1, 0);
    base.resize(mod.size() - 1, 0);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) { // b nonzero, not assumed monic
    trim(a);
    Poly bb = b;
    trim(bb);
    std::uint64_t lead = bb.back();
    // invert lead mod p
    std::uint64_t inv = 1, base = lead, e = p - 2;
    while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    while (a.size() >= bb.size()) {
        std::uint64_t c = std::uint64_t(a.back()) * inv % p;
        std::size_t off = a.size() - bb.size();
        for (std::size_t j = 0; j < bb.size(); ++j)
            a[off + j] = std::uint32_t((a[off + j] + p - c * bb[j] % p) % p);
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool poly_irreducible(const Poly& mod, std::uint64_t p) {
    unsigned f = unsigned(mod.size() - 1);
    // x^(p^f) == x mod (mod), and gcd(x^(p^(f/s)) - x, mod) == 1 for prime s | f
    Poly x{0, 1};
    x.resize(f, 0);
    Poly t = x;
    std::vector<Poly> frob(f + 1); // frob[k] = x^(p^k) mod
    frob[0] = x;
    for (unsigned k = 1; k <= f; ++k) {
        t = poly_powmod(t, p, mod, p);
        frob[k] = t;
    }
    Poly diff = frob[f];
    for (std::size_t i = 0; i < x.size(); ++i)
        diff[i] = std::uint32_t((diff[i] + p - x[i]) % p);
    Poly d = diff;
    trim(d);
    if (!d.empty()) return false;
    for (std::uint64_t s : prime_factors(f)) {
        Poly g = frob[f / s];
        for (std::size_t i = 0; i < x.size(); ++i)
            g[i] = std::uint32_t((g[i] + p - x[i]) % p);
        Poly gc = poly_gcd(g, mod, p);
        if (!(gc.size() == 1)) return false;
    }
    return true;
}

std::uint32_t encode(const Poly& a, std::uint64_t p, unsigned f) {
    std::uint64_t v = 0;
    for (unsigned i = f; i-- > 0;) v = v * p + (i < a.size() ? a[i] : 0);
    return std::uint32_t(v);
}

Poly decode(std::uint32_t x, std::uint64_t p, unsigned f) {
    Poly a(f, 0);
    for (unsigned i = 0; i < f; ++i) {
        a[i] = std::uint32_t(x % p);
        x = std::uint32_t(x / p);
    }
    return a;
}

// multiplication by element index without the dlog table (construction time)
std::uint32_t raw_mul(std::uint32_t x, std::uint32_t y, const Poly& mod, std::uint64_t p,
                      unsigned f) {
    if (f == 1) return std::uint32_t(std::uint64_t(x) * y % p);
    Poly r = poly_mulmod(decode(x, p, f), decode(y, p, f), mod, p);
    return encode(r, p, f);
}

std::uint32_t raw_pow(std::uint32_t x, std::uint64_t e, const Poly& mod, std::uint64_t p,
                      unsigned f) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = raw_mul(r, x, mod, p, f);
        x = raw_mul(x, x, mod, p, f);
        e >>= 1;
    }
    return r;
}

Poly find_irreducible(std::uint64_t p, unsigned f) {
    // monic x^f + sum c_i x^i; smallest (c_0,...,c_{f-1}) in element-index order
    std::uint64_t pf = 1;
    for (unsigned i = 0; i < f; ++i) pf *= p;
    for (std::uint64_t v = 0; v < pf; ++v) {
        if (v % p == 0) continue; // zero constant term is reducible
        Poly mod = decode(std::uint32_t(v), p, f);
        mod.push_back(1);
        if (poly_irreducible(mod, p)) return mod;
    }
    throw std::logic_error("no irreducible polynomial found"); // impossible
}

} // namespace

FieldTable detail_build_table(std::uint64_t p, unsigned f, std::uint32_t gen, Poly mod,
                              const RunConfig& cfg, bool search_gen) {
    if (!is_prime(p)) throw domain_error("p is not prime");
    if (f == 0) throw domain_error("extension degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < f; ++i) {
        if (q > cfg.max_q / p) throw budget_error("field size exceeds budget");
        q *= p;
    }
    if (q > cfg.max_q) throw budget_error("field size exceeds budget");

    FieldTable t;
    t.spec_ = {p, f, q};
    if (f > 1 && mod.empty()) mod = find_irreducible(p, f);
    if (f > 1) t.mod_ = mod;

    auto order_ok = [&](std::uint32_t c) {
        if (c == 0) return false;
        for (std::uint64_t ell : prime_factors(q - 1))
            if (raw_pow(c, (q - 1) / ell, mod, p, f) == 1) return false;
        return true;
    };
    if (search_gen) {
        gen = 0;
        for (std::uint32_t c = 1; c < q; ++c)
            if (q == 2 ? c == 1 : order_ok(c)) {
                gen = c;
                break;
            }
        if (gen == 0) throw std::logic_error("no generator found");
    } else {
        if (!(q == 2 ? gen == 1 : order_ok(gen)))
            throw domain_error("supplied element is not a generator");
    }
    t.gen_ = gen;
    t.exp_.resize(q - 1);
    t.dlog_.assign(q, 0);
    std::uint32_t x = 1;
    for (std::uint64_t e = 0; e < q - 1; ++e) {
        t.exp_[e] = x;
        t.dlog_[x] = std::uint32_t(e);
        x = raw_mul(x, gen, mod, p, f);
    }
    return t;
}

FieldTable build_field(std::uint64_t p, unsigned f, const RunConfig& cfg) {
    return detail_build_table(p, f, 0, {}, cfg, true);
}

FieldTable build_field_with_generator(std::uint64_t p, unsigned f, std::uint32_t gen,
                                      const RunConfig& cfg) {
    return detail_build_table(p, f, gen, {}, cfg, false);
}

std::uint32_t FieldTable::add(std::uint32_t x, std::uint32_t y) const {
    std::uint64_t p = spec_.p;
    if (spec_.f == 1) return std::uint32_t((std::uint64_t(x) + y) % p);
    std::uint64_t r = 0, mul = 1;
    for (unsigned i = 0; i < spec_.f; ++i) {
        r += (x % p + y % p) % p * mul;
        x = std::uint32_t(x / p);
        y = std::uint32_t(y / p);
        mul *= p;
    }
    return std::uint32_t(r);
}

std::uint32_t FieldTable::neg(std::uint32_t x) const {
    std::uint64_t p = spec_.p;
    if (spec_.f == 1) return std::uint32_t((p - x) % p);
    std::uint64_t r = 0, mul = 1;
    for (unsigned i = 0; i < spec_.f; ++i) {
        r += (p - x % p) % p * mul;
        x = std::uint32_t(x / p);
        mul *= p;
    }
    return std::uint32_t(r);
}

std::uint32_t FieldTable::pow(std::uint32_t x, std::uint64_t e) const {
    if (x == 0) return e == 0 ? 1 : 0;
    return exp_[std::uint64_t(dlog_[x]) * (e % (spec_.q - 1)) % (spec_.q - 1)];
}

std::uint64_t FieldTable::char_exponent(const CharacterIndex& c, std::uint32_t x) const {
    if (c.m == 0 || (spec_.q - 1) % c.m != 0) throw domain_error("character order must divide q-1");
    if (x == 0 || x >= spec_.q) throw domain_error("character of 0");
    return c.a % c.m * (dlog_[x] % c.m) % c.m;
}

namespace {
void put_u32(std::ofstream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<char*>(b), 4);
}
std::uint32_t get_u32(std::ifstream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}
} // namespace

void save_field_cache(const FieldTable& t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open cache file for writing: " + path);
    os.write("FWT1", 4);
    put_u32(os, std::uint32_t(t.p()));
    put_u32(os, t.f());
    put_u32(os, t.generator());
    for (std::uint64_t x = 1; x < t.q(); ++x) {
        std::uint64_t e = t.dlog_[x];
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = (e >> (8 * i)) & 0xff;
        os.write(reinterpret_cast<char*>(b), 8);
    }
}

std::optional<FieldTable> load_field_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "FWT1", 4) != 0) return std::nullopt;
    std::uint64_t p = get_u32(is);
    unsigned f = get_u32(is);
    std::uint32_t gen = get_u32(is);
    if (!is || !is_prime(p) || f == 0) return std::nullopt;
    FieldTable t;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < f; ++i) q *= p;
    t.spec_ = {p, f, q};
    t.gen_ = gen;
    if (f > 1) {
        // the modulus is recomputed; construction is deterministic
        t.mod_.clear();
        try {
            t.mod_ = find_irreducible(p, f);
        } catch (...) {
            return std::nullopt;
        }
    }
    t.exp_.resize(q - 1);
    t.dlog_.assign(q, 0);
    for (std::uint64_t x = 1; x < q; ++x) {
        unsigned char b[8];
        is.read(reinterpret_cast<char*>(b), 8);
        if (!is) return std::nullopt;
        std::uint64_t e = 0;
        for (int i = 0; i < 8; ++i) e |= std::uint64_t(b[i]) << (8 * i);
        if (e >= q - 1) return std::nullopt;
        t.dlog_[x] = std::uint32_t(e);
        t.exp_[e] = std::uint32_t(x);
    }
    if (t.dlog_[gen] != 1 && q > 2) return std::nullopt;
    return t;
}

std::uint32_t embed_element(const FieldTable& base, const FieldTable& ext, std::uint32_t x) {
    if (base.p() != ext.p() || ext.f() % base.f() != 0)
        throw domain_error("embed: not an extension of the base field");
    if (x == 0) return 0;
    if (base.q() == ext.q()) return x;
    std::uint64_t p = base.p();
    // minimal polynomial of g over GF(p): prod over the Frobenius orbit
    std::uint32_t g = base.generator();
    std::vector<std::uint32_t> orbit;
    std::uint32_t c = g;
    do {
        orbit.push_back(c);
        c = base.pow(c, p);
    } while (c != g);
    // beta must be a root in ext of prod (X - g^(p^i)); candidates are the
    // elements of multiplicative order q-1
    std::uint64_t step = (ext.q() - 1) / (base.q() - 1);
    for (std::uint64_t k = 1; k < base.q() - 1 || base.q() == 2; ++k) {
        if (base.q() > 2 && std::gcd(k, base.q() - 1) != 1) continue;
        std::uint32_t beta = ext.exp(k * step);
        // check min poly: evaluate prod (beta - embed-ignored...), instead test
        // that beta satisfies the same additive relations: compare the minimal
        // polynomial coefficients over GF(p)
        // min poly of g in base: expand prod (X - orbit[i]) with coefficients in GF(p)
        std::vector<std::uint32_t> coeffs{1}; // in base field
        for (std::uint32_t rt : orbit) {
            std::vector<std::uint32_t> next(coeffs.size() + 1, 0);
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] = base.add(next[i + 1], coeffs[i]);
                next[i] = base.add(next[i], base.mul(base.neg(rt), coeffs[i]));
            }
            coeffs = std::move(next);
        }
        // coefficients lie in GF(p) (indices < p in both encodings)
        std::uint32_t acc = 0, bp = 1;
        bool ok = true;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] >= p) {
                ok = false;
                break;
            }
        }
        if (!ok) throw std::logic_error("minimal polynomial not over prime field");
        // evaluate at beta inside ext
        acc = 0;
        bp = 1;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            acc = ext.add(acc, ext.mul(std::uint32_t(coeffs[i]), bp));
            bp = ext.mul(bp, beta);
        }
        if (acc == 0) return ext.pow(beta, base.dlog(x));
        if (base.q() == 2) break;
    }
    throw std::logic_error("no embedding root found");
}

} // namespace fw
