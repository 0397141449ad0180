#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fw {

// Thrown when an input violates a mathematical precondition.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a computation would exceed a configured resource budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t max_q = std::uint64_t(1) << 24;    // field size cap
    std::uint64_t max_enum = std::uint64_t(1) << 22; // exponent-tuple candidates
    std::uint64_t max_ops = std::uint64_t(1) << 28;  // brute-force / jacobi work cap
    int max_d = 16;                                  // subset loop cap in the checker
    int threads = 1;                                 // data-parallelism hint
};

struct FieldSpec {
    std::uint64_t p = 0; // characteristic, prime
    unsigned f = 0;      // extension degree
    std::uint64_t q = 0; // p^f
};

// chi^a where chi is the fixed character of exact order m with chi(g) = zeta_m.
struct CharacterIndex {
    std::uint64_t m = 1;
    std::uint64_t a = 1;
};

bool is_prime(std::uint64_t n);

// GF(p^f) with a full discrete-log table. Elements are indices in 0..q-1:
// for f=1 the residue mod p, for f>1 the base-p digit encoding of the
// coefficient vector in the polynomial basis mod the chosen irreducible.
// Immutable after construction; all member functions are const reads.
class FieldTable {
  public:
    const FieldSpec& spec() const { return spec_; }
    std::uint64_t p() const { return spec_.p; }
    unsigned f() const { return spec_.f; }
    std::uint64_t q() const { return spec_.q; }
    std::uint32_t generator() const { return gen_; }

    // modulus polynomial coefficients c_0..c_f (monic); empty for f=1
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    std::uint64_t dlog(std::uint32_t x) const {
        if (x == 0 || x >= spec_.q) throw domain_error("dlog: element out of k^x");
        return dlog_[x];
    }
    std::uint32_t exp(std::uint64_t e) const { return exp_[e % (spec_.q - 1)]; }

    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        if (x == 0 || y == 0) return 0;
        return exp_[(dlog_[x] + dlog_[y]) % (spec_.q - 1)];
    }
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t neg(std::uint32_t x) const;
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }
    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t x) const {
        if (x == 0) throw domain_error("inv(0)");
        return exp_[(spec_.q - 1 - dlog_[x]) % (spec_.q - 1)];
    }
    std::uint32_t one() const { return 1; }

    // exponent e with chi^a(x) = zeta_m^e, i.e. a*dlog(x) mod m
    std::uint64_t char_exponent(const CharacterIndex& c, std::uint32_t x) const;

    friend FieldTable detail_build_table(std::uint64_t p, unsigned f, std::uint32_t gen,
                                         std::vector<std::uint32_t> mod, const RunConfig& cfg,
                                         bool search_gen);
    friend std::optional<FieldTable> load_field_cache(const std::string& path);
    friend void save_field_cache(const FieldTable& t, const std::string& path);

  private:
    FieldSpec spec_;
    std::uint32_t gen_ = 0;
    std::vector<std::uint32_t> mod_;  // monic irreducible, f>1 only
    std::vector<std::uint32_t> exp_;  // exp_[e] = g^e, size q-1
    std::vector<std::uint32_t> dlog_; // dlog_[x], size q (index 0 unused)
};

FieldTable build_field(std::uint64_t p, unsigned f, const RunConfig& cfg = {});

// Same field, but with a caller-chosen primitive element (validated).
FieldTable build_field_with_generator(std::uint64_t p, unsigned f, std::uint32_t gen,
                                      const RunConfig& cfg = {});

// Binary dlog cache. Returns nullopt if the file is missing or malformed.
std::optional<FieldTable> load_field_cache(const std::string& path);
void save_field_cache(const FieldTable& t, const std::string& path);

// Image of x under the unique-up-to-Frobenius embedding of base into ext that
// sends base.generator() to a root of its minimal polynomial. ext must be
// GF(p^(f*n)) over the same p.
std::uint32_t embed_element(const FieldTable& base, const FieldTable& ext, std::uint32_t x);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

} // namespace fw
