#include "fw/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace fw {

unsigned euler_phi(unsigned m) {
    unsigned r = m;
    for (unsigned d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            r -= r / d;
            while (m % d == 0) m /= d;
        }
    if (m > 1) r -= r / m;
    return r;
}

namespace {

std::map<unsigned, std::vector<Int>> g_phi_cache;
std::mutex g_phi_mutex;

// exact division of polynomials with integer coefficients, b monic
std::vector<Int> poly_divexact(std::vector<Int> a, const std::vector<Int>& b) {
    std::size_t k = b.size(); // b monic, k >= 2
    std::vector<Int> qout(a.size() - k + 1, 0);
    for (std::size_t i = a.size(); i-- >= k;) {
        Int c = a[i];
        if (c != 0) {
            qout[i - (k - 1)] = c;
            for (std::size_t j = 0; j < k; ++j) a[i - (k - 1) + j] -= c * b[j];
        }
    }
    return qout;
}

std::vector<Int> compute_cyclotomic(unsigned m) {
    if (m == 1) return {Int(-1), Int(1)}; // x - 1
    std::vector<Int> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d)
        if (m % d == 0) num = poly_divexact(num, cyclotomic_polynomial(d));
    return num;
}

} // namespace

const std::vector<Int>& cyclotomic_polynomial(unsigned m) {
    {
        std::lock_guard<std::mutex> lk(g_phi_mutex);
        auto it = g_phi_cache.find(m);
        if (it != g_phi_cache.end()) return it->second;
    }
    // compute outside the lock; recursion re-enters this function
    std::vector<Int> val = compute_cyclotomic(m);
    std::lock_guard<std::mutex> lk(g_phi_mutex);
    return g_phi_cache.emplace(m, std::move(val)).first->second;
}

void prewarm_cyclotomic(unsigned m) {
    for (unsigned d = 1; d <= m; ++d)
        if (m % d == 0) (void)cyclotomic_polynomial(d);
}

namespace {

// reduce an integer polynomial (low first, any degree) mod Phi_m; returns phi(m) coeffs
std::vector<Int> reduce_mod_phi(std::vector<Int> a, unsigned m) {
    const std::vector<Int>& phi = cyclotomic_polynomial(m);
    std::size_t deg = phi.size() - 1;
    if (a.size() < deg) a.resize(deg, 0);
    for (std::size_t i = a.size(); i-- > deg;) {
        Int c = a[i];
        if (c != 0) {
            for (std::size_t j = 0; j < phi.size(); ++j) a[i - deg + j] -= c * phi[j];
        }
    }
    a.resize(deg);
    return a;
}

} // namespace

CycInt::CycInt(unsigned level, std::vector<Int> coeffs) : level_(level), c_(std::move(coeffs)) {
    if (level_ == 0) throw domain_error("CycInt level must be >= 1");
    if (c_.size() != euler_phi(level_)) throw domain_error("CycInt coefficient count != phi(m)");
}

CycInt CycInt::integer(const Int& n, unsigned level) {
    std::vector<Int> c(euler_phi(level), 0);
    c[0] = n;
    return CycInt(level, std::move(c));
}

CycInt CycInt::root(unsigned m, std::uint64_t k) {
    std::vector<Int> a(std::size_t(k % m) + 1, 0);
    a.back() = 1;
    return CycInt(m, reduce_mod_phi(std::move(a), m));
}

bool CycInt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

CycInt CycInt::operator+(const CycInt& o) const {
    if (level_ != o.level_) throw domain_error("level mismatch (lift first)");
    std::vector<Int> c = c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
    return CycInt(level_, std::move(c));
}

CycInt CycInt::operator-(const CycInt& o) const { return *this + (-o); }

CycInt CycInt::operator-() const {
    std::vector<Int> c = c_;
    for (Int& x : c) x = -x;
    return CycInt(level_, std::move(c));
}

CycInt CycInt::operator*(const CycInt& o) const {
    if (level_ != o.level_) throw domain_error("level mismatch (lift first)");
    std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) r[i + j] += c_[i] * o.c_[j];
    }
    return CycInt(level_, reduce_mod_phi(std::move(r), level_));
}

CycInt CycInt::pow(std::uint64_t n) const {
    CycInt r = integer(1, level_);
    CycInt b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

CycInt CycInt::galois(std::uint64_t t) const {
    t %= level_;
    if (std::gcd(t, std::uint64_t(level_)) != 1) throw domain_error("galois: gcd(t, m) != 1");
    std::vector<Int> a(level_, 0);
    for (std::size_t j = 0; j < c_.size(); ++j) a[std::size_t(j * t % level_)] += c_[j];
    return CycInt(level_, reduce_mod_phi(std::move(a), level_));
}

CycInt CycInt::conj() const { return galois(level_ == 1 ? 1 : level_ - 1); }

CycInt CycInt::lift(unsigned M) const {
    if (M % level_ != 0) throw domain_error("lift: current level must divide target");
    unsigned s = M / level_;
    std::vector<Int> a(std::size_t(c_.size() - 1) * s + 1, 0);
    for (std::size_t j = 0; j < c_.size(); ++j) a[j * s] += c_[j];
    return CycInt(M, reduce_mod_phi(std::move(a), M));
}

std::optional<Int> CycInt::as_rational_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_[0];
}

std::vector<std::complex<double>> CycInt::embeddings() const {
    std::vector<std::complex<double>> out;
    const double two_pi = 6.283185307179586476925286766559;
    for (unsigned k = 1; k <= level_; ++k) {
        if (std::gcd(k, level_) != 1) continue;
        std::complex<double> acc = 0;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            double ang = two_pi * double(j * std::uint64_t(k) % level_) / double(level_);
            acc += c_[j].convert_to<double>() * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out.push_back(acc);
    }
    return out;
}

std::string CycInt::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        Int v = c_[j];
        if (first) {
            if (v < 0) {
                os << "-";
                v = -v;
            }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (j == 0) os << v;
        else {
            if (v != 1) os << v << "*";
            os << "z";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    if (first) os << "0";
    os << "@" << level_;
    return os.str();
}

bool CycInt::canonical_less(const CycInt& a, const CycInt& b) {
    if (a.level_ != b.level_) return a.level_ < b.level_;
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

CycInt parse_cycint(const std::string& s) {
    auto at = s.rfind('@');
    if (at == std::string::npos) throw domain_error("parse_cycint: missing @level");
    unsigned m = unsigned(std::stoul(s.substr(at + 1)));
    std::vector<Int> c(euler_phi(m), 0);
    std::string body = s.substr(0, at);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < body.size() && body[i] == ' ') ++i; };
    bool any = false;
    while (true) {
        skip_ws();
        if (i >= body.size()) break;
        int sign = 1;
        if (body[i] == '+' || body[i] == '-') {
            sign = body[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        }
        Int mag = 1;
        bool have_num = false;
        std::string digits;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
            digits += body[i++];
        if (!digits.empty()) {
            mag = Int(digits);
            have_num = true;
        }
        std::size_t expn = 0;
        skip_ws();
        if (i < body.size() && body[i] == '*') {
            ++i;
            skip_ws();
        }
        if (i < body.size() && body[i] == 'z') {
            ++i;
            expn = 1;
            if (i < body.size() && body[i] == '^') {
                ++i;
                std::string ed;
                while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
                    ed += body[i++];
                expn = std::stoul(ed);
            }
        } else if (!have_num) {
            throw domain_error("parse_cycint: malformed term");
        }
        if (expn >= c.size()) throw domain_error("parse_cycint: exponent beyond power basis");
        c[expn] += sign * mag;
        any = true;
    }
    (void)any;
    return CycInt(m, std::move(c));
}

namespace {

std::vector<std::uint64_t> sorted_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

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

RationalityWitness power_rationality(const CycInt& a, unsigned w, const Int& q) {
    if (a * a.conj() != CycInt::integer(int_pow(q, w), a.level()))
        throw domain_error("power_rationality: a * conj(a) != q^w");

    std::uint64_t L = std::lcm<std::uint64_t>(2, a.level());

    // Numeric prefilter: if a^N = q^(Nw/2) then every embedding argument theta
    // satisfies N*theta in 2*pi*Z. The error bound is certified from the
    // coefficient magnitudes, so exact witnesses are never rejected.
    auto embs = a.embeddings();
    double absbound = 0;
    for (const Int& cc : a.coeffs()) absbound += boost::multiprecision::abs(cc).convert_to<double>();
    std::vector<double> theta;
    std::vector<double> arg_err;
    for (auto z : embs) {
        theta.push_back(std::arg(z));
        double mag = std::abs(z);
        arg_err.push_back(mag > 0 ? absbound * 5e-15 / mag : 1.0);
    }

    for (std::uint64_t N : sorted_divisors(2 * L)) {
        if ((N * w) % 2 != 0) continue;
        bool plausible = true;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            double tol = std::max(1e-6, 4.0 * double(N) * arg_err[k]);
            if (tol >= 0.25) continue; // bound too loose to filter
            double t = double(N) * theta[k] / 6.283185307179586476925286766559;
            if (std::abs(t - std::round(t)) > tol) {
                plausible = false;
                break;
            }
        }
        if (!plausible) continue;
        if (a.pow(N) == CycInt::integer(int_pow(q, N * w / 2), a.level())) return {N};
    }
    return {std::nullopt};
}

} // namespace fw
