#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "fw/spectrum.hpp"

using namespace fw;

TEST_CASE("conic over F_7: P^1") {
    // m = 2, r = 1: D_{2,1} is empty, so the spectrum is 1, q
    FieldTable t = build_field(7, 1);
    Spectrum s = hypersurface_spectrum(2, 1, Coefficients::ones(1), t);
    CHECK(s.dim == 1);
    CHECK(s.betti(0) == 1);
    CHECK(s.betti(1) == 0);
    CHECK(s.betti(2) == 1);
    CHECK(point_count(s, 1) == Int(8));
    CHECK(point_count(s, 2) == Int(50));
}

TEST_CASE("Fermat cubic curve over F_7 has 9 points") {
    FieldTable t = build_field(7, 1);
    Spectrum s = hypersurface_spectrum(3, 1, Coefficients::ones(1), t);
    CHECK(s.betti(1) == 2);
    CHECK(point_count(s, 1) == Int(9));
    // trace of Frobenius is q + 1 - N = -1
    CycInt tr = CycInt::integer(0, 1);
    for (const auto& ev : s.h.at(1)) {
        REQUIRE(!ev.is_qpow);
        tr = tr.lift(std::lcm(tr.level(), ev.v.level())) +
             ev.v.lift(std::lcm(tr.level(), ev.v.level()));
    }
    CHECK(tr.as_rational_integer() == Int(-1));
    // oracle agreement in the extension too
    CHECK(point_count(s, 1) == brute_force_count({{3, 1, Coefficients::ones(1)}}, t, 1));
    CHECK(point_count(s, 2) == brute_force_count({{3, 1, Coefficients::ones(1)}}, t, 2));
}

TEST_CASE("quadric surface over F_3: middle hyperplane + extra class") {
    FieldTable t = build_field(3, 1);
    Spectrum s = hypersurface_spectrum(2, 2, Coefficients::ones(2), t);
    CHECK(s.dim == 2);
    CHECK(s.betti(2) == 2); // hyperplane class + the single D_{2,2} tuple
    CHECK(point_count(s, 1) == brute_force_count({{2, 2, Coefficients::ones(2)}}, t, 1));
    ZetaFunction z = zeta_rational(s);
    CHECK(z.P.at(0) == std::vector<Int>{1, -1});
    CHECK(z.P.at(2) == std::vector<Int>{1, -6, 9}); // (1 - 3T)^2
    CHECK(z.P.at(4) == std::vector<Int>{1, -9});
    CHECK(z.P.count(1) == 0);
}

TEST_CASE("purity: every eigenvalue in H^i has weight i") {
    FieldTable t = build_field(7, 1);
    for (auto [m, r] : {std::pair<unsigned, unsigned>{3, 1}, {3, 2}, {6, 2}}) {
        Spectrum s = hypersurface_spectrum(m, r, Coefficients::ones(r), t);
        for (const auto& [deg, evs] : s.h)
            for (const auto& ev : evs) {
                CHECK(ev.weight == deg);
                if (ev.is_qpow) {
                    CHECK(deg % 2 == 0);
                    CHECK(ev.e == std::uint64_t(deg) / 2);
                } else {
                    Int qi = 1;
                    for (int k = 0; k < deg; ++k) qi *= t.q();
                    CHECK((ev.v * ev.v.conj()).as_rational_integer() == qi);
                }
            }
        // sorted canonical order within each degree
        for (const auto& [deg, evs] : s.h)
            CHECK(std::is_sorted(evs.begin(), evs.end(),
                                 [](const Eigenvalue& a, const Eigenvalue& b) {
                                     return eigenvalue_less(a, b);
                                 }));
    }
}

TEST_CASE("middle Betti number matches the tuple count") {
    FieldTable t = build_field(7, 1);
    for (auto [m, r] : {std::pair<unsigned, unsigned>{3, 1}, {3, 2}, {6, 1}}) {
        Spectrum s = hypersurface_spectrum(m, r, Coefficients::ones(r), t);
        std::size_t expected = exponent_tuples(m, r).size() + (r % 2 == 0 ? 1 : 0);
        CHECK(s.betti(int(r)) == expected);
    }
}

TEST_CASE("Kuenneth product and point counts of products") {
    FieldTable t = build_field(7, 1);
    Spectrum c = hypersurface_spectrum(3, 1, Coefficients::ones(1), t);
    Spectrum prod = product_spectrum({c, c});
    CHECK(prod.dim == 2);
    CHECK(prod.betti(0) == 1);
    CHECK(prod.betti(1) == 4);
    CHECK(prod.betti(2) == 6); // 1*1 + 2*2 + 1*1
    CHECK(prod.betti(3) == 4);
    CHECK(prod.betti(4) == 1);
    // product count = product of counts, checked against the trace formula
    for (unsigned n = 1; n <= 3; ++n)
        CHECK(point_count(prod, n) == point_count(c, n) * point_count(c, n));
    // and against the exhaustive oracle
    std::vector<FactorSpec> fs = {{3, 1, Coefficients::ones(1)}, {3, 1, Coefficients::ones(1)}};
    CHECK(point_count(prod, 1) == brute_force_count(fs, t, 1));

    Spectrum pt = Spectrum::point(7);
    Spectrum same = product_spectrum({c, pt});
    CHECK(same.h == c.h);
    CHECK_THROWS_AS(product_spectrum({}), domain_error);
    Spectrum other = hypersurface_spectrum(2, 2, Coefficients::ones(2), build_field(3, 1));
    CHECK_THROWS_AS(product_spectrum({c, other}), domain_error); // mismatched q
}

TEST_CASE("non-unit coefficients change the count, oracle-checked") {
    FieldTable t = build_field(7, 1);
    Coefficients a{{1, 1, 2}};
    Spectrum s = hypersurface_spectrum(3, 1, a, t);
    for (unsigned n = 1; n <= 2; ++n)
        CHECK(point_count(s, n) == brute_force_count({{3, 1, a}}, t, n));
    // x^3 + y^3 + 2z^3 = 0 over F_7 by hand: 3 points at z = 0 plus the
    // affine z = 1 chart
    long long hand = 0;
    for (int x = 0; x < 7; ++x)
        for (int y = 0; y < 7; ++y)
            if ((x * x * x + y * y * y + 2) % 7 == 0) ++hand;
    CHECK(point_count(s, 1) == Int(hand + 3));
}

TEST_CASE("zeta functional equation on degree pairs") {
    FieldTable t = build_field(7, 1);
    Spectrum s = hypersurface_spectrum(3, 2, Coefficients::ones(2), t);
    ZetaFunction z = zeta_rational(s);
    // P_i has integer coefficients, degree = b_i, constant term 1
    for (const auto& [deg, coef] : z.P) {
        CHECK(coef.size() == s.betti(deg) + 1);
        CHECK(coef[0] == 1);
    }
    // Poincare duality: alpha -> q^dim / alpha maps H^i to H^{2*dim - i};
    // check via coefficient reversal of the middle polynomial: if P(T) has
    // roots 1/alpha then T^b P(q^dim / (q^dim T)) recovers the same set
    const auto& mid = z.P.at(2);
    std::size_t b = mid.size() - 1;
    Int qd = Int(7) * 7; // q^dim
    // reversed[k] = mid[b-k] * qd^k / lead relation: check mid[b-k]*qd^k == mid[k]*qd^(b)*...
    // simpler exact statement: prod of roots = P's lead up to sign gives q^(dim*b/2)
    Int lead = mid[b];
    Int expect = 1;
    for (std::size_t k = 0; k < b; ++k) expect *= qd;
    // prod alpha_j = (-1)^b * lead, and |prod| must be q^(dim*b)/q^(dim*b/2)... use
    // the clean identity prod alpha_j = +- q^(i*b/2) with i = 2 here
    Int prod_roots = (b % 2 == 0) ? lead : -lead;
    Int target = 1;
    for (std::size_t k = 0; k < b; ++k) target *= 7; // q^(i/2 * b) with i = 2
    CHECK((prod_roots == target || prod_roots == -target));
}

TEST_CASE("zeta_order and S(2)") {
    FieldTable t = build_field(3, 1);
    Spectrum quad = hypersurface_spectrum(2, 2, Coefficients::ones(2), t);
    CHECK(zeta_order(quad, 0) == -1);
    CHECK(zeta_order(quad, 2) == -2);
    CHECK(zeta_order(quad, 4) == -1);
    CHECK(zeta_order(quad, 1) == 0);
    Spectrum prod = product_spectrum({quad, quad});
    // S(2) sums -rho over even a > 4 (orders are negative at integer points)
    long long s2 = zeta_s2(prod);
    long long manual = 0;
    for (unsigned a = 6; a <= 2 * unsigned(prod.dim); a += 2) manual += zeta_order(prod, a);
    CHECK(s2 == manual);
}

TEST_CASE("brute force counts for extensions and degenerate m") {
    FieldTable t2 = build_field(2, 1);
    // m = 1, r = 1: x + y + z = 0 is a line, q + 1 points
    CHECK(brute_force_count({{1, 1, Coefficients::ones(1)}}, t2, 1) == Int(3));
    CHECK(brute_force_count({{1, 1, Coefficients::ones(1)}}, t2, 2) == Int(5));
    Spectrum s = hypersurface_spectrum(1, 1, Coefficients::ones(1), t2);
    CHECK(point_count(s, 1) == Int(3));
    CHECK(point_count(s, 2) == Int(5));
}
