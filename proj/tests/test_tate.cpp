#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "fw/tate.hpp"

using namespace fw;

TEST_CASE("gamma_norm") {
    CHECK(gamma_norm({3, {1, 1, 1}}) == GammaNorm{0, 1});
    CHECK(gamma_norm({3, {2, 2, 2}}) == GammaNorm{1, 1});
    CHECK(gamma_norm({5, {1, 2, 3, 4}}) == GammaNorm{1, 1});
    CHECK(gamma_norm({2, {1, 1, 1, 1}}) == GammaNorm{1, 1});
    // always an integer in 0..r on D_{m,r}, and ||g|| + ||-g|| = r
    for (unsigned m : {4u, 5u, 7u}) {
        for (unsigned r = 1; r <= 2; ++r)
            for (const auto& g : exponent_tuples(m, r)) {
                GammaNorm n = gamma_norm(g);
                CHECK(n.den == 1);
                CHECK(n.num >= 0);
                CHECK(n.num <= r);
                CHECK(gamma_norm(g.negated()).num == std::int64_t(r) - n.num);
            }
    }
}

TEST_CASE("tate dimensions of the quadric surface over F_3") {
    FieldTable t = build_field(3, 1);
    Spectrum s = hypersurface_spectrum(2, 2, Coefficients::ones(2), t);
    CHECK(tate_dim_exact(s, 0) == 1);
    CHECK(tate_dim_exact(s, 1) == 2);
    CHECK(tate_dim_exact(s, 2) == 1);
    auto st = tate_dim_stable(s, 1);
    CHECK(st.dimension == 2);
    CHECK(st.extension == 1);
}

TEST_CASE("tate dimensions of the product of two Fermat cubic curves over F_7") {
    FieldTable t = build_field(7, 1);
    Spectrum c = hypersurface_spectrum(3, 1, Coefficients::ones(1), t);
    // the curve itself has no Tate classes in weight 1
    CHECK(tate_dim_stable(c, 0).dimension == 1);
    Spectrum prod = product_spectrum({c, c});
    // alpha * conj(alpha) = 7 pairs contribute 2 beyond the two
    // hyperplane products: 1 + 1 + 2 = 4, already over the base field
    CHECK(tate_dim_exact(prod, 1) == 4);
    auto st = tate_dim_stable(prod, 1);
    CHECK(st.dimension == 4);
    CHECK(st.extension == 1);
    CHECK(tate_dim_exact(prod, 0) == 1);
    CHECK(tate_dim_exact(prod, 2) == 1);
    // matches the closed form for two odd-dimensional factors
    CHECK(dim_case2({1, 1}, 0) == 1);
    CHECK(dim_case2({1, 1}, 1) == 2); // supersingular part excluded: formula
    // counts hyperplane-type classes only when factors are in the generic
    // position; here the extra 2 come from the eigenvalue pairing
    CHECK(tate_dim_exact(prod, 1) == dim_case2({1, 1}, 1) + 2);
}

TEST_CASE("closed-form dimensions") {
    // #I(i) for rs = (1, 1): (0,0); (0,1), (1,0); (1,1)
    CHECK(dim_case2({1, 1}, 0) == 1);
    CHECK(dim_case2({1, 1}, 1) == 2);
    CHECK(dim_case2({1, 1}, 2) == 1);
    CHECK(dim_case2({1, 3, 1}, 2) == 4);
    CHECK_THROWS_AS(dim_case2({1, 2}, 1), domain_error); // even r needs the flag
    CHECK(dim_case2({1, 2}, 1, true) == 2);

    // two quadric surfaces with middle Tate dimension 2 each
    std::map<std::size_t, long long> mids = {{0, 2}, {1, 2}};
    CHECK(dim_case3({2, 2}, 0, mids) == 1);
    CHECK(dim_case3({2, 2}, 1, mids) == 4);
    CHECK(dim_case3({2, 2}, 2, mids) == 6);
    CHECK(dim_case3({2, 2}, 3, mids) == 4);
    CHECK(dim_case3({2, 2}, 4, mids) == 1);
    CHECK_THROWS_AS(dim_case3({2, 1}, 1, mids), domain_error); // odd r rejected
}

TEST_CASE("closed form matches the exact computation for two quadrics over F_3") {
    FieldTable t = build_field(3, 1);
    Spectrum quad = hypersurface_spectrum(2, 2, Coefficients::ones(2), t);
    Spectrum prod = product_spectrum({quad, quad});
    long long mid = middle_tate_dim_exact(2, 2, Coefficients::ones(2), t);
    CHECK(mid == 2);
    std::map<std::size_t, long long> mids = {{0, mid}, {1, mid}};
    for (unsigned i = 0; i <= 4; ++i)
        CHECK(tate_dim_exact(prod, i) == dim_case3({2, 2}, i, mids));
}

TEST_CASE("middle_tate_dim_exact fixtures") {
    FieldTable f7 = build_field(7, 1);
    // all six tuples of D_{3,2} give j = q over F_7
    CHECK(middle_tate_dim_exact(3, 2, Coefficients::ones(2), f7) == 7);
    CHECK_THROWS_AS(middle_tate_dim_exact(3, 1, Coefficients::ones(1), f7), domain_error);
}

TEST_CASE("stable_B fixtures") {
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        auto B = stable_B(2, 2, p);
        REQUIRE(B.size() == 1);
        CHECK(B.begin()->e == std::vector<unsigned>{1, 1, 1, 1});
    }
    // every tuple of D_{3,2} is stable for any p coprime to 3
    CHECK(stable_B(3, 2, 2).size() == 6);
    CHECK(stable_B(3, 2, 7).size() == 6);
    // B is closed under the unit scalings used in its definition
    for (const auto& g : stable_B(5, 2, 11)) {
        auto B = stable_B(5, 2, 11);
        for (std::uint64_t t = 1; t < 5; ++t) CHECK(B.count(g.scaled(t)) == 1);
    }
    CHECK_THROWS_AS(stable_B(4, 2, 2), domain_error); // p must be coprime to m
}

TEST_CASE("norm criterion matches the power-of-p criterion exhaustively") {
    // counts of tuples satisfying the criterion
    struct Fx { unsigned m, r; std::uint64_t p; int yes, total; };
    for (Fx fx : {Fx{5, 2, 11, 36, 52}, Fx{7, 1, 2, 0, 30}, Fx{5, 1, 3, 12, 12}}) {
        int yes = 0, total = 0;
        for (const auto& g : exponent_tuples(fx.m, fx.r)) {
            SkEquivalence e = sk_equivalence(g, fx.p);
            CHECK(e.pred_power_of_p == e.pred_norm);
            if (e.pred_norm) ++yes;
            ++total;
        }
        CHECK(yes == fx.yes);
        CHECK(total == fx.total);
    }
}

TEST_CASE("product_rationality and pairing_witness") {
    FieldTable f7 = build_field(7, 1);
    Spectrum c = hypersurface_spectrum(3, 1, Coefficients::ones(1), f7);
    CycInt a0 = c.h.at(1)[0].v, a1 = c.h.at(1)[1].v;
    // conjugate pair multiplies to q immediately
    auto pr = product_rationality({a0, a1});
    REQUIRE(pr.has_value());
    CHECK(pr->n == 1);
    CHECK(pr->value == Int(7));
    // a0^2 is never rational
    CHECK(!product_rationality({a0, a0}).has_value());
    auto pw = pairing_witness({a0, a1}, 7, 1);
    REQUIRE(pw.has_value());
    CHECK(pw->n == 1);
    CHECK(pw->order == std::vector<std::size_t>{0, 1});
    auto pw4 = pairing_witness({a0, a0, a1, a1}, 7, 2);
    REQUIRE(pw4.has_value());
    CHECK(pw4->n == 1);
    CHECK(pw4->order == std::vector<std::size_t>{0, 2, 1, 3});
    // product a0^2 != q, which violates the stated precondition
    CHECK_THROWS_AS(pairing_witness({a0, a0}, 7, 1), domain_error);
    CHECK_THROWS_AS(pairing_witness({a0}, 7, 1), domain_error); // odd length
}

TEST_CASE("multiplicative_order") {
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK(multiplicative_order(3, 7) == 6);
    CHECK(multiplicative_order(2, 23) == 11);
    CHECK(multiplicative_order(11, 5) == 1);
    CHECK_THROWS_AS(multiplicative_order(2, 4), domain_error); // not coprime
    // oracle: repeated multiplication
    for (std::uint64_t m : {9ull, 15ull, 21ull}) {
        for (std::uint64_t a = 2; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            std::uint64_t x = a % m, ord = 1;
            while (x != 1) { x = x * a % m; ++ord; }
            CHECK(multiplicative_order(a, m) == ord);
        }
    }
}

TEST_CASE("hypothesis checker fixtures") {
    auto rep = hypothesis_check(2, {{7, 1}, {23, 1}});
    CHECK(rep.all_r_one);
    CHECK(rep.all_r_odd);
    CHECK(rep.case1a.holds);
    CHECK(rep.case1b.holds);
    CHECK(rep.case2_gcd.holds);
    CHECK(rep.case2.holds);
    CHECK(rep.order_parity.at(7));
    CHECK(rep.order_parity.at(23));

    // gcd(5, 5) = 5 > 2 and ord_3 mod 5 = 4 even: case 2 fails on both counts
    auto rep2 = hypothesis_check(3, {{5, 1}, {5, 1}});
    CHECK(!rep2.case2_gcd.holds);
    CHECK(!rep2.case2.holds);
    CHECK(!rep2.case2.evidence.empty());
    CHECK(rep2.case1a.holds); // only one large-gcd partner each

    // all factors even-dimensional: case 3 applies with external assumptions
    auto rep3 = hypothesis_check(3, {{2, 2}, {2, 2}});
    CHECK(rep3.all_r_even);
    CHECK(rep3.case3_gcd.holds);
    REQUIRE(rep3.case3_assumptions.size() == 2);
    for (const auto& a : rep3.case3_assumptions) {
        CHECK(a.m == 2);
        CHECK(a.r == 2);
        CHECK(a.middle_dim_exact == 2);
        CHECK(a.stable_b_size == 1);
    }

    CHECK_THROWS_AS(hypothesis_check(2, {{2, 1}}), domain_error); // p | m
    CHECK_THROWS_AS(hypothesis_check(2, {}), domain_error);
}
