#include "kummerlab/cartier.hpp"
#include "kummerlab/surface.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kummerlab;

namespace {

using P = MPoly<GF>;
using U = UPoly<GF>;

P mono(const GF& k, unsigned i, unsigned j, GF::Elem a = 1) { return P::monomial(k, Mono{i, j}, a); }

P random_poly(const GF& k, std::mt19937_64& rng, unsigned deg) {
    P p(k, 2);
    for (unsigned i = 0; i <= deg; ++i)
        for (unsigned j = 0; i + j <= deg; ++j) p.add_term(Mono{i, j}, k.random(rng));
    return p;
}

U random_monic(const GF& k, std::mt19937_64& rng, int deg) {
    std::vector<GF::Elem> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = k.random(rng);
    c.back() = 1;
    return U(k, c);
}

P class4_h(const GF& k, GF::Elem h30, GF::Elem h21, GF::Elem h12, GF::Elem h03, GF::Elem h11) {
    return mono(k, 4, 1) + mono(k, 1, 4) + mono(k, 3, 0, h30) + mono(k, 2, 1, h21) + mono(k, 1, 2, h12) +
           mono(k, 0, 3, h03) + mono(k, 1, 1, h11);
}

}  // namespace

// ---------------------------------------------------------------------------
// Finite fields

TEST(GF, SmallestModuli) {
    EXPECT_EQ(GF(2, 2).modulus(), (std::vector<unsigned>{1, 1, 1}));
    EXPECT_EQ(GF(2, 3).modulus(), (std::vector<unsigned>{1, 1, 0, 1}));
    EXPECT_EQ(GF(2, 4).modulus(), (std::vector<unsigned>{1, 1, 0, 0, 1}));
    EXPECT_EQ(GF(3, 2).size(), 9u);
}

TEST(GF, RejectsBadParameters) {
    EXPECT_THROW(GF(2, 64), std::invalid_argument);
    EXPECT_THROW(GF(7, 1), std::invalid_argument);
    EXPECT_THROW(GF(2, 2, {1, 0, 1}), std::invalid_argument);  // z^2 + 1 = (z + 1)^2
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> {};

TEST_P(FieldAxioms, RandomTriples) {
    const auto [p, e] = GetParam();
    GF k(p, e);
    std::mt19937_64 rng(p * 100 + e);
    for (int i = 0; i < 300; ++i) {
        auto a = k.random(rng), b = k.random(rng), c = k.random(rng);
        EXPECT_EQ(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        EXPECT_EQ(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        EXPECT_EQ(k.add(a, k.neg(a)), k.zero());
        EXPECT_EQ(k.frob_root(k.frob(a)), a);
        EXPECT_EQ(k.parse(k.str(a)), a);
        if (a != 0) {
            EXPECT_EQ(k.mul(a, k.inv(a)), k.one());
            EXPECT_EQ(k.pow(a, k.size() - 1), k.one());
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::make_pair(2u, 1u), std::make_pair(2u, 6u), std::make_pair(2u, 17u),
                                           std::make_pair(2u, 40u), std::make_pair(2u, 63u), std::make_pair(3u, 2u),
                                           std::make_pair(5u, 1u)),
                         [](const auto& info) {
                             return "p" + std::to_string(info.param.first) + "e" + std::to_string(info.param.second);
                         });

TEST(GF, F4Subfield) {
    GF k(2, 6);
    ASSERT_TRUE(k.contains_f4());
    auto w = k.f4_generator();
    EXPECT_EQ(k.add(k.add(k.mul(w, w), w), 1), 0u);
    EXPECT_FALSE(GF(2, 5).contains_f4());
    EXPECT_THROW(GF(2, 5).f4_generator(), std::domain_error);
}

TEST(GF, ParseErrors) {
    GF k(2, 4);
    EXPECT_THROW(k.parse("101"), std::invalid_argument);
    EXPECT_THROW(k.parse("1021"), std::invalid_argument);
    EXPECT_EQ(k.parse("0100"), 2u);
}

// ---------------------------------------------------------------------------
// Univariate polynomials, factorization and extensions

TEST(Factor, XSquaredPlusX) {
    GF k(2, 1);
    auto fs = factor_univariate(U(k, {0, 1, 1}));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].poly, U(k, {0, 1}));
    EXPECT_EQ(fs[1].poly, U(k, {1, 1}));
}

TEST(Factor, SquaresInCharacteristicTwo) {
    GF k(2, 5);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        auto c = k.random_nonzero(rng);
        auto fs = factor_univariate(U(k, {c, 0, 1}));
        ASSERT_EQ(fs.size(), 1u);
        EXPECT_EQ(fs[0].multiplicity, 2);
        EXPECT_EQ(fs[0].poly, U(k, {k.frob_root(c), 1}));
    }
}

TEST(Factor, RoundTripThreeIrreducibles) {
    GF k(2, 3);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        std::map<U, int> want;
        U prod = U::constant(k, 1);
        for (int d : {1, 2, 3}) {
            U g = random_monic(k, rng, d);
            while (!is_irreducible(g)) g = random_monic(k, rng, d);
            ++want[g];
            prod = prod * g;
        }
        std::map<U, int> got;
        for (const auto& f : factor_univariate(prod)) got[f.poly] = f.multiplicity;
        EXPECT_EQ(got, want);
    }
}

TEST(Factor, OddCharacteristic) {
    GF k(3, 1);
    // x^3 - x = x (x - 1) (x + 1)
    auto fs = factor_univariate(U(k, {0, 2, 0, 1}));
    EXPECT_EQ(fs.size(), 3u);
}

TEST(Gcd, BezoutIdentity) {
    GF k(2, 4);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i) {
        U a = random_monic(k, rng, 6), b = random_monic(k, rng, 4);
        auto [g, s, t] = ext_gcd(a, b);
        EXPECT_EQ(s * a + t * b, g);
        EXPECT_TRUE((a % g).is_zero());
        EXPECT_TRUE((b % g).is_zero());
    }
}

TEST(Ext, ArithmeticOverCubic) {
    GF k(2, 4);
    std::mt19937_64 rng(4);
    U phi = random_monic(k, rng, 3);
    while (!is_irreducible(phi)) phi = random_monic(k, rng, 3);
    Ext<GF> K(k, phi);
    EXPECT_EQ(K.order(), BigInt(4096));
    for (int i = 0; i < 50; ++i) {
        auto a = K.random(rng);
        if (K.is_zero(a)) continue;
        EXPECT_EQ(K.mul(a, K.inv(a)), K.one());
        EXPECT_EQ(K.mul(K.frob_root(a), K.frob_root(a)), a);
    }
    // phi has a root in K
    auto z = K.gen();
    auto v = K.zero();
    for (int d = phi.deg(); d >= 0; --d) v = K.add(K.mul(v, z), K.embed(phi.coeff(static_cast<std::size_t>(d))));
    EXPECT_TRUE(K.is_zero(v));
}

// ---------------------------------------------------------------------------
// Bivariate polynomials

TEST(Partials, Oracles) {
    GF k(2, 4);
    EXPECT_TRUE(mono(k, 4, 1).partial(0).is_zero());
    EXPECT_TRUE(P::constant(k, 2, 5).partial(1).is_zero());
    const GF::Elem h30 = 3, h21 = 5, h12 = 7, h03 = 9, h11 = 11;
    auto [hx, hy] = partials(class4_h(k, h30, h21, h12, h03, h11));
    EXPECT_EQ(hx, mono(k, 0, 4) + mono(k, 2, 0, h30) + mono(k, 0, 2, h12) + mono(k, 0, 1, h11));
    EXPECT_EQ(hy, mono(k, 4, 0) + mono(k, 2, 0, h21) + mono(k, 0, 2, h03) + mono(k, 1, 0, h11));
}

TEST(SqrtPoly, Oracles) {
    GF k(2, 4);
    EXPECT_EQ(sqrt_poly(mono(k, 2, 0)), mono(k, 1, 0));
    const GF::Elem c = 6;
    EXPECT_EQ(sqrt_poly(mono(k, 2, 4, k.mul(c, c))), mono(k, 1, 2, c));
    EXPECT_THROW(sqrt_poly(mono(k, 3, 0)), std::domain_error);
}

TEST(Multivariate, GcdAndCoprime) {
    GF k(2, 3);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 10; ++i) {
        P f = random_poly(k, rng, 2) + mono(k, 3, 0);
        P g = random_poly(k, rng, 2) + mono(k, 0, 3);
        P h = random_poly(k, rng, 1) + mono(k, 2, 1);
        P d = mgcd(f * h, g * h);
        EXPECT_TRUE(try_divide(d, normalize_lead(h)).has_value());
        if (coprime(f, g)) {
            EXPECT_EQ(mgcd(f, g).total_degree(), 0u);
        }
    }
    EXPECT_FALSE(coprime(mono(k, 1, 0) * mono(k, 0, 1), mono(k, 1, 0)));
}

TEST(Resultant, VanishesOnCommonRoots) {
    GF k(2, 2);
    // f = x + y, g = x + y^2: eliminating x gives y^2 + y
    P f = mono(k, 1, 0) + mono(k, 0, 1), g = mono(k, 1, 0) + mono(k, 0, 2);
    U r = resultant(f, g, 0);
    EXPECT_EQ(r.monic(), U(k, {0, 1, 1}));
}

TEST(DivisorialGcd, Oracles) {
    GF k(2, 2);
    auto x = divisorial_gcd_check(mono(k, 1, 0));
    EXPECT_TRUE(x.equal);
    EXPECT_EQ(x.g.total_degree(), 0u);
    MPoly<GF> t2x(k, 3), t2y(k, 3);
    t2x.add_term(Mono{1, 0, 2}, 1);
    t2y.add_term(Mono{0, 1, 2}, 1);
    auto r = divisorial_gcd_check(t2x + t2y);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.g.total_degree(), 2u);
}

TEST(DivisorialGcd, RandomSweepOverF4) {
    GF k(2, 2);
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        P f = random_poly(k, rng, 5);
        if (f.partial(0).is_zero() && f.partial(1).is_zero()) continue;
        EXPECT_TRUE(divisorial_gcd_check(f).equal) << f.str({"x", "y"});
        ++checked;
    }
    EXPECT_GT(checked, 90);
}

// ---------------------------------------------------------------------------
// Cartier operator

TEST(Cartier, UnitFormIsRootH11) {
    GF k(2, 6);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 30; ++i) {
        const GF::Elem h11 = i == 0 ? 0 : k.random(rng);
        P H = class4_h(k, k.random(rng), k.random(rng), k.random(rng), k.random(rng), h11);
        auto c = cartier_p2(P::constant(k, 2, 1), H);
        EXPECT_EQ(c.coeff[0], P::constant(k, 2, k.frob_root(h11)));
        EXPECT_TRUE(c.coeff[1].is_zero());
        EXPECT_EQ(c.is_zero(), h11 == 0);
    }
}

TEST(Cartier, ExactFormsAndFdF) {
    for (unsigned e : {2u, 4u, 6u}) {
        auto k = std::make_shared<const GF>(2, e);
        std::mt19937_64 rng(e);
        for (auto fam : {Family::Class4, Family::Class2})
            for (int i = 0; i < 40; ++i) {
                const P H = random_member(fam, k, rng).polynomial();
                const P F = random_poly(*k, rng, 4);
                const auto dF = exact_form(F, H);
                EXPECT_TRUE(cartier_p2(dF.coeff[0], H).is_zero());
                EXPECT_EQ(cartier_p2(F * dF.coeff[0], H), dF);
            }
    }
}

TEST(Cartier, GeneralAgreesWithP2) {
    GF k(2, 4);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        P H = random_poly(k, rng, 5);
        if (in_pth_powers(H)) continue;
        P g = random_poly(k, rng, 4);
        EXPECT_EQ(cartier_general(g, H), cartier_p2(g, H));
    }
}

TEST(Cartier, SquareHRejected) {
    GF k(2, 2);
    EXPECT_THROW(cartier_p2(P::constant(k, 2, 1), mono(k, 2, 2)), std::domain_error);
    EXPECT_THROW(cartier_general(P::constant(k, 2, 1), mono(k, 2, 2)), std::domain_error);
}

TEST(Cartier, CharacteristicThreeCorner) {
    GF k(3, 1);
    // g = 1, H = x^2 y^2: the a = 1 summand contributes the constant 1 to the w-linear slot
    auto c = cartier_general(P::constant(k, 2, 1), mono(k, 2, 2));
    ASSERT_EQ(c.coeff.size(), 3u);
    EXPECT_TRUE(c.coeff[0].is_zero());
    EXPECT_EQ(c.coeff[1], P::constant(k, 2, 1));
    EXPECT_TRUE(c.coeff[2].is_zero());
}

TEST(Cartier, CharacteristicThreeExactForms) {
    GF k(3, 2);
    std::mt19937_64 rng(33);
    for (int i = 0; i < 40; ++i) {
        P H = random_poly(k, rng, 4);
        if (in_pth_powers(H)) continue;
        const P F = random_poly(k, rng, 3);
        const auto dF = exact_form(F, H);
        EXPECT_TRUE(cartier_general(dF.coeff[0], H).is_zero());
        EXPECT_EQ(cartier_general(F * F * dF.coeff[0], H), dF);
    }
}

TEST(Cartier, AdditiveAndSemilinear) {
    GF k(2, 5);
    std::mt19937_64 rng(44);
    for (int i = 0; i < 50; ++i) {
        P H = random_poly(k, rng, 5);
        if (in_pth_powers(H)) continue;
        P a = random_poly(k, rng, 4), b = random_poly(k, rng, 4);
        const auto ca = cartier_p2(a, H), cb = cartier_p2(b, H), cab = cartier_p2(a + b, H);
        EXPECT_EQ(cab.coeff[0], ca.coeff[0] + cb.coeff[0]);
        EXPECT_EQ(cab.coeff[1], ca.coeff[1] + cb.coeff[1]);
        const auto c = k.random(rng);
        const auto cs = cartier_p2(a.scale(k.mul(c, c)), H);
        EXPECT_EQ(cs.coeff[0], ca.coeff[0].scale(c));
        EXPECT_EQ(cs.coeff[1], ca.coeff[1].scale(c));
    }
}

TEST(P1Derivative, Oracles) {
    GF k2(2, 1);
    EXPECT_TRUE(check_p1_derivative(U::x(k2)));
    std::mt19937_64 rng(5);
    GF k8(2, 3), k9(3, 2);
    for (int i = 0; i < 20; ++i) {
        EXPECT_TRUE(check_p1_derivative(random_monic(k8, rng, 6)));
        EXPECT_TRUE(check_p1_derivative(random_monic(k9, rng, 4)));
    }
    GF k5(5, 1);
    for (int d = 1; d <= 12; ++d) EXPECT_TRUE(check_p1_derivative(random_monic(k5, rng, d)));
}

TEST(FijTable, UnitG) {
    GF k(2, 4);
    std::mt19937_64 rng(6);
    P H = random_poly(k, rng, 7);
    auto t = f_ij_table(P::constant(k, 2, 1), H);
    for (const auto& [m, a] : H.terms()) {
        if (m[0] % 2 == 1 && m[1] % 2 == 1) {
            auto it = t.find({(m[0] - 1) / 2, (m[1] - 1) / 2});
            ASSERT_NE(it, t.end());
            EXPECT_EQ(it->second, a);
        }
    }
}

TEST(FijTable, MatchesCartierCoefficients) {
    GF k(2, 5);
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        P H = random_poly(k, rng, 6), g = random_poly(k, rng, 4);
        if (in_pth_powers(H)) continue;
        auto t = f_ij_table(g, H);
        auto c = cartier_p2(g, H).coeff[0];
        std::map<Exponent, GF::Elem> squared;
        for (const auto& [m, a] : c.terms()) squared[{m[0], m[1]}] = k.mul(a, a);
        EXPECT_EQ(t, squared);
    }
}

TEST(ZFiltration, GenericDims) {
    const std::vector<Exponent> c4{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}};
    const std::vector<Exponent> c2{{1, 0}, {0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}};
    for (unsigned e : {4u, 6u}) {
        auto k = std::make_shared<const GF>(2, e);
        std::mt19937_64 rng(e * 3);
        for (int i = 0; i < 10; ++i) {
            for (auto b : {Branch::A16, Branch::D4x4, Branch::NonRDP}) {
                auto h4 = random_spec(Family::Class4, b, k, rng).polynomial();
                EXPECT_EQ(z_filtration(h4, c4, 4).dims(), (std::vector<std::size_t>{7, 6, 5, 5, 5}));
                auto h2 = random_spec(Family::Class2, b, k, rng).polynomial();
                EXPECT_EQ(z_filtration(h2, c2, 4).dims(), (std::vector<std::size_t>{7, 6, 5, 5, 5}));
            }
        }
    }
}

TEST(ZFiltration, AdversarialCoefficientDropsZ3) {
    const std::vector<Exponent> c4{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}};
    auto k = std::make_shared<const GF>(2, 4);
    std::mt19937_64 rng(77);
    for (Exponent ex : std::vector<Exponent>{{3, 1}, {3, 2}, {1, 3}, {2, 3}}) {
        P H = random_spec(Family::Class4, Branch::A16, k, rng).polynomial() + mono(*k, ex.first, ex.second, 1);
        EXPECT_LT(z_filtration(H, c4, 3).dims()[3], 5u) << coeff_name(ex);
    }
}
