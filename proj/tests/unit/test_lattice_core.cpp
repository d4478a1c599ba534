#include "kummerlab/kummer.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kummerlab;

namespace {

Lattice a1() { return Lattice(IntMatrix{{BigInt(-2)}}); }

Lattice a1_sum(std::size_t n) { return scaled_identity(n, -2); }

IntVec random_vec(std::mt19937_64& rng, std::size_t n, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntVec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST(Discriminant, Oracles) {
    EXPECT_EQ(discriminant(a1()), -2);
    EXPECT_EQ(discriminant(ade_lattice('E', 8)), 1);
    EXPECT_EQ(discriminant(a1_sum(16)), BigInt(1) << 16);
    EXPECT_EQ(discriminant(ade_lattice('D', 4)), 4);
    EXPECT_EQ(discriminant(ade_lattice('A', 5)), -6);
}

TEST(Discriminant, DegenerateThrows) {
    EXPECT_THROW(discriminant(Lattice(IntMatrix{{BigInt(1), BigInt(1)}, {BigInt(1), BigInt(1)}})), std::domain_error);
}

TEST(Lattice, RejectsAsymmetricGram) {
    EXPECT_THROW(Lattice(IntMatrix{{BigInt(2), BigInt(1)}, {BigInt(0), BigInt(2)}}), std::invalid_argument);
}

TEST(Signature, Oracles) {
    EXPECT_EQ(signature(a1()), std::make_pair(0, 1));
    EXPECT_EQ(signature(build_q(QType::Q4)), std::make_pair(1, 5));
    EXPECT_EQ(signature(build_q(QType::Q2)), std::make_pair(1, 5));
    EXPECT_EQ(signature(ade_lattice('E', 8)), std::make_pair(0, 8));
}

TEST(DiscriminantGroup, A1) {
    auto d = discriminant_group(a1());
    ASSERT_EQ(d.generators.size(), 1u);
    EXPECT_EQ(d.orders[0], 2);
    EXPECT_EQ(d.qvalues[0], Rational(3, 2));  // -1/2 mod 2
}

TEST(DiscriminantGroup, QLattices) {
    EXPECT_EQ(discriminant_group(build_q(QType::Q4)).two_rank_if_elementary(), 4);
    EXPECT_EQ(discriminant_group(build_q(QType::Q2)).two_rank_if_elementary(), 2);
}

TEST(DiscriminantGroup, OrderMatchesDiscriminant) {
    for (const Lattice& l : {a1(), a1_sum(6), ade_lattice('D', 5), ade_lattice('A', 7), ade_lattice('E', 6),
                             build_q(QType::Q4), build_q(QType::Q2)})
        EXPECT_EQ(discriminant_group(l).order(), abs(discriminant(l)));
}

TEST(TwoElementary, Flags) {
    auto f = is_two_elementary_type2(a1());
    EXPECT_TRUE(f.elementary);
    EXPECT_FALSE(f.type2);
    auto q = is_two_elementary_type2(build_q(QType::Q4));
    EXPECT_TRUE(q.elementary);
    EXPECT_TRUE(q.type2);
    auto k = is_two_elementary_type2(build_kummer(KummerType::A16).lattice);
    EXPECT_TRUE(k.elementary);
    EXPECT_TRUE(k.type2);
    EXPECT_FALSE(is_two_elementary_type2(ade_lattice('A', 2)).elementary);
}

TEST(Roots, Counts) {
    EXPECT_EQ(roots(a1()).size(), 1u);
    EXPECT_EQ(roots(ade_lattice('D', 4)).size(), 12u);
    EXPECT_EQ(roots(ade_lattice('E', 8)).size(), 120u);
    EXPECT_EQ(roots(ade_lattice('A', 4)).size(), 10u);
    EXPECT_EQ(roots(build_kummer(KummerType::D4x4).lattice).size(), 48u);
}

TEST(Roots, AllHaveSquareMinusTwo) {
    Lattice l = ade_lattice('E', 7);
    for (const auto& r : roots(l)) EXPECT_EQ(l.pair(r, r), -2);
}

TEST(Roots, Deterministic) {
    Lattice l = ade_lattice('D', 6);
    EXPECT_EQ(roots(l), roots(l));
}

// An unreduced basis of E_8 (unimodular transform) must give the same 120 pairs.
TEST(Roots, InvariantUnderBasisChange) {
    Lattice e8 = ade_lattice('E', 8);
    IntMatrix t = IntMatrix::identity(8);
    std::mt19937_64 rng(5);
    for (int step = 0; step < 20; ++step) {
        std::size_t i = rng() % 8, j = rng() % 8;
        if (i == j) continue;
        const long c = static_cast<long>(rng() % 7) - 3;
        for (std::size_t k = 0; k < 8; ++k) t(i, k) += c * t(j, k);
    }
    Lattice skew(t * e8.gram() * t.transpose());
    EXPECT_EQ(roots(skew).size(), 120u);
    EXPECT_EQ(ade_string(ade_type(skew, roots(skew))), "1E8");
}

TEST(Roots, IndefiniteRejected) { EXPECT_THROW(roots(build_q(QType::Q4)), std::exception); }

TEST(Lll, ReducesToCongruentGram) {
    Lattice e8 = ade_lattice('E', 8);
    detail::BigMat g(8, IntVec(8));
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) g[i][j] = -e8.gram()(i, j);
    auto t = detail::lll_transform(g);
    auto r = detail::congruent(t, g);
    IntMatrix tm(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) tm(i, j) = t[i][j];
    EXPECT_EQ(abs(determinant(tm)), 1);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(r[i][i], 2);  // E_8 has a basis of roots
}

TEST(Ade, Decomposition) {
    Lattice s = a1_sum(16);
    EXPECT_EQ(ade_string(ade_type(s, roots(s))), "16A1");
    Lattice d8 = build_kummer(KummerType::D8x2).lattice;
    EXPECT_EQ(ade_string(ade_type(d8, roots(d8))), "2D8");
    Lattice e8 = build_kummer(KummerType::E8x2).lattice;
    EXPECT_EQ(ade_string(ade_type(e8, roots(e8))), "2E8");
    Lattice mix = direct_sum(ade_lattice('D', 5), ade_lattice('A', 3));
    EXPECT_EQ(ade_string(ade_type(mix, roots(mix))), "1A3+1D5");
}

TEST(Saturation, DoubledA1) {
    auto r = saturation(IntMatrix{{BigInt(2)}});
    EXPECT_EQ(r.index, 2);
    EXPECT_EQ(r.basis, IntMatrix{{BigInt(1)}});
}

TEST(Saturation, KummerIndices) {
    auto k = build_kummer(KummerType::A16);
    EXPECT_EQ(k.index_over_a16, 1);
    EXPECT_EQ(k.index_over_roots, 32);
    auto d = build_kummer(KummerType::D16);
    EXPECT_EQ(d.index_over_roots, 2);
}

TEST(Reflection, Oracles) {
    Lattice d4 = ade_lattice('D', 4);
    const auto rs = roots(d4);
    std::mt19937_64 rng(11);
    for (const auto& v : rs) {
        IntVec neg = v;
        for (auto& x : neg) x = -x;
        EXPECT_EQ(reflect(d4, v, v), neg);
        const IntVec x = random_vec(rng, 4);
        EXPECT_EQ(reflect(d4, v, reflect(d4, v, x)), x);
        EXPECT_EQ(d4.pair(reflect(d4, v, x), reflect(d4, v, x)), d4.pair(x, x));
    }
    // orthogonal vectors are fixed
    Lattice two = a1_sum(2);
    IntVec v{1, 0}, x{0, 5};
    EXPECT_EQ(reflect(two, v, x), x);
    EXPECT_THROW(reflect(two, IntVec{1, 1}, x), std::invalid_argument);
}

TEST(Glue, TrivialIsDirectSum) {
    Lattice l1 = ade_lattice('A', 2), l2 = ade_lattice('D', 4);
    auto g = glue(l1, l2, {});
    EXPECT_EQ(g.over.index, 1);
    EXPECT_EQ(g.over.lattice.rank(), 6u);
    EXPECT_EQ(discriminant(g.over.lattice), discriminant(l1) * discriminant(l2));
    EXPECT_TRUE(g.l1_saturated);
    EXPECT_TRUE(g.l2_saturated);
}

TEST(Glue, OddGlueRejectedEvenGlueAccepted) {
    // A_1 + A_1 glued along (e/2, f/2): q = -1/2 - 1/2 = -1 is odd, so this must be rejected.
    Lattice l = a1();
    GlueData g{{RatVec{Rational(1, 2)}}, {RatVec{Rational(1, 2)}}};
    EXPECT_THROW(glue(l, l, g), std::invalid_argument);
    // Four copies of A_1 each side: q = -2 - 2 = 0 mod 2, even overlattice.
    Lattice l4 = a1_sum(4);
    RatVec h(4, Rational(1, 2));
    auto r = glue(l4, l4, {{h}, {h}});
    EXPECT_EQ(r.over.index, 2);
    EXPECT_TRUE(r.even);
}

TEST(Glue, RejectsClassOutsideDual) {
    Lattice l = a1();
    EXPECT_THROW(glue(l, l, {{RatVec{Rational(1, 3)}}, {RatVec{Rational(1, 3)}}}), std::invalid_argument);
}

TEST(Glue, KummerWithQ4) {
    auto e = embed_kummer(KummerType::A16, 1, QType::Q4);
    EXPECT_EQ(e.ambient.rank(), 22u);
    EXPECT_TRUE(e.even);
    EXPECT_EQ(e.signature, std::make_pair(1, 21));
    EXPECT_EQ(e.disc_two_rank, 2);
    EXPECT_TRUE(e.type2);
}

// Every lattice built here has |disc group| = |disc|.
TEST(Property, DiscGroupOrderOnConstructedLattices) {
    for (auto t : all_kummer_types()) {
        auto k = build_kummer(t);
        EXPECT_EQ(k.disc.order(), abs(discriminant(k.lattice))) << kummer_symbol(t);
    }
    auto e = embed_kummer(KummerType::D8x2, 2, QType::Q4);
    EXPECT_EQ(discriminant_group(e.ambient).order(), abs(discriminant(e.ambient)));
}
