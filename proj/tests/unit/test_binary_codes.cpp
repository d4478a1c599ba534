#include "kummerlab/codes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace kummerlab;

namespace {

// Apply a coordinate permutation to every basis word.
BinaryCode permuted(const BinaryCode& c, const std::vector<int>& perm) {
    std::vector<Word> gens;
    for (Word w : c.basis()) {
        Word v = 0;
        for (int i = 0; i < c.ground_size(); ++i)
            if ((w >> i) & 1) v |= Word(1) << perm[static_cast<std::size_t>(i)];
        gens.push_back(v);
    }
    return BinaryCode(c.ground_size(), gens);
}

}  // namespace

TEST(FBound, Oracles) {
    EXPECT_EQ(f_bound(0), 0);
    EXPECT_EQ(f_bound(8), 1);
    EXPECT_EQ(f_bound(12), 2);
    EXPECT_EQ(f_bound(14), 3);
    EXPECT_EQ(f_bound(15), 4);
    EXPECT_EQ(f_bound(16), 5);
    EXPECT_EQ(f_bound(17), 5);
    EXPECT_EQ(f_bound(24), 12);
    EXPECT_THROW(f_bound(25), std::out_of_range);
    EXPECT_THROW(f_bound(-1), std::out_of_range);
}

TEST(FBound, NonDecreasing) {
    for (int m = 1; m <= 24; ++m) EXPECT_LE(f_bound(m - 1), f_bound(m));
}

TEST(V16, Structure) {
    auto v = build_v16();
    EXPECT_EQ(v.ground_size(), 16);
    EXPECT_EQ(v.dim(), 5);
    EXPECT_EQ(v.weight_distribution(), (std::map<int, long>{{0, 1}, {8, 30}, {16, 1}}));
    EXPECT_TRUE(v.is_admissible());
}

TEST(Subcode, Oracles) {
    auto z = build_subcode(0);
    EXPECT_EQ(z.ground_size(), 0);
    EXPECT_EQ(z.dim(), 0);
    auto s4 = build_subcode(4);
    EXPECT_EQ(s4.ground_size(), 15);
    EXPECT_EQ(s4.dim(), 4);
    auto s2 = build_subcode(2);
    EXPECT_EQ(s2.ground_size(), 12);
    EXPECT_EQ(s2.dim(), 2);
    EXPECT_EQ(s2.weight_distribution(), (std::map<int, long>{{0, 1}, {8, 3}}));
    for (int j = 0; j <= 4; ++j) EXPECT_TRUE(build_subcode(j).is_admissible());
}

TEST(Golay, Witness) {
    auto g = golay_witness();
    EXPECT_EQ(g.dim(), 12);
    std::set<int> weights;
    for (auto [w, n] : g.weight_distribution()) weights.insert(w);
    EXPECT_EQ(weights, (std::set<int>{0, 8, 12, 16, 24}));
    EXPECT_TRUE(g.is_admissible());
}

TEST(Golay, ShortenedDimensions) {
    for (int m = 17; m <= 24; ++m) {
        auto s = shortened_golay(m);
        EXPECT_EQ(s.dim(), f_bound(m)) << m;
        EXPECT_TRUE(s.is_admissible());
    }
}

TEST(Admissible, RejectsWeightFour) {
    EXPECT_FALSE(BinaryCode(4, {0xF}).is_admissible());
    EXPECT_FALSE(BinaryCode(8, {0x3F}).is_admissible());  // weight 6
    EXPECT_TRUE(BinaryCode(8, {0xFF}).is_admissible());
}

TEST(BinaryCode, EchelonFormIsCanonical) {
    BinaryCode a(8, {0xFF, 0x0F}), b(8, {0xF0, 0xFF});
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.contains(0xF0));
    EXPECT_FALSE(a.contains(0x01));
    EXPECT_THROW(BinaryCode(4, {0x10}), std::invalid_argument);
}

TEST(Bitstring, RoundTrip) {
    auto v = build_v16();
    for (Word w : v.basis()) EXPECT_EQ(parse_bitstring(v.bitstring(w)), w);
    EXPECT_THROW(parse_bitstring("0120"), std::invalid_argument);
}

TEST(Search, SmallOracles) {
    EXPECT_EQ(max_admissible_dim(0).dim, 0);
    EXPECT_EQ(max_admissible_dim(7).dim, 0);
    EXPECT_EQ(max_admissible_dim(8).dim, 1);
    EXPECT_EQ(max_admissible_dim(12).dim, 2);
}

TEST(Search, MatchesFUpTo14) {
    for (int m = 0; m <= 14; ++m) EXPECT_EQ(max_admissible_dim(m).dim, f_bound(m)) << m;
}

TEST(Search, M16UniqueClassIsV16) {
    auto r = max_admissible_dim(16);
    EXPECT_EQ(r.dim, 5);
    ASSERT_EQ(r.maximal.size(), 1u);
    EXPECT_TRUE(codes_equivalent(r.maximal.front(), build_v16()));
}

TEST(Search, M17) { EXPECT_EQ(max_admissible_dim(17).dim, 5); }

TEST(Search, ExhaustiveRangeEnforced) { EXPECT_THROW(max_admissible_dim(18), std::out_of_range); }

TEST(Witness, BracketsF) {
    const int g17 = 5;
    for (int m = 0; m <= 24; ++m) {
        auto w = witness_bound(m, 17, g17);
        EXPECT_TRUE(w.witness.is_admissible()) << m;
        EXPECT_LE(w.lower, f_bound(m)) << m;
        if (m >= 17) {
            EXPECT_EQ(w.lower, f_bound(m)) << m;
            EXPECT_EQ(w.upper, f_bound(m)) << m;
        }
    }
}

TEST(Equivalence, PermutedCopiesAgree) {
    std::mt19937_64 rng(3);
    std::vector<int> perm(16);
    std::iota(perm.begin(), perm.end(), 0);
    auto v = build_v16();
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        auto p = permuted(v, perm);
        EXPECT_TRUE(codes_equivalent(v, p));
        EXPECT_EQ(equivalence_classes({v, p}), (std::vector<int>{0, 0}));
    }
}

TEST(Equivalence, DifferentEnumeratorsSeparate) {
    BinaryCode v = build_v16();
    BinaryCode unit(16, {0x1, 0x2, 0x4, 0x8, 0x10});  // dimension 5, weights 0..5
    ASSERT_EQ(unit.dim(), v.dim());
    EXPECT_FALSE(codes_equivalent(v, unit));
    EXPECT_EQ(equivalence_classes({v, unit}), (std::vector<int>{0, 1}));
    // the same space given by another basis
    EXPECT_TRUE(codes_equivalent(v, BinaryCode(16, {0x00FF, 0xFF00, 0x0F0F, 0x3333, 0x5555})));
}

TEST(Equivalence, DifferentWeightDistributionsAreInequivalent) {
    BinaryCode a(16, {0x00FF}), b(16, {0xFFFF});
    EXPECT_FALSE(codes_equivalent(a, b));
    EXPECT_EQ(equivalence_classes({a, b}), (std::vector<int>{0, 1}));
}

TEST(Overlattice, ZeroCode) {
    auto o = code_to_overlattice(BinaryCode(16, {}));
    EXPECT_EQ(o.over.index, 1);
    EXPECT_EQ(o.root_pairs, 16u);
}

TEST(Overlattice, V16GivesIndex32) {
    auto o = code_to_overlattice(build_v16());
    EXPECT_EQ(o.over.index, 32);
    EXPECT_EQ(o.root_pairs, 16u);
    EXPECT_TRUE(o.over.lattice.is_even());
}

TEST(Overlattice, WeightFourRejected) {
    EXPECT_THROW(code_to_overlattice(BinaryCode(4, {0xF})), std::invalid_argument);
}

// Every admissible code keeps exactly the roots +-e_i.
TEST(Property, AdmissibleSubcodesKeepRoots) {
    auto v = build_v16();
    const auto words = v.codewords();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Word> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(words[rng() % words.size()]);
        BinaryCode c(16, gens);
        ASSERT_TRUE(c.is_admissible());
        auto o = code_to_overlattice(c);
        EXPECT_EQ(o.root_pairs, 16u);
        EXPECT_EQ(o.over.index, BigInt(1) << c.dim());
    }
}
