#include "kummerlab/kummer.hpp"

#include <gtest/gtest.h>

using namespace kummerlab;

namespace {

std::vector<RatVec> t_classes(const KummerLattice& k, std::size_t n) {
    std::vector<RatVec> ts;
    auto sets = glue_sets_q4();
    for (std::size_t i = 0; i < n; ++i) ts.push_back(k.coords_of_subset(sets[i]));
    return ts;
}

std::vector<std::vector<Rational>> singletons(std::initializer_list<int> v) {
    std::vector<std::vector<Rational>> out;
    for (int x : v) out.push_back({Rational(x)});
    return out;
}

}  // namespace

TEST(KummerType, ParseRoundTrip) {
    for (auto t : all_kummer_types()) EXPECT_EQ(parse_kummer_type(kummer_symbol(t)), t);
    EXPECT_THROW(parse_kummer_type("3D4"), std::invalid_argument);
}

class BuildKummer : public ::testing::TestWithParam<KummerType> {};

TEST_P(BuildKummer, MatchesExpectedInvariants) {
    const auto t = GetParam();
    const auto k = build_kummer(t);
    const auto ex = kummer_expect(t);
    EXPECT_EQ(k.lattice.rank(), 16u);
    EXPECT_TRUE(k.lattice.is_even());
    EXPECT_EQ(signature(k.lattice), std::make_pair(0, 16));
    EXPECT_EQ(ade_string(k.ade), ex.ade);
    EXPECT_EQ(k.index_over_a16, BigInt(1) << ex.log_index_over_a16);
    EXPECT_EQ(k.index_over_roots, BigInt(1) << ex.log_index_over_roots);
    EXPECT_EQ(static_cast<int>(2 * k.root_pairs.size()), ex.total_roots);
    EXPECT_EQ(k.disc.order(), BigInt(1) << ex.a);
    EXPECT_EQ(k.disc.order(), abs(discriminant(k.lattice)));
}

INSTANTIATE_TEST_SUITE_P(AllTypes, BuildKummer, ::testing::ValuesIn(all_kummer_types()),
                         [](const auto& info) { return "K" + kummer_symbol(info.param); });

TEST(BuildKummer, Oracles) {
    EXPECT_EQ(build_kummer(KummerType::A16).index_over_roots, 32);
    auto d16 = build_kummer(KummerType::D16);
    EXPECT_EQ(ade_string(d16.ade), "1D16");
    EXPECT_EQ(d16.index_over_roots, 2);
    EXPECT_EQ(2 * d16.root_pairs.size(), 480u);
    EXPECT_EQ(build_kummer(KummerType::E8x2).disc.order(), 1);
}

// Extra roots beyond the 32 of A_1^16 come in blocks of 64 per added plane.
TEST(BuildKummer, ExtraRootsAreMultiplesOf64) {
    const std::map<KummerType, int> m{{KummerType::A16, 0}, {KummerType::D4x4, 1}, {KummerType::D8x2, 3},
                                      {KummerType::D16, 7}, {KummerType::E8x2, 7}};
    for (auto t : all_kummer_types())
        EXPECT_EQ(2 * build_kummer(t).root_pairs.size() - 32, 64u * static_cast<unsigned>(m.at(t)));
}

TEST(QLattice, Invariants) {
    for (auto q : {QType::Q4, QType::Q2}) {
        auto l = build_q(q);
        EXPECT_TRUE(l.is_even());
        EXPECT_EQ(signature(l), std::make_pair(1, 5));
        auto f = is_two_elementary_type2(l);
        EXPECT_TRUE(f.elementary);
        EXPECT_TRUE(f.type2);
    }
    EXPECT_EQ(discriminant_group(build_q(QType::Q4)).order(), 16);
    EXPECT_EQ(discriminant_group(build_q(QType::Q2)).order(), 4);
    EXPECT_EQ(parse_q_type("Q2"), QType::Q2);
    EXPECT_THROW(parse_q_type("Q3"), std::invalid_argument);
}

TEST(GlueValues, KummerTClasses) {
    auto k = build_kummer(KummerType::A16);
    EXPECT_EQ(q_glue_values(k.lattice, t_classes(k, 4)), singletons({0, 0, 1, 1, 0}));
}

TEST(GlueValues, Q4UClasses) {
    auto q = build_q(QType::Q4);
    std::vector<RatVec> us;
    for (int i = 1; i <= 4; ++i) us.push_back(u_class_q4(i, false));
    EXPECT_EQ(q_glue_values(q, us), singletons({0, 0, 1, 1, 0}));
}

TEST(GlueValues, EmptyList) {
    EXPECT_EQ(q_glue_values(build_q(QType::Q4), {}), singletons({0}));
}

TEST(GlueValues, LiteralReadingIsTrivial) {
    // the literal u_i = (1/2) sum of four copies of w_i lies in Q_4 itself
    for (int i = 1; i <= 4; ++i) EXPECT_TRUE(in_lattice(u_class_q4(i, true)));
}

TEST(Embed, A16SigmaOne) {
    auto e = embed_kummer(KummerType::A16, 1, QType::Q4);
    EXPECT_TRUE(e.all_verified());
    EXPECT_EQ(e.glue_rank, 4);
    EXPECT_EQ(e.u_reading, "w_j");
}

TEST(Embed, E8DirectSum) {
    auto e = embed_kummer(KummerType::E8x2, 2, QType::Q4);
    EXPECT_TRUE(e.all_verified());
    EXPECT_EQ(e.glue_rank, 0);
    EXPECT_EQ(e.disc_two_rank, 4);
}

TEST(Embed, OutOfRangeSigmaRejected) {
    EXPECT_THROW(embed_kummer(KummerType::A16, 6, QType::Q4), EmbeddingError);
    EXPECT_THROW(embed_kummer(KummerType::A16, 0, QType::Q4), EmbeddingError);
    EXPECT_FALSE(embed_any(KummerType::D16, 3).has_value());
}

TEST(Embed, Q2NeedsExtendedFlag) {
    EXPECT_THROW(embed_kummer(KummerType::D8x2, 1, QType::Q2), EmbeddingError);
}

TEST(Embed, ExtendedQ2Glue) {
    auto e = embed_kummer(KummerType::D8x2, 1, QType::Q2, true);
    EXPECT_TRUE(e.all_verified());
    EXPECT_EQ(e.sigma, 1);
}

class EmbedGrid : public ::testing::TestWithParam<std::tuple<KummerType, int>> {};

TEST_P(EmbedGrid, ExistsExactlyForAdmissibleSigma) {
    const auto [t, s] = GetParam();
    auto e = embed_any(t, s);
    EXPECT_EQ(e.has_value() && e->all_verified(), sigma_admissible(t, s));
    if (e) {
        EXPECT_EQ(e->signature, std::make_pair(1, 21));
        EXPECT_EQ(e->disc_two_rank, 2 * s);
        EXPECT_TRUE(e->roots_split);
    }
}

INSTANTIATE_TEST_SUITE_P(TypesBySigma, EmbedGrid,
                         ::testing::Combine(::testing::ValuesIn(all_kummer_types()), ::testing::Range(1, 7)),
                         [](const auto& info) {
                             return "K" + kummer_symbol(std::get<0>(info.param)) + "_sigma" +
                                    std::to_string(std::get<1>(info.param));
                         });
