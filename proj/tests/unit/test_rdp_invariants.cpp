#include "kummerlab/rdp.hpp"

#include <gtest/gtest.h>

using namespace kummerlab;

namespace {

RdpCollection col(const std::string& s) { return RdpCollection::parse(s); }

}  // namespace

TEST(RdpType, ParseAndPrint) {
    EXPECT_EQ(parse_rdp("D16^0"), rdp('D', 16, 0));
    EXPECT_EQ(parse_rdp("D16r0"), rdp('D', 16, 0));
    EXPECT_EQ(parse_rdp("D5^1/2"), rdp('D', 5, 1));
    EXPECT_EQ(parse_rdp("E8^2").str(), "E8^2");
    EXPECT_EQ(parse_rdp("A3").str(), "A3");
    EXPECT_THROW(parse_rdp("D3^0"), std::invalid_argument);
    EXPECT_THROW(parse_rdp("E9^0"), std::invalid_argument);
    EXPECT_THROW(parse_rdp("D8^1/2"), std::invalid_argument);
    EXPECT_THROW(parse_rdp("X4"), std::invalid_argument);
    EXPECT_THROW(parse_rdp("D"), std::invalid_argument);
}

TEST(Collection, ParseNormalizesOrder) {
    EXPECT_EQ(col("D4^0+13A1"), col("13A1+D4^0"));
    EXPECT_EQ(col("2E8r0").str(), "2E8^0");
    EXPECT_EQ(RdpCollection().str(), "0");
    EXPECT_THROW(col("A1++A2"), std::invalid_argument);
}

TEST(BIndex, Oracles) {
    EXPECT_EQ(b_index(rdp('D', 4, 0)), 1);
    EXPECT_EQ(b_index(rdp('E', 7, 0)), 3);
    EXPECT_EQ(b_index(rdp('D', 8, 4)), 1);
    EXPECT_EQ(b_index(rdp('A', 5)), 0);
}

TEST(DimBBar, Oracles) {
    const auto d16 = rdp('D', 16, 0), e8 = rdp('E', 8, 0);
    EXPECT_EQ(dim_b_bar(d16, 1), 4);
    EXPECT_EQ(dim_b_bar(d16, 2), 6);
    EXPECT_EQ(dim_b_bar(d16, 3), 7);
    EXPECT_EQ(dim_b_bar(e8, 1), 2);
    EXPECT_EQ(dim_b_bar(e8, 2), 3);
    EXPECT_EQ(dim_b_bar(e8, 3), 4);
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(dim_b_bar(rdp('A', 5), n), 0);
    EXPECT_THROW(dim_b_bar(d16, -1), std::invalid_argument);
}

TEST(Mzbz, Oracles) {
    EXPECT_EQ(mzbz(rdp('D', 8, 0)), (Imb{8, 5, 3}));
    EXPECT_EQ(mzbz(rdp('A', 4)), (Imb{4, 0, 0}));
    EXPECT_EQ(mzbz(rdp('E', 8, 0)), (Imb{8, 0, 4}));
    EXPECT_THROW(mzbz(rdp('D', 8, 2)), std::invalid_argument);
}

TEST(Mzbz, IndexSplitsForEvenD) {
    for (int l = 2; l <= 10; ++l) {
        const auto v = mzbz(rdp('D', 2 * l, 0));
        EXPECT_EQ(v.i, v.m + v.b) << l;
    }
}

TEST(H0Bn, Oracles) {
    EXPECT_EQ(h0_bn_dim(col("4D4^0"), 1), 3);
    EXPECT_EQ(h0_bn_dim(col("16A1"), 1), 0);
    EXPECT_EQ(h0_bn_dim(col("2E8^0"), 3), 5);
    EXPECT_THROW(h0_bn_dim(col("16A1"), -1), std::invalid_argument);
}

// dim H^0(B_n) never decreases and is constant from n_B on.
TEST(H0Bn, MonotoneAndStabilizing) {
    for (const auto& t : allowed_types(20)) {
        RdpCollection c({t, t});
        int prev = -1;
        for (int n = 0; n <= c.n_b() + 3; ++n) {
            int d;
            try {
                d = h0_bn_dim(c, n);
            } catch (const std::domain_error&) {
                break;
            }
            EXPECT_GE(d, prev) << c.str() << " n=" << n;
            if (n > c.n_b()) {
                EXPECT_EQ(d, prev) << c.str() << " n=" << n;
            }
            prev = d;
        }
    }
}

TEST(Leq5, ExhaustiveUpToSixteen) {
    auto r = verify_leq5(16);
    EXPECT_EQ(r.max_value, 5);
    std::vector<RdpCollection> eq = r.equality_cases;
    std::sort(eq.begin(), eq.end(), [](const auto& a, const auto& b) { return a.str() < b.str(); });
    std::vector<RdpCollection> want = kummer_configurations();
    std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) { return a.str() < b.str(); });
    EXPECT_EQ(eq, want);
}

TEST(Leq5, SmallIndex) {
    auto r = verify_leq5(8);
    EXPECT_EQ(r.max_value, 1);  // f(8) = 1 with b = n_B, or f(0) = 0 with b - n_B = 1
    EXPECT_EQ(r.equality_cases.size(), 4u);
    EXPECT_EQ(leq5_value(RdpCollection()), 0);
    EXPECT_THROW(verify_leq5(25), std::invalid_argument);
}

TEST(ZInfty, Bounds) {
    auto a = z_infty_upper_bound(col("16A1"));
    EXPECT_EQ(a.bound, 5);
    EXPECT_FALSE(a.sharpness_caveat);
    auto m = z_infty_upper_bound(col("13A1+D4^0"));
    EXPECT_EQ(m.bound, 5);
    EXPECT_TRUE(m.sharpness_caveat);
    EXPECT_EQ(z_infty_upper_bound(col("2E8^0")).bound, 5);
    for (const auto& k : kummer_configurations()) EXPECT_EQ(z_infty_upper_bound(k).bound, 5) << k.str();
}

TEST(ZInfty, LargeIndexCarriesCaveat) { EXPECT_TRUE(z_infty_upper_bound(col("20A1")).sharpness_caveat); }
