#include "kummerlab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace kummerlab;
using namespace kummerlab::cli;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream o, e;
    int rc = run(args, o, e);
    return {rc, o.str(), e.str()};
}

// Keeps KUMMERLAB_SEED from leaking between tests.
struct EnvGuard {
    EnvGuard() { unsetenv("KUMMERLAB_SEED"); }
    ~EnvGuard() { unsetenv("KUMMERLAB_SEED"); }
};

}  // namespace

TEST(Run, SuccessEmitsEnvelope) {
    auto r = invoke({"rdp", "table", "--type", "D16r0", "--max-n", "3"});
    ASSERT_EQ(r.rc, kOk) << r.err;
    auto j = Json::parse(r.out);
    for (const char* k : {"tool", "version", "command", "inputs", "seeds", "field_degrees", "results", "claims", "verified"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["tool"], "kummerlab");
    EXPECT_EQ(j["command"][0], "kummerlab");
    EXPECT_TRUE(j["verified"].get<bool>());
}

TEST(Run, FailedClaimExitsOne) {
    auto bad = invoke({"surface", "classify", "--family", "class4", "--field", "e=6", "--coeffs", "h11=0", "--expect", "16A1"});
    EXPECT_EQ(bad.rc, kClaimFailed);
    EXPECT_FALSE(Json::parse(bad.out)["verified"].get<bool>());
    auto good = invoke({"surface", "classify", "--family", "class4", "--field", "e=6", "--coeffs", "h11=1", "--expect", "16A1"});
    EXPECT_EQ(good.rc, kOk);
}

TEST(Run, UsageErrorsExitTwo) {
    EXPECT_EQ(invoke({}).rc, kUsage);
    EXPECT_EQ(invoke({"frobnicate"}).rc, kUsage);
    EXPECT_EQ(invoke({"rdp", "table", "--type", "D3r0"}).rc, kUsage);
    EXPECT_EQ(invoke({"surface", "classify", "--family", "class4", "--field", "e=64", "--coeffs", "h11=1"}).rc, kUsage);
    EXPECT_EQ(invoke({"rdp", "bound", "--collection", "16A1", "--seed", "abc"}).rc, kUsage);
    EXPECT_EQ(invoke({"kummer", "build", "--type", "3D4"}).rc, kUsage);
    EXPECT_EQ(invoke({"codes", "search", "--m", "30"}).rc, kUsage);
    EXPECT_EQ(invoke({"lattice", "info", "--file", "/nonexistent/x.json"}).rc, kUsage);
}

TEST(Run, HelpAndVersion) {
    auto v = invoke({"--version"});
    EXPECT_EQ(v.rc, kOk);
    EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
    EXPECT_EQ(invoke({"--help"}).rc, kOk);
}

TEST(Run, VerboseGoesToStderrOnly) {
    auto r = invoke({"verify", "table1", "-v"});
    ASSERT_EQ(r.rc, kOk);
    EXPECT_TRUE(Json::accept(r.out));
    EXPECT_FALSE(r.err.empty());
}

TEST(Run, OutWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "kummerlab_cli_test.json";
    std::filesystem::remove(path);
    auto r = invoke({"rdp", "bound", "--collection", "16A1", "--out", path.string()});
    ASSERT_EQ(r.rc, kOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read_json_file(path.string())["results"]["bound"], 5);
    std::filesystem::remove(path);
    EXPECT_EQ(invoke({"rdp", "bound", "--collection", "16A1", "--report", "json"}).rc, kOk);
}

TEST(Seed, Precedence) {
    EnvGuard g;
    EXPECT_EQ(resolve_seed(""), kDefaultSeed);
    setenv("KUMMERLAB_SEED", "77", 1);
    EXPECT_EQ(resolve_seed(""), 77u);
    EXPECT_EQ(resolve_seed("5"), 5u);
    auto r = invoke({"rdp", "bound", "--collection", "16A1"});
    EXPECT_EQ(Json::parse(r.out)["seeds"]["base"], 77);
    r = invoke({"rdp", "bound", "--collection", "16A1", "--seed", "9"});
    EXPECT_EQ(Json::parse(r.out)["seeds"]["base"], 9);
    setenv("KUMMERLAB_SEED", "x1", 1);
    EXPECT_THROW(resolve_seed(""), InputError);
    EXPECT_THROW(parse_seed("-3"), InputError);
    EXPECT_THROW(parse_seed(" 3"), InputError);
    EXPECT_THROW(parse_seed("99999999999999999999999"), InputError);
}

TEST(Seed, SampleIsReproducible) {
    EnvGuard g;
    const std::vector<std::string> a{"surface", "sample", "--family", "class2", "--field", "e=6", "--branch", "2D8", "--seed", "3"};
    auto x = invoke(a), y = invoke(a);
    ASSERT_EQ(x.rc, kOk);
    EXPECT_EQ(x.out, y.out);
    auto b = a;
    b.back() = "4";
    EXPECT_NE(Json::parse(invoke(b).out)["results"], Json::parse(x.out)["results"]);
}

TEST(ParseField, Forms) {
    EXPECT_EQ(parse_field("e=6")->degree(), 6u);
    EXPECT_EQ(parse_field("6")->degree(), 6u);
    EXPECT_EQ(parse_field("p=2,e=5")->degree(), 5u);
    EXPECT_THROW(parse_field("p=3,e=2"), InputError);
    EXPECT_THROW(parse_field("e=0"), InputError);
    EXPECT_THROW(parse_field("e=six"), InputError);
    EXPECT_THROW(parse_field("q=4"), InputError);
}

TEST(ParseCoeffs, Forms) {
    GF k(2, 6);
    auto c = parse_coeffs("h30=010011,h11=1", k);
    EXPECT_EQ(c.at("h11"), 1u);
    EXPECT_EQ(c.at("h30"), k.parse("010011"));
    EXPECT_TRUE(parse_coeffs("", k).empty());
    EXPECT_THROW(parse_coeffs("h11=1,h11=0", k), InputError);
    EXPECT_THROW(parse_coeffs("h11", k), InputError);
    EXPECT_THROW(parse_coeffs("h11=0102", k), InputError);
}

TEST(Report, VerifiedTracksClaims) {
    Report r({"kummerlab", "x"}, 1);
    EXPECT_TRUE(r.verified());
    r.claim("a", "holds", true);
    r.field_degree(6);
    r.field_degree(4);
    r.field_degree(6);
    EXPECT_TRUE(r.verified());
    r.claim("b", "fails", false);
    EXPECT_FALSE(r.verified());
    auto j = r.json();
    EXPECT_EQ(j["field_degrees"], Json::array({4, 6}));
    EXPECT_EQ(j["claims"].size(), 2u);
    EXPECT_EQ(r.dump(), r.dump());
    EXPECT_EQ(r.dump().back(), '\n');
}

TEST(Parallel, ResultsIndependentOfWorkers) {
    auto compute = [](unsigned jobs) {
        std::vector<std::uint64_t> out(200);
        parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = sample_rng(42, 3, i)(); });
        return out;
    };
    const auto one = compute(1);
    EXPECT_EQ(compute(4), one);
    EXPECT_EQ(compute(16), one);
}

TEST(Parallel, RethrowsFirstError) {
    EXPECT_THROW(parallel_for(50, 4,
                              [](std::size_t i) {
                                  if (i == 17) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
    int hits = 0;
    parallel_for(0, 4, [&](std::size_t) { ++hits; });
    EXPECT_EQ(hits, 0);
}

TEST(SampleRng, StreamsAreSeparated) {
    EXPECT_EQ(sample_rng(1, 2, 3)(), sample_rng(1, 2, 3)());
    EXPECT_NE(sample_rng(1, 2, 3)(), sample_rng(1, 2, 4)());
    EXPECT_NE(sample_rng(1, 2, 3)(), sample_rng(1, 3, 3)());
    EXPECT_NE(sample_rng(1, 2, 3)(), sample_rng(2, 2, 3)());
    EXPECT_NE(sample_rng(1ULL << 32, 0, 0)(), sample_rng(0, 0, 0)());
}
