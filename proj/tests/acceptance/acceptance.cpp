// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance [--seed N] [--jobs N] [--quick]
#include "kummerlab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <optional>

using namespace kummerlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Wall-clock budgets in seconds; criteria without a stated budget have none.
std::optional<double> budget(int number, bool quick) {
    switch (number) {
        case 1: return 10;
        case 2: return 60;
        case 3: return quick ? 60 : 1800;
        case 4: return 1;
        case 5: return 60;
        case 9: return 1200;
        case 11: return 60;
        default: return std::nullopt;
    }
}

bool line(int number, const std::string& id, bool passed, double secs, std::optional<double> limit, const std::string& extra = "") {
    const bool in_time = !limit || secs < *limit;
    const bool ok = passed && in_time;
    std::printf("%s  criterion %2d  %-14s %8.2fs", ok ? "PASS" : "FAIL", number, id.c_str(), secs);
    if (limit) std::printf("  (budget %.0fs%s)", *limit, in_time ? "" : ", exceeded");
    if (!extra.empty()) std::printf("  %s", extra.c_str());
    std::printf("\n");
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    VerifyOptions o;
    o.jobs = default_jobs();
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--quick") o.quick = true;
        else if (a == "--seed" && i + 1 < argc) o.seed = cli::parse_seed(argv[++i]);
        else if (a == "--jobs" && i + 1 < argc) o.jobs = static_cast<unsigned>(std::stoul(argv[++i]));
        else {
            std::fprintf(stderr, "usage: acceptance [--seed N] [--jobs N] [--quick]\n");
            return 2;
        }
    }
    std::printf("seed %llu, jobs %u%s\n", static_cast<unsigned long long>(o.seed), o.jobs, o.quick ? ", quick" : "");

    const std::vector<std::string> command{"acceptance"};
    Report first(command, o.seed);
    first.inputs() = {{"quick", o.quick}};
    first.results()["criteria"] = Json::array();

    bool all = true;
    int n = 0;
    for (const auto& [id, fn] : criteria()) {
        ++n;
        const auto t0 = Clock::now();
        auto r = run_criterion(n, id, fn, o);
        const double secs = seconds_since(t0);
        std::string extra;
        if (r.details.contains("exception")) extra = "exception: " + r.details["exception"].get<std::string>();
        all &= line(n, id, r.passed, secs, budget(n, o.quick), extra);
        add_to_report(first, r);
    }

    // Criterion 13: a second complete run with the same seed must serialize to the same bytes.
    const auto t0 = Clock::now();
    const std::string again = verify_all(o, command, false).dump();
    const bool same = again == first.dump();
    all &= line(13, "determinism", same, seconds_since(t0), std::nullopt,
                std::to_string(again.size()) + " bytes" + (same ? "" : ", reports differ"));

    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
