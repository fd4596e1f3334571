// One PASS/FAIL line per acceptance criterion. Every criterion demands zero
// failures across its suites; the tolerances below are the only knobs.
#include <chrono>
#include <cstdio>
#include <map>

#include "pcaforge/suites/suites.hpp"

using namespace pcaforge::suites;

namespace {

// Allowed failing cases per criterion.
constexpr std::size_t kMaxFailures = 0;
// Whole run, seconds.
constexpr double kTimeBudget = 300.0;
constexpr std::uint64_t kSeed = 20260101;

const char* const kTitles[] = {
    "",
    "pca laws",
    "RED determinism and monotonicity",
    "application trees vs flattening",
    "equivariance",
    "bracket abstraction and fixed points",
    "gadget behaviour",
    "atom preservation, positive instance",
    "realizability kernel vs clause expansion; equality realizers",
    "model-relation propositions",
    "iplemma end to end",
    "R_N finite approximants",
};

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    Context ctx;
    ctx.seed = kSeed;
    auto start = clock::now();
    std::map<int, std::vector<Result>> by_criterion;
    for (const Suite& s : registry()) {
        auto t0 = clock::now();
        Result r = s.run(ctx);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        std::printf("  [%d] %-20s cases=%-6zu failures=%-4zu %6.2fs %s\n", s.criterion, r.name.c_str(), r.cases,
                    r.failures, secs, r.stats.c_str());
        for (const auto& line : r.samples) {
            std::printf("        %s\n", line.c_str());
        }
        std::fflush(stdout);
        by_criterion[s.criterion].push_back(std::move(r));
    }
    int failed = 0;
    for (int c = 1; c <= 11; ++c) {
        std::size_t cases = 0, failures = 0;
        for (const auto& r : by_criterion[c]) {
            cases += r.cases;
            failures += r.failures;
        }
        bool ok = cases > 0 && failures <= kMaxFailures;
        failed += !ok;
        std::printf("%s criterion %d: %s (%zu cases, %zu failures)\n", ok ? "PASS" : "FAIL", c, kTitles[c], cases,
                    failures);
    }
    double total = std::chrono::duration<double>(clock::now() - start).count();
    std::printf("total %.1fs (budget %.0fs)%s\n", total, kTimeBudget, total > kTimeBudget ? " OVER BUDGET" : "");
    return failed == 0 && total <= kTimeBudget ? 0 : 1;
}
