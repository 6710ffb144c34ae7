// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <vector>

#include "lcdd/selftest.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    constexpr std::uint64_t kSeed = 20240817;

    struct Criterion {
        const char* label;
        lcdd::CheckResult result;
        double seconds;
    };
    std::vector<Criterion> rows;

    auto timed = [&](const char* label, auto&& fn) {
        const auto t0 = clock::now();
        lcdd::CheckResult r = fn();
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        rows.push_back({label, std::move(r), secs});
    };

    timed("criterion 1", [] { return lcdd::check_insertion_reproduction(); });
    timed("criterion 2", [] { return lcdd::check_subsample_preservation(kSeed); });
    timed("criterion 3", [] { return lcdd::check_scaling_identity(kSeed); });
    timed("criterion 4", [] { return lcdd::check_ddim_x0_preservation(); });
    timed("criterion 5", [] { return lcdd::check_mmse_equivalence(kSeed); });
    timed("criterion 6", [] { return lcdd::check_one_step_agreement(kSeed); });
    timed("criterion 7", [] { return lcdd::check_tradeoff_convexity(kSeed); });
    timed("criterion 8", [] { return lcdd::check_tradeoff_advantage(kSeed); });
    timed("criterion 9", [] { return lcdd::check_generation_sanity(kSeed); });
    timed("criterion 10", [] { return lcdd::check_blind_mode(kSeed); });
    timed("criterion 11", [] { return lcdd::check_forward_marginal(kSeed); });

    // criterion 12: the selftest bundle must pass end to end in under 5 minutes
    timed("criterion 12", [] {
        const auto t0 = clock::now();
        const auto results = lcdd::run_selftest(kSeed);
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        bool all = secs < 300.0;
        for (const auto& r : results) all = all && r.pass;
        return lcdd::CheckResult{"selftest bundle", all,
                                 std::to_string(results.size()) + " checks in " +
                                     std::to_string(secs) + " s (bound 300 s)"};
    });

    // pinned runtime bounds from the criteria that state one
    auto enforce_runtime = [&](std::size_t idx, double bound) {
        auto& row = rows[idx];
        if (row.seconds >= bound) {
            row.result.pass = false;
            row.result.detail += " [runtime " + std::to_string(row.seconds) + " s exceeds " +
                                 std::to_string(bound) + " s]";
        }
    };
    enforce_runtime(0, 1.0);    // criterion 1 < 1 s
    enforce_runtime(1, 5.0);    // criterion 2 < 5 s
    enforce_runtime(6, 120.0);  // criterion 7 < 2 min
    enforce_runtime(8, 120.0);  // criterion 9 < 2 min

    bool all_pass = true;
    for (const auto& row : rows) {
        std::printf("%-13s %-4s %-40s (%.2f s) %s\n", row.label,
                    row.result.pass ? "PASS" : "FAIL", row.result.name.c_str(), row.seconds,
                    row.result.detail.c_str());
        all_pass = all_pass && row.result.pass;
    }
    std::printf("acceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
