#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lcdd {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// One function per invariant bundle; all deterministic given the seed.
CheckResult check_insertion_reproduction();
CheckResult check_subsample_preservation(std::uint64_t seed);
CheckResult check_scaling_identity(std::uint64_t seed);
CheckResult check_ddim_x0_preservation();
CheckResult check_mmse_equivalence(std::uint64_t seed);
CheckResult check_one_step_agreement(std::uint64_t seed);
CheckResult check_tradeoff_convexity(std::uint64_t seed);
CheckResult check_tradeoff_advantage(std::uint64_t seed);
CheckResult check_generation_sanity(std::uint64_t seed);
CheckResult check_blind_mode(std::uint64_t seed);
CheckResult check_forward_marginal(std::uint64_t seed);

// The suite behind `lcdd selftest`: subsample preservation, scaling identity,
// DDIM x0 preservation, MMSE equivalence, one-step agreement, trade-off
// convexity, blind mode, forward marginals.
std::vector<CheckResult> run_selftest(std::uint64_t seed);

}  // namespace lcdd
