#pragma once

#include <cstdint>

#include "lcdd/sampler.hpp"

namespace lcdd {

struct LcddConfig {
    double lambda = 0.5;            // combination factor, in [0,1]
    std::size_t multi_steps = 6;    // schedule length of the multi-step run
    Variant variant = Variant::DDIM;
    std::uint64_t seed = 0;
};

struct DenoiseResult {
    Signal i_d;  // one-step output, distortion-focused
    Signal i_p;  // multi-step output, perception-focused
    Signal lc;   // lambda * i_d + (1 - lambda) * i_p
    std::size_t k_hat = 0;
    LcddConfig config;
};

Signal linear_combine(const Signal& i_d, const Signal& i_p, double lambda);

// Run the one-step and multi-step inferences from the same insertion point
// and combine them. DDPM runs draw from independent streams off cfg.seed.
DenoiseResult lcdd_denoise(const Signal& y, double rho, const NoiseSchedule& schedule,
                           const EpsilonPredictor& predictor, const LcddConfig& cfg);

}  // namespace lcdd
