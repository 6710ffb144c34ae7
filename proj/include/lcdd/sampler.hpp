#pragma once

#include <functional>
#include <optional>

#include "lcdd/oracle.hpp"
#include "lcdd/schedule.hpp"
#include "lcdd/signal.hpp"

namespace lcdd {

enum class Variant { DDPM, DDIM };

// Coefficients for one reverse step, possibly on a subsampled chain.
struct StepCoefficients {
    double alpha_step;      // alpha_bar_cur / alpha_bar_prev
    double alpha_bar_cur;   // level being left
    double alpha_bar_prev;  // level being entered (1 at the final step)
    double sigma;           // DDPM noise std for this step

    void validate() const;
};

// Stochastic DDPM update. z must be absent exactly on the final step.
Signal ddpm_step(const Signal& x, const StepCoefficients& c, const Signal& eps_hat,
                 const std::optional<Signal>& z);

// Deterministic DDIM update.
Signal ddim_step(const Signal& x, const StepCoefficients& c, const Signal& eps_hat);

// Invert the forward marginal: (x - sqrt(1-ab) eps_hat) / sqrt(ab).
Signal predict_x0(const Signal& x, double alpha_bar, const Signal& eps_hat);

// Called after each reverse step with (step index into tau, alpha_bar of the
// level just entered, the state). Used by trajectory checks.
using StepObserver =
    std::function<void(std::size_t step, double alpha_bar_entered, const Signal& state)>;

// Algorithm: scale y by sqrt(alpha_hat), then run the plan's reverse chain
// down to level 0. DDIM ignores the rng.
Signal run_inference(const Signal& y, double rho, const InferencePlan& plan,
                     const NoiseSchedule& schedule, Variant variant,
                     const EpsilonPredictor& predictor, RngStream& rng,
                     const StepObserver& observer = nullptr);

}  // namespace lcdd
