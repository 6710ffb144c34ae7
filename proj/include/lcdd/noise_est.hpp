#pragma once

#include "lcdd/signal.hpp"

namespace lcdd {

struct NoiseEstimate {
    double rho_hat = 0.0;
    std::size_t n_residuals = 0;
};

// Blind noise-level estimate from second-difference pseudo-residuals over the
// interior of a 2-D grid, aggregated with a scaled median absolute deviation.
NoiseEstimate estimate_rho(const Signal& y);

}  // namespace lcdd
