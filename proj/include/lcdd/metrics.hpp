#pragma once

#include <vector>

#include "lcdd/signal.hpp"

namespace lcdd {

struct GaussianFit {
    std::vector<double> mean;
    std::vector<double> covariance;  // row-major d x d, symmetric
    std::size_t samples = 0;

    std::size_t dim() const { return mean.size(); }
};

double mse(const Signal& a, const Signal& b);

// 10 log10(peak^2 / MSE), capped at 100 dB. Inputs are display-range values.
double psnr(const Signal& a, const Signal& b, double peak = 1.0);

// Squared 2-Wasserstein distance between two Gaussians (the FID formula).
double gaussian_frechet(const GaussianFit& a, const GaussianFit& b);

// Sample mean and unbiased covariance of flattened signals.
GaussianFit fit_gaussian(const std::vector<Signal>& samples);

// Mean absolute difference of the sorted sequences.
double empirical_w1_1d(std::vector<double> a, std::vector<double> b);

}  // namespace lcdd
