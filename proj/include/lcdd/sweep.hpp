#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcdd/metrics.hpp"
#include "lcdd/oracle.hpp"
#include "lcdd/pipeline.hpp"

namespace lcdd {

struct SweepConfig {
    GaussianMixturePrior prior;
    std::size_t n_samples = 1000;
    std::vector<double> rho_list;
    std::vector<double> lambda_grid;          // defaults to {0.05 k : k = 0..20}
    std::vector<std::size_t> schedule_lens;
    std::vector<Variant> variants;
    std::uint64_t seed = 0;
    std::size_t schedule_N = 1000;
    double beta1 = 1e-4;
    double betaN = 0.02;

    static SweepConfig from_json(const std::string& text);
    static std::vector<double> default_lambda_grid();
};

struct SweepRecord {
    std::string variant;
    double rho = 0.0;
    std::size_t k_hat = 0;
    std::size_t schedule_len = 0;
    double lambda = 0.0;
    double mse = 0.0;
    double psnr_db = 0.0;
    double frechet = 0.0;
    double w1_1d = 0.0;
    std::uint64_t seed = 0;
};

// Exact mean/covariance of the mixture, as a GaussianFit.
GaussianFit exact_moments(const GaussianMixturePrior& prior);

// Rows come out sorted by (variant, rho, schedule_len, lambda).
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRecord>& records);

}  // namespace lcdd
