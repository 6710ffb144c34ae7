#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lcdd {

// Discrete variance schedule. Indexing is 1-based in the math; accessors take
// k in [1, N]. alpha_bar additionally defines index 0 with value 1.
struct NoiseSchedule {
    std::size_t N = 0;
    std::vector<double> beta;       // beta[k-1] = beta_k, k = 1..N
    std::vector<double> alpha;      // alpha[k-1] = 1 - beta_k
    std::vector<double> alpha_bar;  // alpha_bar[k] = prod_{i<=k} alpha_i, alpha_bar[0] = 1
    std::vector<double> sigma;      // sigma[k-1] = posterior std for step k (sigma_1 = 0)

    // construction parameters, kept for serialization
    double beta1 = 0.0;
    double betaN = 0.0;

    double beta_at(std::size_t k) const { return beta[k - 1]; }
    double alpha_at(std::size_t k) const { return alpha[k - 1]; }
    double alpha_bar_at(std::size_t k) const { return alpha_bar[k]; }
    double sigma_at(std::size_t k) const { return sigma[k - 1]; }

    std::string to_json() const;
    static NoiseSchedule from_json(const std::string& text);
};

// Where a scaled noisy signal enters the reverse chain.
struct InsertionPoint {
    double alpha_hat = 0.0;            // 1 / (1 + rho^2)
    double one_minus_alpha_hat = 0.0;  // rho^2 / (1 + rho^2), computed without cancellation
    std::size_t k_hat = 0;             // argmin_k |alpha_bar_k - alpha_hat|
    double mismatch = 0.0;             // |alpha_bar_{k_hat} - alpha_hat|
    double scale = 0.0;                // sqrt(alpha_hat)
    bool clamped = false;              // rho beyond the noisiest grid point
};

// Subsampled reverse chain: tau_1 < ... < tau_m with tau_m = k_hat.
struct InferencePlan {
    std::vector<std::size_t> tau;
    std::vector<double> alpha_new;      // per-step retention on the coarse chain
    std::vector<double> alpha_bar_new;  // equals parent alpha_bar at tau points

    std::size_t steps() const { return tau.size(); }
};

NoiseSchedule linear_beta_schedule(std::size_t N, double beta1 = 1e-4, double betaN = 0.02);

InsertionPoint insertion_point(const NoiseSchedule& s, double rho);

InferencePlan subsample(const NoiseSchedule& s, const std::vector<std::size_t>& tau);

std::vector<std::size_t> equidistant_tau(std::size_t k_hat, std::size_t n_steps);

// Recomputable invariant check: alpha = 1 - beta, alpha_bar = running product
// (1e-14 relative), alpha_bar strictly decreasing from alpha_bar_0 = 1.
bool schedule_consistent(const NoiseSchedule& s);

}  // namespace lcdd
