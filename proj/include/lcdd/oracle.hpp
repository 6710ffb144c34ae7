#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lcdd/signal.hpp"

namespace lcdd {

// Noise predictor standing in for the trained network. Parameterized by the
// continuous level alpha_bar so it stays exact on subsampled plans.
class EpsilonPredictor {
public:
    virtual ~EpsilonPredictor() = default;
    virtual Signal predict(const Signal& x, double alpha_bar) const = 0;
};

// Mixture of isotropic Gaussians; the analytic stand-in for a clean-data prior.
struct GaussianMixturePrior {
    std::vector<double> weights;
    std::vector<Signal> means;
    std::vector<double> variances;  // isotropic per component

    std::size_t components() const { return weights.size(); }
    std::size_t dim() const { return means.empty() ? 0 : means[0].size(); }
    void validate() const;

    std::string to_json() const;
    static GaussianMixturePrior from_json(const std::string& text);
};

// Exact E[x_0 | x] under x = sqrt(alpha_bar) x_0 + sqrt(1-alpha_bar) eta.
// Responsibilities are computed in the log domain.
Signal gmm_posterior_mean(const GaussianMixturePrior& prior, const Signal& x, double alpha_bar);

// MMSE-optimal noise predictor: (x - sqrt(ab) E[x0|x]) / sqrt(1-ab).
std::shared_ptr<EpsilonPredictor> gmm_epsilon_predictor(GaussianMixturePrior prior);

// Scalar mixture applied independently to every element; the per-pixel prior
// used when denoising images from the CLI. Requires dim == 1 components.
std::shared_ptr<EpsilonPredictor> pointwise_gmm_epsilon_predictor(GaussianMixturePrior prior_1d);

// Test double consistent with a fixed clean signal.
std::shared_ptr<EpsilonPredictor> constant_x0_predictor(Signal x0);

// Test double returning zeros.
std::shared_ptr<EpsilonPredictor> zero_predictor();

}  // namespace lcdd
