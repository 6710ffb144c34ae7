#include "lcdd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace lcdd {

void GaussianMixturePrior::validate() const {
    if (weights.empty() || weights.size() != means.size() || weights.size() != variances.size()) {
        throw std::invalid_argument("GaussianMixturePrior: component count mismatch");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("GaussianMixturePrior: weights must be > 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("GaussianMixturePrior: weights must sum to 1");
    }
    for (double v : variances) {
        if (!(v > 0.0)) throw std::invalid_argument("GaussianMixturePrior: variances must be > 0");
    }
    for (const auto& m : means) {
        if (!m.same_shape(means[0])) {
            throw std::invalid_argument("GaussianMixturePrior: means must share one shape");
        }
    }
}

Signal gmm_posterior_mean(const GaussianMixturePrior& prior, const Signal& x, double alpha_bar) {
    if (!(alpha_bar > 0.0 && alpha_bar < 1.0)) {
        throw std::invalid_argument("gmm_posterior_mean: alpha_bar must be in (0,1)");
    }
    prior.validate();
    require_same_shape(x, prior.means[0], "gmm_posterior_mean");

    const std::size_t J = prior.components();
    const std::size_t d = x.size();
    const double ab = alpha_bar;
    const double sab = std::sqrt(ab);

    // log responsibilities: log w_j - d/2 log(2 pi s_j) - ||x - sab mu_j||^2 / (2 s_j)
    std::vector<double> logr(J);
    std::vector<double> marginal_var(J);
    for (std::size_t j = 0; j < J; ++j) {
        const double s = ab * prior.variances[j] + (1.0 - ab);
        marginal_var[j] = s;
        double sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double diff = x.values[i] - sab * prior.means[j].values[i];
            sq += diff * diff;
        }
        logr[j] = std::log(prior.weights[j]) - 0.5 * static_cast<double>(d) * std::log(s) -
                  0.5 * sq / s;
    }
    const double lmax = *std::max_element(logr.begin(), logr.end());
    double norm = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        logr[j] = std::exp(logr[j] - lmax);
        norm += logr[j];
    }

    Signal out = Signal::zeros(x.shape);
    for (std::size_t j = 0; j < J; ++j) {
        const double r = logr[j] / norm;
        const double gain = sab * prior.variances[j] / marginal_var[j];
        for (std::size_t i = 0; i < d; ++i) {
            const double mj = prior.means[j].values[i] +
                              gain * (x.values[i] - sab * prior.means[j].values[i]);
            out.values[i] += r * mj;
        }
    }
    return out;
}

namespace {

class GmmPredictor final : public EpsilonPredictor {
public:
    explicit GmmPredictor(GaussianMixturePrior prior) : prior_(std::move(prior)) {
        prior_.validate();
    }
    Signal predict(const Signal& x, double alpha_bar) const override {
        const Signal x0 = gmm_posterior_mean(prior_, x, alpha_bar);
        const double sab = std::sqrt(alpha_bar);
        const double denom = std::sqrt(1.0 - alpha_bar);
        return axpy(1.0 / denom, x, -sab / denom, x0);
    }

private:
    GaussianMixturePrior prior_;
};

class PointwiseGmmPredictor final : public EpsilonPredictor {
public:
    explicit PointwiseGmmPredictor(GaussianMixturePrior prior) : prior_(std::move(prior)) {
        prior_.validate();
        if (prior_.dim() != 1) {
            throw std::invalid_argument("pointwise_gmm_epsilon_predictor: prior must be 1-D");
        }
    }
    Signal predict(const Signal& x, double alpha_bar) const override {
        if (!(alpha_bar > 0.0 && alpha_bar < 1.0)) {
            throw std::invalid_argument("pointwise predictor: alpha_bar must be in (0,1)");
        }
        const double sab = std::sqrt(alpha_bar);
        const double denom = std::sqrt(1.0 - alpha_bar);
        const std::size_t J = prior_.components();
        std::vector<double> s(J), log_w(J), gain(J);
        for (std::size_t j = 0; j < J; ++j) {
            s[j] = alpha_bar * prior_.variances[j] + (1.0 - alpha_bar);
            log_w[j] = std::log(prior_.weights[j]) - 0.5 * std::log(s[j]);
            gain[j] = sab * prior_.variances[j] / s[j];
        }
        Signal out = Signal::zeros(x.shape);
        std::vector<double> logr(J);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double xi = x.values[i];
            for (std::size_t j = 0; j < J; ++j) {
                const double diff = xi - sab * prior_.means[j].values[0];
                logr[j] = log_w[j] - 0.5 * diff * diff / s[j];
            }
            const double lmax = *std::max_element(logr.begin(), logr.end());
            double norm = 0.0, x0 = 0.0;
            for (std::size_t j = 0; j < J; ++j) {
                const double r = std::exp(logr[j] - lmax);
                norm += r;
                const double mu = prior_.means[j].values[0];
                x0 += r * (mu + gain[j] * (xi - sab * mu));
            }
            out.values[i] = (xi - sab * x0 / norm) / denom;
        }
        return out;
    }

private:
    GaussianMixturePrior prior_;
};

class ConstantX0Predictor final : public EpsilonPredictor {
public:
    explicit ConstantX0Predictor(Signal x0) : x0_(std::move(x0)) {}
    Signal predict(const Signal& x, double alpha_bar) const override {
        require_same_shape(x, x0_, "constant_x0_predictor");
        const double sab = std::sqrt(alpha_bar);
        const double denom = std::sqrt(1.0 - alpha_bar);
        return axpy(1.0 / denom, x, -sab / denom, x0_);
    }

private:
    Signal x0_;
};

class ZeroPredictor final : public EpsilonPredictor {
public:
    Signal predict(const Signal& x, double) const override { return Signal::zeros(x.shape); }
};

}  // namespace

std::shared_ptr<EpsilonPredictor> gmm_epsilon_predictor(GaussianMixturePrior prior) {
    return std::make_shared<GmmPredictor>(std::move(prior));
}

std::shared_ptr<EpsilonPredictor> pointwise_gmm_epsilon_predictor(GaussianMixturePrior prior_1d) {
    return std::make_shared<PointwiseGmmPredictor>(std::move(prior_1d));
}

std::shared_ptr<EpsilonPredictor> constant_x0_predictor(Signal x0) {
    return std::make_shared<ConstantX0Predictor>(std::move(x0));
}

std::shared_ptr<EpsilonPredictor> zero_predictor() {
    return std::make_shared<ZeroPredictor>();
}

std::string GaussianMixturePrior::to_json() const {
    nlohmann::json j;
    j["weights"] = weights;
    j["variances"] = variances;
    auto ms = nlohmann::json::array();
    for (const auto& m : means) ms.push_back(m.values);
    j["means"] = ms;
    return j.dump();
}

GaussianMixturePrior GaussianMixturePrior::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    GaussianMixturePrior p;
    p.weights = j.at("weights").get<std::vector<double>>();
    p.variances = j.at("variances").get<std::vector<double>>();
    for (const auto& m : j.at("means")) {
        auto vals = m.get<std::vector<double>>();
        p.means.emplace_back(std::vector<std::size_t>{vals.size()}, std::move(vals));
    }
    p.validate();
    return p;
}

}  // namespace lcdd
