#include "lcdd/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace lcdd {

NoiseSchedule linear_beta_schedule(std::size_t N, double beta1, double betaN) {
    if (N < 1) throw std::invalid_argument("linear_beta_schedule: N must be >= 1");
    if (!(beta1 > 0.0 && beta1 <= betaN && betaN < 1.0)) {
        throw std::invalid_argument("linear_beta_schedule: need 0 < beta1 <= betaN < 1");
    }
    NoiseSchedule s;
    s.N = N;
    s.beta1 = beta1;
    s.betaN = betaN;
    s.beta.resize(N);
    s.alpha.resize(N);
    s.alpha_bar.resize(N + 1);
    s.sigma.resize(N);
    s.alpha_bar[0] = 1.0;
    for (std::size_t k = 1; k <= N; ++k) {
        const double b =
            (N == 1) ? beta1
                     : beta1 + static_cast<double>(k - 1) / static_cast<double>(N - 1) * (betaN - beta1);
        s.beta[k - 1] = b;
        s.alpha[k - 1] = 1.0 - b;
        s.alpha_bar[k] = s.alpha_bar[k - 1] * s.alpha[k - 1];
        // posterior variance beta-tilde; zero at k = 1 since alpha_bar_0 = 1
        const double num = 1.0 - s.alpha_bar[k - 1];
        const double den = 1.0 - s.alpha_bar[k];
        s.sigma[k - 1] = std::sqrt(num / den * b);
    }
    return s;
}

InsertionPoint insertion_point(const NoiseSchedule& s, double rho) {
    if (rho < 0.0) throw std::invalid_argument("insertion_point: rho must be >= 0");
    InsertionPoint p;
    p.alpha_hat = 1.0 / (1.0 + rho * rho);
    p.one_minus_alpha_hat = rho * rho / (1.0 + rho * rho);
    p.scale = std::sqrt(p.alpha_hat);
    std::size_t best = 1;
    double best_d = std::abs(s.alpha_bar_at(1) - p.alpha_hat);
    for (std::size_t k = 2; k <= s.N; ++k) {
        const double d = std::abs(s.alpha_bar_at(k) - p.alpha_hat);
        if (d < best_d) {  // ties break toward the smaller k
            best_d = d;
            best = k;
        }
    }
    p.k_hat = best;
    p.mismatch = best_d;
    p.clamped = p.alpha_hat < s.alpha_bar_at(s.N);
    return p;
}

InferencePlan subsample(const NoiseSchedule& s, const std::vector<std::size_t>& tau) {
    if (tau.empty()) throw std::invalid_argument("subsample: tau must be nonempty");
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (tau[i] < 1 || tau[i] > s.N) throw std::invalid_argument("subsample: tau out of range");
        if (i > 0 && tau[i] <= tau[i - 1]) {
            throw std::invalid_argument("subsample: tau must be strictly increasing");
        }
    }
    InferencePlan plan;
    plan.tau = tau;
    plan.alpha_new.resize(tau.size());
    plan.alpha_bar_new.resize(tau.size());
    // alpha_new chosen so cumulative products reproduce the parent alpha_bar at tau points
    plan.alpha_new[0] = s.alpha_bar_at(tau[0]);
    plan.alpha_bar_new[0] = s.alpha_bar_at(tau[0]);
    for (std::size_t i = 1; i < tau.size(); ++i) {
        plan.alpha_new[i] = s.alpha_bar_at(tau[i]) / s.alpha_bar_at(tau[i - 1]);
        plan.alpha_bar_new[i] = s.alpha_bar_at(tau[i]);
    }
    return plan;
}

std::vector<std::size_t> equidistant_tau(std::size_t k_hat, std::size_t n_steps) {
    if (n_steps < 1 || n_steps > k_hat) {
        throw std::invalid_argument("equidistant_tau: need 1 <= n_steps <= k_hat");
    }
    std::vector<std::size_t> tau(n_steps);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const double t = static_cast<double>(i) * static_cast<double>(k_hat) /
                         static_cast<double>(n_steps);
        tau[i - 1] = static_cast<std::size_t>(std::llround(t));
    }
    return tau;
}

bool schedule_consistent(const NoiseSchedule& s) {
    if (s.N < 1 || s.beta.size() != s.N || s.alpha.size() != s.N || s.alpha_bar.size() != s.N + 1 ||
        s.sigma.size() != s.N) {
        return false;
    }
    if (s.alpha_bar[0] != 1.0) return false;
    double prod = 1.0;
    for (std::size_t k = 1; k <= s.N; ++k) {
        const double b = s.beta[k - 1];
        if (!(b > 0.0 && b < 1.0)) return false;
        if (s.alpha[k - 1] != 1.0 - b) return false;
        if (s.sigma[k - 1] < 0.0) return false;
        prod *= s.alpha[k - 1];
        if (std::abs(s.alpha_bar[k] - prod) > 1e-14 * prod) return false;
        if (!(s.alpha_bar[k] < s.alpha_bar[k - 1])) return false;
    }
    return true;
}

std::string NoiseSchedule::to_json() const {
    nlohmann::json j;
    j["N"] = N;
    j["beta1"] = beta1;
    j["betaN"] = betaN;
    j["sigma_rule"] = "beta_tilde";
    return j.dump();
}

NoiseSchedule NoiseSchedule::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.value("sigma_rule", "beta_tilde") != std::string("beta_tilde")) {
        throw std::invalid_argument("NoiseSchedule::from_json: unsupported sigma_rule");
    }
    return linear_beta_schedule(j.at("N").get<std::size_t>(), j.at("beta1").get<double>(),
                                j.at("betaN").get<double>());
}

}  // namespace lcdd
