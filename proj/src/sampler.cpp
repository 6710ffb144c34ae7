#include "lcdd/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace lcdd {

void StepCoefficients::validate() const {
    if (!(alpha_bar_prev > alpha_bar_cur)) {
        throw InvalidState("StepCoefficients: alpha_bar_prev must exceed alpha_bar_cur");
    }
    if (std::abs(alpha_step - alpha_bar_cur / alpha_bar_prev) >
        1e-12 * std::abs(alpha_step)) {
        throw InvalidState("StepCoefficients: alpha_step != alpha_bar_cur/alpha_bar_prev");
    }
}

Signal ddpm_step(const Signal& x, const StepCoefficients& c, const Signal& eps_hat,
                 const std::optional<Signal>& z) {
    c.validate();
    require_same_shape(x, eps_hat, "ddpm_step");
    if (!(1.0 - c.alpha_bar_cur > 0.0)) {
        throw InvalidState("ddpm_step: 1 - alpha_bar_cur must be positive");
    }
    const double inv_sa = 1.0 / std::sqrt(c.alpha_step);
    const double coef = (1.0 - c.alpha_step) / std::sqrt(1.0 - c.alpha_bar_cur);
    Signal mu = axpy(inv_sa, x, -inv_sa * coef, eps_hat);
    if (z) {
        require_same_shape(x, *z, "ddpm_step");
        return axpy(1.0, mu, c.sigma, *z);
    }
    return mu;
}

Signal ddim_step(const Signal& x, const StepCoefficients& c, const Signal& eps_hat) {
    c.validate();
    require_same_shape(x, eps_hat, "ddim_step");
    const double mu_xk = std::sqrt(c.alpha_bar_prev / c.alpha_bar_cur);
    const double mu_x0 = std::sqrt(1.0 - c.alpha_bar_prev) - mu_xk * std::sqrt(1.0 - c.alpha_bar_cur);
    return axpy(mu_xk, x, mu_x0, eps_hat);
}

Signal predict_x0(const Signal& x, double alpha_bar, const Signal& eps_hat) {
    if (!(alpha_bar > 0.0 && alpha_bar < 1.0)) {
        throw std::invalid_argument("predict_x0: alpha_bar must be in (0,1)");
    }
    require_same_shape(x, eps_hat, "predict_x0");
    const double sab = std::sqrt(alpha_bar);
    return axpy(1.0 / sab, x, -std::sqrt(1.0 - alpha_bar) / sab, eps_hat);
}

Signal run_inference(const Signal& y, double rho, const InferencePlan& plan,
                     const NoiseSchedule& schedule, Variant variant,
                     const EpsilonPredictor& predictor, RngStream& rng,
                     const StepObserver& observer) {
    if (!y.all_finite()) throw std::invalid_argument("run_inference: y must be finite");
    const InsertionPoint ip = insertion_point(schedule, rho);
    if (plan.tau.empty() || plan.tau.back() != ip.k_hat) {
        throw std::invalid_argument("run_inference: plan does not end at the rho insertion step");
    }

    Signal x = scale(ip.scale, y);
    for (std::size_t i = plan.steps(); i >= 1; --i) {
        StepCoefficients c;
        c.alpha_bar_cur = plan.alpha_bar_new[i - 1];
        c.alpha_bar_prev = (i > 1) ? plan.alpha_bar_new[i - 2] : 1.0;
        c.alpha_step = plan.alpha_new[i - 1];
        // beta-tilde variance recomputed on the coarse chain
        c.sigma = std::sqrt((1.0 - c.alpha_bar_prev) / (1.0 - c.alpha_bar_cur) *
                            (1.0 - c.alpha_step));

        const Signal eps_hat = predictor.predict(x, c.alpha_bar_cur);
        if (variant == Variant::DDPM) {
            std::optional<Signal> z;
            if (i > 1) z = standard_normal(rng, x.shape);
            x = ddpm_step(x, c, eps_hat, z);
        } else {
            x = ddim_step(x, c, eps_hat);
        }
        if (observer) observer(i, c.alpha_bar_prev, x);
    }
    return x;
}

}  // namespace lcdd
