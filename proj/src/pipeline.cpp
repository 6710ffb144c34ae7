#include "lcdd/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcdd {

Signal linear_combine(const Signal& i_d, const Signal& i_p, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("linear_combine: lambda must be in [0,1]");
    }
    return axpy(lambda, i_d, 1.0 - lambda, i_p);
}

DenoiseResult lcdd_denoise(const Signal& y, double rho, const NoiseSchedule& schedule,
                           const EpsilonPredictor& predictor, const LcddConfig& cfg) {
    if (!(rho > 0.0)) throw std::invalid_argument("lcdd_denoise: rho must be > 0");
    if (cfg.multi_steps < 1) throw std::invalid_argument("lcdd_denoise: multi_steps must be >= 1");

    const InsertionPoint ip = insertion_point(schedule, rho);

    const InferencePlan one_step = subsample(schedule, {ip.k_hat});
    const std::size_t n_steps = std::min(cfg.multi_steps, ip.k_hat);
    const InferencePlan multi = subsample(schedule, equidistant_tau(ip.k_hat, n_steps));

    RngStream rng_d(cfg.seed, 0);
    RngStream rng_p(cfg.seed, 1);

    DenoiseResult res;
    res.k_hat = ip.k_hat;
    res.config = cfg;
    res.i_d = run_inference(y, rho, one_step, schedule, cfg.variant, predictor, rng_d);
    res.i_p = run_inference(y, rho, multi, schedule, cfg.variant, predictor, rng_p);
    res.lc = linear_combine(res.i_d, res.i_p, cfg.lambda);
    return res;
}

}  // namespace lcdd
