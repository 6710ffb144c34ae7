#include "lcdd/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lcdd/data.hpp"
#include "lcdd/metrics.hpp"
#include "lcdd/noise_est.hpp"
#include "lcdd/oracle.hpp"
#include "lcdd/pipeline.hpp"
#include "lcdd/sampler.hpp"
#include "lcdd/schedule.hpp"
#include "lcdd/sweep.hpp"

namespace lcdd {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Independent argmin oracle: alpha_bar rebuilt through log-space accumulation,
// scanned linearly.
std::size_t argmin_k_oracle(std::size_t N, double beta1, double betaN, double rho) {
    const double target = 1.0 / (1.0 + rho * rho);
    double log_ab = 0.0;
    double best_d = 1e300;
    std::size_t best_k = 0;
    for (std::size_t k = 1; k <= N; ++k) {
        const double b = (N == 1) ? beta1
                                  : beta1 + static_cast<double>(k - 1) /
                                                static_cast<double>(N - 1) * (betaN - beta1);
        log_ab += std::log1p(-b);
        const double d = std::abs(std::exp(log_ab) - target);
        if (d < best_d) {
            best_d = d;
            best_k = k;
        }
    }
    return best_k;
}

// Smooth low-frequency texture with per-seed random phases, values well inside
// [-1, 1].
Signal smooth_texture(std::size_t rows, std::size_t cols, RngStream& rng) {
    const double p1 = rng.uniform() * 6.283185307179586;
    const double p2 = rng.uniform() * 6.283185307179586;
    const double p3 = rng.uniform() * 6.283185307179586;
    Signal s = Signal::zeros({rows, cols});
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double u = static_cast<double>(r) / static_cast<double>(rows);
            const double v = static_cast<double>(c) / static_cast<double>(cols);
            s.values[r * cols + c] = 0.3 * std::sin(6.283185307179586 * (2.0 * u + p1 / 6.28)) *
                                         std::cos(6.283185307179586 * (1.0 * v) + p2) +
                                     0.2 * std::sin(6.283185307179586 * (u + 2.0 * v) + p3);
        }
    }
    return s;
}

GaussianMixturePrior benchmark_prior_2d() {
    GaussianMixturePrior prior;
    prior.weights = {0.5, 0.5};
    prior.means = {Signal({2}, {-0.9, 0.9}), Signal({2}, {0.9, -0.9})};
    prior.variances = {0.02, 0.03};
    return prior;
}

double sq_dist(const Signal& a, const Signal& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return s;
}

}  // namespace

CheckResult check_insertion_reproduction() {
    const NoiseSchedule s = linear_beta_schedule(1000);
    CheckResult res{"insertion-step reproduction", true, ""};

    const std::size_t k75 = insertion_point(s, 75.0 / 127.5).k_hat;
    if (k75 != 168) {
        res.pass = false;
        res.detail = "rho8=75 gave k_hat=" + std::to_string(k75) + ", expected 168";
        return res;
    }
    for (double rho8 : {15.0, 25.0, 50.0, 75.0}) {
        const double rho = rho8 / 127.5;
        const std::size_t got = insertion_point(s, rho).k_hat;
        const std::size_t want = argmin_k_oracle(1000, 1e-4, 0.02, rho);
        if (got != want) {
            res.pass = false;
            res.detail = "rho8=" + fmt(rho8) + ": k_hat=" + std::to_string(got) +
                         " vs oracle " + std::to_string(want);
            return res;
        }
    }
    res.detail = "k_hat(75/127.5)=168; rho8 in {15,25,50,75} match the exhaustive oracle";
    return res;
}

CheckResult check_subsample_preservation(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    RngStream rng(seed, 101);
    double max_rel = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k_hat = 1 + static_cast<std::size_t>(rng.next_u64() % s.N);
        const std::size_t len = 1 + static_cast<std::size_t>(rng.next_u64() % std::min<std::size_t>(k_hat, 32));
        // random strictly increasing tau ending at k_hat
        std::vector<std::size_t> tau;
        std::vector<std::size_t> pool(k_hat - 1);
        std::iota(pool.begin(), pool.end(), 1);
        for (std::size_t i = 0; i + 1 < len; ++i) {
            const std::size_t j = static_cast<std::size_t>(rng.next_u64() % pool.size());
            tau.push_back(pool[j]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        }
        tau.push_back(k_hat);
        std::sort(tau.begin(), tau.end());

        const InferencePlan plan = subsample(s, tau);
        double cum = 1.0;
        for (std::size_t i = 0; i < plan.steps(); ++i) {
            cum *= plan.alpha_new[i];
            const double ref = s.alpha_bar_at(tau[i]);
            max_rel = std::max(max_rel, std::abs(cum - ref) / ref);
            max_rel = std::max(max_rel, std::abs(plan.alpha_bar_new[i] - ref) / ref);
        }
    }
    CheckResult res{"subsampled-schedule marginal preservation", max_rel <= 1e-12,
                    "max relative error " + fmt(max_rel) + " (bound 1e-12)"};
    return res;
}

CheckResult check_scaling_identity(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    RngStream rng(seed, 102);
    double max_err = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        double rho = 10.0 * rng.uniform();
        if (rho == 0.0) rho = 1e-12;
        const InsertionPoint ip = insertion_point(s, rho);
        max_err = std::max(max_err,
                           std::abs(std::sqrt(ip.one_minus_alpha_hat) - ip.scale * rho));
    }
    return {"algebraic scaling identity", max_err <= 1e-15,
            "max |sqrt(1-ahat) - sqrt(ahat) rho| = " + fmt(max_err) + " (bound 1e-15)"};
}

CheckResult check_ddim_x0_preservation() {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const std::size_t k = 168;
    const double ab = s.alpha_bar_at(k);
    const double rho = std::sqrt((1.0 - ab) / ab);
    const InsertionPoint ip = insertion_point(s, rho);

    const Signal x0({4}, {0.5, -0.25, 0.8, -0.9});
    RngStream rng(7, 103);
    const Signal e = standard_normal(rng, {4});
    // y such that sqrt(alpha_hat) y lands exactly on the Eq-(1) form at step k
    Signal y = axpy(std::sqrt(ab) / ip.scale, x0, std::sqrt(1.0 - ab) / ip.scale, e);

    std::vector<std::size_t> tau(k);
    std::iota(tau.begin(), tau.end(), 1);
    const InferencePlan plan = subsample(s, tau);
    const auto predictor = constant_x0_predictor(x0);

    double max_err = 0.0;
    auto observer = [&](std::size_t, double ab_entered, const Signal& state) {
        if (ab_entered >= 1.0) {
            for (std::size_t i = 0; i < state.size(); ++i) {
                max_err = std::max(max_err, std::abs(state.values[i] - x0.values[i]));
            }
            return;
        }
        const double sab = std::sqrt(ab_entered);
        const double rem = std::sqrt(1.0 - ab_entered);
        for (std::size_t i = 0; i < state.size(); ++i) {
            const double e_rec = (state.values[i] - sab * x0.values[i]) / rem;
            max_err = std::max(max_err, std::abs(e_rec - e.values[i]));
        }
    };
    RngStream unused(0, 0);
    run_inference(y, rho, plan, s, Variant::DDIM, *predictor, unused, observer);
    return {"DDIM x0 preservation", max_err <= 1e-10,
            "max per-step deviation " + fmt(max_err) + " over a 168-point plan (bound 1e-10)"};
}

CheckResult check_mmse_equivalence(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const std::size_t k = 168;
    const double ab = s.alpha_bar_at(k);
    const double rho = std::sqrt((1.0 - ab) / ab);

    GaussianMixturePrior prior;
    prior.weights = {1.0};
    prior.means = {Signal({1}, {0.0})};
    prior.variances = {1.0};
    const auto predictor = gmm_epsilon_predictor(prior);
    const InferencePlan plan = subsample(s, {k});

    const double shrink = 1.0 / (1.0 + rho * rho);
    double max_dev = 0.0;
    double mse_sum = 0.0;
    const int M = 10000;
    for (int t = 0; t < M; ++t) {
        RngStream rng(seed, 200 + static_cast<std::uint64_t>(t));
        const double x0 = rng.normal();
        const double y = x0 + rho * rng.normal();
        RngStream run_rng(seed, 100000 + static_cast<std::uint64_t>(t));
        const Signal out = run_inference(Signal({1}, {y}), rho, plan, s, Variant::DDIM,
                                         *predictor, run_rng);
        max_dev = std::max(max_dev, std::abs(out.values[0] - shrink * y));
        const double err = out.values[0] - x0;
        mse_sum += err * err;
    }
    const double emp_mse = mse_sum / M;
    const double theory = rho * rho / (1.0 + rho * rho);
    const double rel = std::abs(emp_mse / theory - 1.0);
    const bool pass = max_dev <= 1e-8 && rel <= 0.02;
    return {"MMSE equivalence", pass,
            "max |out - y/(1+rho^2)| = " + fmt(max_dev) + " (bound 1e-8); empirical MSE " +
                fmt(emp_mse) + " vs theoretical " + fmt(theory) + ", rel " + fmt(rel) +
                " (bound 0.02)"};
}

CheckResult check_one_step_agreement(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    double max_dev = 0.0;
    for (int t = 0; t < 100; ++t) {
        RngStream rng(seed, 300 + static_cast<std::uint64_t>(t));
        const double rho = 0.05 + 2.0 * rng.uniform();
        const InsertionPoint ip = insertion_point(s, rho);
        const InferencePlan plan = subsample(s, {ip.k_hat});

        GaussianMixturePrior prior;
        prior.weights = {0.5, 0.5};
        prior.means = {Signal({3}, {rng.normal(), rng.normal(), rng.normal()}),
                       Signal({3}, {rng.normal(), rng.normal(), rng.normal()})};
        prior.variances = {0.2 + rng.uniform(), 0.2 + rng.uniform()};
        const auto predictor = gmm_epsilon_predictor(prior);

        const Signal y = standard_normal(rng, {3});
        RngStream rng_a(seed, 400 + static_cast<std::uint64_t>(t));
        RngStream rng_b(seed, 500 + static_cast<std::uint64_t>(t));
        const Signal a = run_inference(y, rho, plan, s, Variant::DDPM, *predictor, rng_a);
        const Signal b = run_inference(y, rho, plan, s, Variant::DDIM, *predictor, rng_b);
        for (std::size_t i = 0; i < a.size(); ++i) {
            max_dev = std::max(max_dev, std::abs(a.values[i] - b.values[i]));
        }
    }
    return {"one-step variant agreement", max_dev <= 1e-12,
            "max DDPM/DDIM one-step deviation " + fmt(max_dev) + " over 100 cases (bound 1e-12)"};
}

CheckResult check_tradeoff_convexity(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const double rho = 75.0 / 127.5;
    const InsertionPoint ip = insertion_point(s, rho);
    const GaussianMixturePrior prior = benchmark_prior_2d();
    const auto predictor = gmm_epsilon_predictor(prior);
    const InferencePlan one = subsample(s, {ip.k_hat});
    const InferencePlan multi = subsample(s, equidistant_tau(ip.k_hat, ip.k_hat));

    const std::size_t n = 2000;
    std::vector<Signal> clean(n), i_d(n), i_p(n);
    for (std::size_t t = 0; t < n; ++t) {
        RngStream prior_rng(seed, 4 * t);
        RngStream noise_rng(seed, 4 * t + 1);
        clean[t] = sample_prior_one(prior, prior_rng);
        const Signal y = add_noise(clean[t], rho, noise_rng);
        RngStream ra(seed, 4 * t + 2), rb(seed, 4 * t + 3);
        i_d[t] = run_inference(y, rho, one, s, Variant::DDIM, *predictor, ra);
        i_p[t] = run_inference(y, rho, multi, s, Variant::DDIM, *predictor, rb);
    }

    const auto grid = SweepConfig::default_lambda_grid();
    std::vector<double> batch_mse(grid.size(), 0.0);
    double worst_gap = -1e300;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double lambda = grid[gi];
        for (std::size_t t = 0; t < n; ++t) {
            const Signal lc = linear_combine(i_d[t], i_p[t], lambda);
            const double dl = sq_dist(lc, clean[t]);
            const double chord =
                lambda * sq_dist(i_d[t], clean[t]) + (1.0 - lambda) * sq_dist(i_p[t], clean[t]);
            worst_gap = std::max(worst_gap, dl - chord);
            batch_mse[gi] += mse(lc, clean[t]);
        }
        batch_mse[gi] /= static_cast<double>(n);
    }

    // quadratic through lambda = 0, 0.5, 1 must predict every grid point
    const double c = batch_mse[0];
    const double m1 = batch_mse[20];
    const double mh = batch_mse[10];
    const double a2 = 2.0 * m1 + 2.0 * c - 4.0 * mh;
    const double a1 = m1 - c - a2;
    double max_quad_rel = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double pred = a2 * grid[gi] * grid[gi] + a1 * grid[gi] + c;
        max_quad_rel = std::max(max_quad_rel, std::abs(pred - batch_mse[gi]) / batch_mse[gi]);
    }

    const bool pass = worst_gap <= 1e-12 && max_quad_rel <= 1e-10;
    return {"trade-off convexity and quadraticity", pass,
            "max per-sample chord violation " + fmt(worst_gap) + " (bound 0); quadratic-fit rel " +
                fmt(max_quad_rel) + " (bound 1e-10)"};
}

CheckResult check_tradeoff_advantage(std::uint64_t seed) {
    SweepConfig cfg;
    cfg.prior = benchmark_prior_2d();
    cfg.n_samples = 2000;
    cfg.rho_list = {75.0 / 127.5};
    cfg.lambda_grid = SweepConfig::default_lambda_grid();
    cfg.schedule_lens = {168};
    cfg.variants = {Variant::DDIM};
    cfg.seed = seed;
    const auto records = run_sweep(cfg);
    if (records.size() != 21) {
        return {"trade-off advantage", false,
                "expected 21 sweep rows, got " + std::to_string(records.size())};
    }

    const double mse0 = records.front().mse;   // lambda = 0, pure multi-step
    const double mse1 = records.back().mse;    // lambda = 1, pure one-step
    const double fr0 = records.front().frechet;
    const double fr1 = records.back().frechet;

    bool chord_ok = true, monotone_ok = true;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double l = records[i].lambda;
        if (records[i].mse > l * mse1 + (1.0 - l) * mse0 + 1e-12) chord_ok = false;
        if (i > 0 && records[i].mse > records[i - 1].mse + 1e-12) monotone_ok = false;
    }
    // some interior lambda must strictly beat an endpoint in one metric
    bool dominates = false;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        if (records[i].mse < mse0 - 1e-6 || records[i].mse < mse1 - 1e-6 ||
            records[i].frechet < fr0 - 1e-6 || records[i].frechet < fr1 - 1e-6) {
            dominates = true;
        }
    }
    const bool pass = chord_ok && monotone_ok && dominates;
    return {"trade-off advantage", pass,
            std::string("chord ") + (chord_ok ? "ok" : "violated") + "; MSE monotone " +
                (monotone_ok ? "ok" : "violated") + "; interior dominance " +
                (dominates ? "found" : "absent") + " (MSE " + fmt(mse0) + " -> " + fmt(mse1) +
                ", frechet " + fmt(fr0) + " -> " + fmt(fr1) + ")"};
}

CheckResult check_generation_sanity(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    GaussianMixturePrior prior;
    prior.weights = {0.4, 0.6};
    prior.means = {Signal({1}, {-1.0}), Signal({1}, {1.0})};
    prior.variances = {0.3, 0.2};
    const auto predictor = gmm_epsilon_predictor(prior);

    const double abN = s.alpha_bar_at(s.N);
    const double rho = std::sqrt((1.0 - abN) / abN);
    const InsertionPoint ip = insertion_point(s, rho);
    std::vector<std::size_t> tau(s.N);
    std::iota(tau.begin(), tau.end(), 1);
    const InferencePlan plan = subsample(s, tau);

    const std::size_t n = 5000;
    std::vector<Signal> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        RngStream rng(seed, 600 + t);
        const double z = rng.normal();  // x_N itself; y is the unscaled preimage
        RngStream run_rng(seed, 700000 + t);
        out[t] = run_inference(Signal({1}, {z / ip.scale}), rho, plan, s, Variant::DDIM,
                               *predictor, run_rng);
    }
    const double fr = gaussian_frechet(fit_gaussian(out), exact_moments(prior));
    return {"full-chain generation sanity", fr <= 0.02,
            "frechet(output fit, exact prior) = " + fmt(fr) + " (bound 0.02)"};
}

CheckResult check_blind_mode(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    double worst_rel = 0.0;
    long worst_dk = 0;
    for (double rho8 : {15.0, 25.0, 50.0, 75.0}) {
        const double rho = rho8 / 127.5;
        const long k_true = static_cast<long>(insertion_point(s, rho).k_hat);
        for (int trial = 0; trial < 100; ++trial) {
            RngStream rng(seed, 800000 + static_cast<std::uint64_t>(rho8 * 1000) +
                                    static_cast<std::uint64_t>(trial));
            const Signal x = smooth_texture(256, 256, rng);
            const Signal y = add_noise(x, rho, rng);
            const NoiseEstimate est = estimate_rho(y);
            worst_rel = std::max(worst_rel, std::abs(est.rho_hat / rho - 1.0));
            const long k_est = static_cast<long>(insertion_point(s, est.rho_hat).k_hat);
            worst_dk = std::max(worst_dk, std::labs(k_est - k_true));
        }
    }
    const bool pass = worst_rel <= 0.05 && worst_dk <= 2;
    return {"blind noise estimation", pass,
            "worst rel error " + fmt(worst_rel) + " (bound 0.05); worst |dk| = " +
                std::to_string(worst_dk) + " (bound 2)"};
}

CheckResult check_forward_marginal(std::uint64_t seed) {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const std::size_t k = 168;
    const double x0 = 0.7;
    const std::size_t M = 100000;

    double sum_i = 0.0, sumsq_i = 0.0, sum_d = 0.0, sumsq_d = 0.0;
    for (std::size_t t = 0; t < M; ++t) {
        RngStream rng(seed, 900000 + t);
        double x = x0;
        for (std::size_t step = 1; step <= k; ++step) {
            const double a = s.alpha_at(step);
            x = std::sqrt(a) * x + std::sqrt(1.0 - a) * rng.normal();
        }
        sum_i += x;
        sumsq_i += x * x;
        const double ab = s.alpha_bar_at(k);
        const double xd = std::sqrt(ab) * x0 + std::sqrt(1.0 - ab) * rng.normal();
        sum_d += xd;
        sumsq_d += xd * xd;
    }
    const double mean_i = sum_i / M, mean_d = sum_d / M;
    const double var_i = sumsq_i / M - mean_i * mean_i;
    const double var_d = sumsq_d / M - mean_d * mean_d;
    const double sigma = std::sqrt(1.0 - s.alpha_bar_at(k));
    const double mean_bound = 3.0 * sigma * std::sqrt(2.0) / std::sqrt(static_cast<double>(M));
    const double var_rel = std::abs(var_i / var_d - 1.0);

    const bool pass = std::abs(mean_i - mean_d) <= mean_bound && var_rel <= 0.02;
    return {"forward-marginal equivalence", pass,
            "|mean gap| = " + fmt(std::abs(mean_i - mean_d)) + " (bound " + fmt(mean_bound) +
                "); variance ratio off by " + fmt(var_rel) + " (bound 0.02)"};
}

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
    return {
        check_subsample_preservation(seed), check_scaling_identity(seed),
        check_ddim_x0_preservation(),       check_mmse_equivalence(seed),
        check_one_step_agreement(seed),     check_tradeoff_convexity(seed),
        check_blind_mode(seed),             check_forward_marginal(seed),
    };
}

}  // namespace lcdd
