#include "lcdd/sweep.hpp"

#include "lcdd/data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lcdd {

std::vector<double> SweepConfig::default_lambda_grid() {
    std::vector<double> grid(21);
    for (int k = 0; k <= 20; ++k) grid[static_cast<std::size_t>(k)] = 0.05 * k;
    return grid;
}

SweepConfig SweepConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("sweep config: invalid JSON: ") + e.what());
    }
    auto require = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("sweep config: missing key '") + key + "'");
        }
        return j.at(key);
    };

    SweepConfig cfg;
    try {
        cfg.prior = GaussianMixturePrior::from_json(require("prior").dump());
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("sweep config: bad 'prior': ") + e.what());
    }
    cfg.n_samples = require("n_samples").get<std::size_t>();
    cfg.rho_list = require("rho_list").get<std::vector<double>>();
    cfg.schedule_lens = require("schedule_lens").get<std::vector<std::size_t>>();
    cfg.seed = require("seed").get<std::uint64_t>();
    if (j.contains("lambda_grid")) {
        cfg.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
    } else {
        cfg.lambda_grid = default_lambda_grid();
    }
    for (const auto& v : require("variants")) {
        const auto name = v.get<std::string>();
        if (name == "ddpm") {
            cfg.variants.push_back(Variant::DDPM);
        } else if (name == "ddim") {
            cfg.variants.push_back(Variant::DDIM);
        } else {
            throw std::invalid_argument("sweep config: bad 'variants' entry '" + name + "'");
        }
    }
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        cfg.schedule_N = s.value("N", cfg.schedule_N);
        cfg.beta1 = s.value("beta1", cfg.beta1);
        cfg.betaN = s.value("betaN", cfg.betaN);
    }
    if (cfg.n_samples < 2) throw std::invalid_argument("sweep config: 'n_samples' must be >= 2");
    if (cfg.rho_list.empty()) throw std::invalid_argument("sweep config: 'rho_list' is empty");
    if (cfg.variants.empty()) throw std::invalid_argument("sweep config: 'variants' is empty");
    if (cfg.schedule_lens.empty()) {
        throw std::invalid_argument("sweep config: 'schedule_lens' is empty");
    }
    for (double l : cfg.lambda_grid) {
        if (!(l >= 0.0 && l <= 1.0)) {
            throw std::invalid_argument("sweep config: 'lambda_grid' values must be in [0,1]");
        }
    }
    return cfg;
}

GaussianFit exact_moments(const GaussianMixturePrior& prior) {
    prior.validate();
    const std::size_t d = prior.dim();
    GaussianFit fit;
    fit.samples = 0;
    fit.mean.assign(d, 0.0);
    for (std::size_t j = 0; j < prior.components(); ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            fit.mean[i] += prior.weights[j] * prior.means[j].values[i];
        }
    }
    fit.covariance.assign(d * d, 0.0);
    for (std::size_t j = 0; j < prior.components(); ++j) {
        const double w = prior.weights[j];
        for (std::size_t i = 0; i < d; ++i) {
            const double mi = prior.means[j].values[i] - fit.mean[i];
            fit.covariance[i * d + i] += w * prior.variances[j];
            for (std::size_t l = 0; l < d; ++l) {
                fit.covariance[i * d + l] += w * mi * (prior.means[j].values[l] - fit.mean[l]);
            }
        }
    }
    return fit;
}

namespace {

double display_mse(const std::vector<Signal>& out, const std::vector<Signal>& clean) {
    // model [-1,1] -> display [0,1] with clipping, then batch MSE
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < out.size(); ++s) {
        for (std::size_t i = 0; i < out[s].size(); ++i) {
            const double a = std::clamp((out[s].values[i] + 1.0) * 0.5, 0.0, 1.0);
            const double b = std::clamp((clean[s].values[i] + 1.0) * 0.5, 0.0, 1.0);
            sum += (a - b) * (a - b);
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

std::vector<double> flatten(const std::vector<Signal>& sigs) {
    std::vector<double> out;
    for (const auto& s : sigs) out.insert(out.end(), s.values.begin(), s.values.end());
    return out;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    const NoiseSchedule schedule = linear_beta_schedule(cfg.schedule_N, cfg.beta1, cfg.betaN);
    const GaussianFit prior_fit = exact_moments(cfg.prior);

    std::vector<SweepRecord> records;
    for (Variant variant : cfg.variants) {
        for (double rho : cfg.rho_list) {
            const InsertionPoint ip = insertion_point(schedule, rho);
            const InferencePlan one_step = subsample(schedule, {ip.k_hat});
            for (std::size_t len : cfg.schedule_lens) {
                const std::size_t steps = std::min(len, ip.k_hat);
                const InferencePlan multi = subsample(schedule, equidistant_tau(ip.k_hat, steps));

                std::vector<Signal> clean(cfg.n_samples);
                std::vector<Signal> i_d(cfg.n_samples);
                std::vector<Signal> i_p(cfg.n_samples);
                const auto predictor = gmm_epsilon_predictor(cfg.prior);
                for (std::size_t s = 0; s < cfg.n_samples; ++s) {
                    RngStream prior_rng(cfg.seed, 4 * s);
                    RngStream noise_rng(cfg.seed, 4 * s + 1);
                    RngStream rng_d(cfg.seed, 4 * s + 2);
                    RngStream rng_p(cfg.seed, 4 * s + 3);
                    clean[s] = sample_prior_one(cfg.prior, prior_rng);
                    const Signal y = add_noise(clean[s], rho, noise_rng);
                    i_d[s] = run_inference(y, rho, one_step, schedule, variant, *predictor, rng_d);
                    i_p[s] = run_inference(y, rho, multi, schedule, variant, *predictor, rng_p);
                }

                const std::vector<double> clean_flat = flatten(clean);
                for (double lambda : cfg.lambda_grid) {
                    std::vector<Signal> lc(cfg.n_samples);
                    double mse_sum = 0.0;
                    for (std::size_t s = 0; s < cfg.n_samples; ++s) {
                        lc[s] = linear_combine(i_d[s], i_p[s], lambda);
                        mse_sum += mse(lc[s], clean[s]);
                    }
                    SweepRecord rec;
                    rec.variant = variant == Variant::DDPM ? "ddpm" : "ddim";
                    rec.rho = rho;
                    rec.k_hat = ip.k_hat;
                    rec.schedule_len = steps;
                    rec.lambda = lambda;
                    rec.mse = mse_sum / static_cast<double>(cfg.n_samples);
                    const double dmse = display_mse(lc, clean);
                    rec.psnr_db = dmse < 1e-10 ? 100.0 : 10.0 * std::log10(1.0 / dmse);
                    rec.frechet = gaussian_frechet(fit_gaussian(lc), prior_fit);
                    rec.w1_1d = empirical_w1_1d(flatten(lc), clean_flat);
                    rec.seed = cfg.seed;
                    records.push_back(std::move(rec));
                }
            }
        }
    }

    std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
        if (a.variant != b.variant) return a.variant < b.variant;
        if (a.rho != b.rho) return a.rho < b.rho;
        if (a.schedule_len != b.schedule_len) return a.schedule_len < b.schedule_len;
        return a.lambda < b.lambda;
    });
    return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "variant,rho,k_hat,schedule_len,lambda,mse,psnr_db,frechet,w1_1d,seed\n";
    out.precision(17);
    for (const auto& r : records) {
        out << r.variant << ',' << r.rho << ',' << r.k_hat << ',' << r.schedule_len << ','
            << r.lambda << ',' << r.mse << ',' << r.psnr_db << ',' << r.frechet << ',' << r.w1_1d
            << ',' << r.seed << '\n';
    }
    return out.str();
}

}  // namespace lcdd
