#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "lcdd/data.hpp"
#include "lcdd/metrics.hpp"
#include "lcdd/noise_est.hpp"
#include "lcdd/pipeline.hpp"
#include "lcdd/selftest.hpp"
#include "lcdd/sweep.hpp"

namespace {

using namespace lcdd;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Signal load_signal(const std::string& path) {
    if (ends_with(path, ".pgm") || ends_with(path, ".ppm")) {
        return image_to_model(read_image(path));
    }
    return read_tensor(path);
}

void save_signal(const std::string& path, const Signal& s) {
    if (ends_with(path, ".pgm") || ends_with(path, ".ppm")) {
        write_image(path, model_to_image(s));
    } else {
        write_tensor(path, s);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Per-pixel prior used when none is configured: two symmetric mid-tone modes.
GaussianMixturePrior default_pixel_prior() {
    GaussianMixturePrior p;
    p.weights = {0.5, 0.5};
    p.means = {Signal({1}, {-0.5}), Signal({1}, {0.5})};
    p.variances = {0.25, 0.25};
    return p;
}

std::shared_ptr<EpsilonPredictor> make_predictor(const std::string& prior_path,
                                                 const Signal& input) {
    GaussianMixturePrior prior =
        prior_path.empty() ? default_pixel_prior() : GaussianMixturePrior::from_json(read_file(prior_path));
    if (prior.dim() == 1 && input.size() != 1) {
        return pointwise_gmm_epsilon_predictor(std::move(prior));
    }
    return gmm_epsilon_predictor(std::move(prior));
}

int cmd_denoise(const std::string& input, const std::string& output, double rho, double rho8,
                bool blind, double lambda, std::size_t steps, const std::string& variant,
                std::uint64_t seed, const std::string& clean_path, const std::string& prior_path) {
    const Signal y = load_signal(input);

    double rho_model;
    if (blind) {
        rho_model = estimate_rho(y).rho_hat;
        std::printf("rho_hat = %.6f (blind estimate)\n", rho_model);
    } else if (rho8 > 0.0) {
        rho_model = rho8 / 127.5;
    } else {
        rho_model = rho;
    }
    if (!(rho_model > 0.0)) {
        std::fprintf(stderr, "error: need --rho, --rho8 or --blind with positive noise level\n");
        return kExitUsage;
    }

    LcddConfig cfg;
    cfg.lambda = lambda;
    cfg.multi_steps = steps;
    cfg.variant = (variant == "ddpm") ? Variant::DDPM : Variant::DDIM;
    cfg.seed = seed;

    const NoiseSchedule schedule = linear_beta_schedule(1000);
    const auto predictor = make_predictor(prior_path, y);
    const DenoiseResult res = lcdd_denoise(y, rho_model, schedule, *predictor, cfg);

    std::printf("k_hat = %zu\n", res.k_hat);
    const std::string stem =
        ends_with(output, ".pgm") || ends_with(output, ".ppm") || ends_with(output, ".lcddt")
            ? output.substr(0, output.rfind('.'))
            : output;
    const std::string ext = output.size() > stem.size() ? output.substr(stem.size()) : ".lcddt";
    save_signal(stem + "_id" + ext, res.i_d);
    save_signal(stem + "_ip" + ext, res.i_p);
    save_signal(stem + "_lc" + ext, res.lc);

    if (!clean_path.empty()) {
        const Signal clean = load_signal(clean_path);
        auto display = [](const Signal& s) {
            Signal out = s;
            for (auto& v : out.values) v = std::clamp((v + 1.0) * 0.5, 0.0, 1.0);
            return out;
        };
        std::printf("mse(lc)  = %.8f\n", mse(res.lc, clean));
        std::printf("psnr(id) = %.4f dB\n", psnr(display(res.i_d), display(clean)));
        std::printf("psnr(ip) = %.4f dB\n", psnr(display(res.i_p), display(clean)));
        std::printf("psnr(lc) = %.4f dB\n", psnr(display(res.lc), display(clean)));
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& output,
              bool seed_override, std::uint64_t seed) {
    SweepConfig cfg;
    try {
        cfg = SweepConfig::from_json(read_file(config_path));
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    }
    if (seed_override) cfg.seed = seed;
    const std::string csv = sweep_csv(run_sweep(cfg));
    if (output.empty() || output == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "error: cannot open %s\n", output.c_str());
            return kExitFailure;
        }
        out << csv;
    }
    return kExitOk;
}

int cmd_estimate_noise(const std::string& input) {
    const Signal y = load_signal(input);
    const NoiseEstimate est = estimate_rho(y);
    const NoiseSchedule schedule = linear_beta_schedule(1000);
    std::printf("rho_hat  = %.6f (model units)\n", est.rho_hat);
    std::printf("rho_hat8 = %.2f (8-bit units)\n", est.rho_hat * 127.5);
    if (est.rho_hat > 0.0) {
        std::printf("k_hat    = %zu\n", insertion_point(schedule, est.rho_hat).k_hat);
    } else {
        std::printf("k_hat    = 0 (no noise detected)\n");
    }
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const auto results = run_selftest(seed);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%-45s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("selftest %s in %.1f s\n", all_pass ? "passed" : "FAILED", secs);
    return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LCDD: denoising by inserting scaled noisy signals into a diffusion reverse process"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    const auto* seed_opt = app.add_option("--seed,-s", seed, "master seed for all stochastic work");

    auto* denoise = app.add_subcommand("denoise", "denoise one signal, writing I_D/I_P/LC outputs");
    std::string input, output, clean_path, prior_path, variant = "ddim";
    double rho = 0.0, rho8 = 0.0, lambda = 0.5;
    bool blind = false;
    std::size_t steps = 6;
    denoise->add_option("--input,-i", input, "input file (PGM/PPM/LCDDT1)")->required();
    denoise->add_option("--output,-o", output, "output path; _id/_ip/_lc suffixes are appended")
        ->required();
    denoise->add_option("--rho", rho, "noise level in model units");
    denoise->add_option("--rho8", rho8, "noise level in 8-bit units (divided by 127.5)");
    denoise->add_flag("--blind", blind, "estimate the noise level from the input");
    denoise->add_option("--lambda", lambda, "combination factor in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    denoise->add_option("--steps", steps, "multi-step schedule length");
    denoise->add_option("--variant", variant, "ddpm or ddim")
        ->check(CLI::IsMember({"ddpm", "ddim"}));
    denoise->add_option("--clean", clean_path, "ground truth for metric reporting");
    denoise->add_option("--prior", prior_path, "GMM prior JSON for the analytic predictor");

    auto* sweep = app.add_subcommand("sweep", "run a trade-off sweep from a JSON config, emit CSV");
    std::string config_path, sweep_out;
    sweep->add_option("--config,-c", config_path, "JSON sweep configuration")->required();
    sweep->add_option("--output,-o", sweep_out, "CSV output path (default stdout)");

    auto* estimate = app.add_subcommand("estimate-noise", "blind noise-level estimate");
    std::string est_input;
    estimate->add_option("--input,-i", est_input, "input file (PGM/PPM/LCDDT1)")->required();

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (denoise->parsed()) {
            return cmd_denoise(input, output, rho, rho8, blind, lambda, steps, variant, seed,
                               clean_path, prior_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, sweep_out, seed_opt->count() > 0, seed);
        }
        if (estimate->parsed()) return cmd_estimate_noise(est_input);
        if (selftest->parsed()) return cmd_selftest(seed);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
