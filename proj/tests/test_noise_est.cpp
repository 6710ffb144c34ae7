#include <cmath>

#include "doctest.h"
#include "lcdd/data.hpp"
#include "lcdd/noise_est.hpp"

using namespace lcdd;

TEST_CASE("linear ramp has zero estimate") {
    const std::size_t n = 32;
    Signal ramp = Signal::zeros({n, n});
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            ramp.values[r * n + c] = 0.01 * static_cast<double>(r) + 0.02 * static_cast<double>(c);
        }
    }
    CHECK(estimate_rho(ramp).rho_hat == 0.0);
}

TEST_CASE("constant image plus noise recovers rho") {
    const double rho = 0.2;
    double rel_sum = 0.0;
    const int seeds = 30;
    for (int t = 0; t < seeds; ++t) {
        RngStream rng(500 + t, 0);
        const Signal y = add_noise(Signal::zeros({128, 128}), rho, rng);
        rel_sum += std::abs(estimate_rho(y).rho_hat / rho - 1.0);
    }
    CHECK(rel_sum / seeds < 0.05);
}

TEST_CASE("smooth texture plus noise stays within 5 percent") {
    const double rho = 50.0 / 127.5;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RngStream rng(900 + t, 0);
        Signal x = Signal::zeros({128, 128});
        const double phase = rng.uniform() * 6.28;
        for (std::size_t r = 0; r < 128; ++r) {
            for (std::size_t c = 0; c < 128; ++c) {
                x.values[r * 128 + c] =
                    0.4 * std::sin(6.28 * (static_cast<double>(r) / 128.0) + phase) *
                    std::cos(6.28 * static_cast<double>(c) / 128.0);
            }
        }
        const Signal y = add_noise(x, rho, rng);
        worst = std::max(worst, std::abs(estimate_rho(y).rho_hat / rho - 1.0));
    }
    CHECK(worst <= 0.05);
}

TEST_CASE("scale equivariance") {
    RngStream rng(31, 0);
    const Signal y = add_noise(Signal::zeros({64, 64}), 0.3, rng);
    const double base = estimate_rho(y).rho_hat;
    const double scaled = estimate_rho(scale(2.5, y)).rho_hat;
    CHECK(scaled == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("adding noise does not decrease the estimate on average") {
    double clean_sum = 0.0, noisy_sum = 0.0;
    for (int t = 0; t < 10; ++t) {
        RngStream rng(41 + t, 0);
        const Signal x = add_noise(Signal::zeros({64, 64}), 0.1, rng);
        clean_sum += estimate_rho(x).rho_hat;
        const Signal y = add_noise(x, 0.2, rng);
        noisy_sum += estimate_rho(y).rho_hat;
    }
    CHECK(noisy_sum >= clean_sum - 1e-6);
}

TEST_CASE("grid too small is rejected") {
    CHECK_THROWS_AS(estimate_rho(Signal::zeros({2, 5})), std::invalid_argument);
    CHECK_THROWS_AS(estimate_rho(Signal::zeros({5, 2})), std::invalid_argument);
    CHECK_THROWS_AS(estimate_rho(Signal::zeros({25})), std::invalid_argument);
}
