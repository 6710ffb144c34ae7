#include <cmath>

#include "doctest.h"
#include "lcdd/pipeline.hpp"

using namespace lcdd;

TEST_CASE("linear_combine examples") {
    const Signal i_d({2}, {0.0, 2.0});
    const Signal i_p({2}, {1.0, 0.0});

    const Signal at1 = linear_combine(i_d, i_p, 1.0);
    CHECK(at1[0] == i_d[0]);
    CHECK(at1[1] == i_d[1]);

    const Signal at0 = linear_combine(i_d, i_p, 0.0);
    CHECK(at0[0] == i_p[0]);
    CHECK(at0[1] == i_p[1]);

    const Signal mid = linear_combine(i_d, i_p, 0.5);
    CHECK(mid[0] == doctest::Approx(0.5));
    CHECK(mid[1] == doctest::Approx(1.0));

    CHECK(linear_combine(Signal({1}, {10.0}), Signal({1}, {0.0}), 0.2)[0] ==
          doctest::Approx(2.0));

    CHECK_THROWS_AS(linear_combine(i_d, i_p, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(linear_combine(i_d, Signal::zeros({3}), 0.5), ShapeError);
}

namespace {

GaussianMixturePrior two_modes() {
    GaussianMixturePrior p;
    p.weights = {0.5, 0.5};
    p.means = {Signal({2}, {-0.8, 0.4}), Signal({2}, {0.8, -0.4})};
    p.variances = {0.3, 0.3};
    return p;
}

}  // namespace

TEST_CASE("lcdd_denoise endpoints are bitwise") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const auto pred = gmm_epsilon_predictor(two_modes());
    RngStream rng(8, 0);
    const Signal y = standard_normal(rng, {2});

    LcddConfig cfg;
    cfg.multi_steps = 6;
    cfg.seed = 17;

    cfg.lambda = 1.0;
    const DenoiseResult r1 = lcdd_denoise(y, 0.5, s, *pred, cfg);
    CHECK(r1.lc.values == r1.i_d.values);

    cfg.lambda = 0.0;
    const DenoiseResult r0 = lcdd_denoise(y, 0.5, s, *pred, cfg);
    CHECK(r0.lc.values == r0.i_p.values);

    // lc invariant at interior lambda
    cfg.lambda = 0.3;
    const DenoiseResult r = lcdd_denoise(y, 0.5, s, *pred, cfg);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(r.lc[i] - (0.3 * r.i_d[i] + 0.7 * r.i_p[i])) <= 1e-15);
    }
}

TEST_CASE("lcdd_denoise with constant x0 predictor collapses to x0") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const Signal x0({2}, {0.3, -0.5});
    const auto pred = constant_x0_predictor(x0);
    RngStream rng(9, 0);
    const Signal y = axpy(1.0, x0, 0.4, standard_normal(rng, {2}));

    LcddConfig cfg;
    cfg.lambda = 0.35;
    cfg.multi_steps = 12;
    const DenoiseResult r = lcdd_denoise(y, 0.4, s, *pred, cfg);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(r.i_d[i] - x0[i]) <= 1e-10);
        CHECK(std::abs(r.i_p[i] - x0[i]) <= 1e-10);
        CHECK(std::abs(r.lc[i] - x0[i]) <= 1e-10);
    }
}

TEST_CASE("multi_steps = 1 collapses i_p onto i_d for DDIM") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const auto pred = gmm_epsilon_predictor(two_modes());
    RngStream rng(10, 0);
    const Signal y = standard_normal(rng, {2});

    LcddConfig cfg;
    cfg.multi_steps = 1;
    cfg.lambda = 0.5;
    const DenoiseResult r = lcdd_denoise(y, 0.6, s, *pred, cfg);
    for (std::size_t i = 0; i < 2; ++i) CHECK(r.i_p[i] == doctest::Approx(r.i_d[i]).epsilon(1e-14));
}

TEST_CASE("multi_steps beyond k_hat clamps to k_hat") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const auto pred = gmm_epsilon_predictor(two_modes());
    const double rho = 0.05;  // small rho, small k_hat
    const std::size_t k_hat = insertion_point(s, rho).k_hat;
    RngStream rng(11, 0);
    const Signal y = standard_normal(rng, {2});

    LcddConfig cfg;
    cfg.multi_steps = 100000;
    const DenoiseResult r = lcdd_denoise(y, rho, s, *pred, cfg);
    CHECK(r.k_hat == k_hat);
    CHECK(r.lc.all_finite());
}

TEST_CASE("lcdd_denoise rejects nonpositive rho") {
    const NoiseSchedule s = linear_beta_schedule(1000);
    const auto pred = zero_predictor();
    LcddConfig cfg;
    CHECK_THROWS_AS(lcdd_denoise(Signal({1}, {0.0}), 0.0, s, *pred, cfg), std::invalid_argument);
}
