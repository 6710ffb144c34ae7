#include <cmath>
#include <vector>

#include "doctest.h"
#include "lcdd/metrics.hpp"
#include "lcdd/signal.hpp"

using namespace lcdd;

namespace {

// Kahan-compensated re-summation oracle for MSE.
double mse_compensated(const Signal& a, const Signal& b) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        const double term = d * d - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("mse examples") {
    const Signal a = Signal::constant({10}, 0.4);
    CHECK(mse(a, a) == 0.0);

    const Signal b = Signal::constant({10}, 0.5);
    CHECK(mse(a, b) == doctest::Approx(0.01).epsilon(1e-14));

    RngStream rng(21, 0);
    const Signal x = standard_normal(rng, {10000});
    const Signal y = standard_normal(rng, {10000});
    CHECK(std::abs(mse(x, y) - mse_compensated(x, y)) <= 1e-15 * mse_compensated(x, y) * 100);

    CHECK_THROWS_AS(mse(a, Signal::zeros({3})), ShapeError);
}

TEST_CASE("psnr examples") {
    Signal a = Signal::zeros({100});
    Signal b = Signal::constant({100}, 0.1);
    CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(psnr(a, a) == 100.0);
    CHECK(psnr(a, b) == psnr(b, a));

    // 8-bit convention: [0,255] with peak 255 equals [0,1] with peak 1
    Signal a255 = scale(255.0, a);
    Signal b255 = scale(255.0, b);
    CHECK(std::abs(psnr(a255, b255, 255.0) - psnr(a, b, 1.0)) <= 1e-9);
}

TEST_CASE("gaussian_frechet closed-form cases") {
    GaussianFit a{{0.0}, {1.0}, 10};
    GaussianFit b{{1.0}, {1.0}, 10};
    CHECK(gaussian_frechet(a, a) == doctest::Approx(0.0));
    CHECK(gaussian_frechet(a, b) == doctest::Approx(1.0).epsilon(1e-12));

    GaussianFit c{{0.0, 0.0}, {1.0, 0.0, 0.0, 4.0}, 10};
    GaussianFit d{{0.0, 0.0}, {4.0, 0.0, 0.0, 1.0}, 10};
    CHECK(gaussian_frechet(c, d) == doctest::Approx(2.0).epsilon(1e-10));

    CHECK_THROWS_AS(gaussian_frechet(a, c), std::invalid_argument);
}

TEST_CASE("gaussian_frechet symmetry, nonnegativity, diagonal reduction") {
    RngStream rng(22, 0);
    for (int t = 0; t < 20; ++t) {
        const std::size_t dim = 3;
        GaussianFit a, b;
        a.mean = {rng.normal(), rng.normal(), rng.normal()};
        b.mean = {rng.normal(), rng.normal(), rng.normal()};
        a.covariance.assign(dim * dim, 0.0);
        b.covariance.assign(dim * dim, 0.0);
        double diag_ref = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double va = 0.1 + rng.uniform();
            const double vb = 0.1 + rng.uniform();
            a.covariance[i * dim + i] = va;
            b.covariance[i * dim + i] = vb;
            const double ds = std::sqrt(va) - std::sqrt(vb);
            diag_ref += ds * ds;
            const double dm = a.mean[i] - b.mean[i];
            diag_ref += dm * dm;
        }
        const double fab = gaussian_frechet(a, b);
        const double fba = gaussian_frechet(b, a);
        CHECK(fab >= 0.0);
        CHECK(std::abs(fab - fba) <= 1e-10 * (1.0 + fab));
        // commuting (diagonal) case reduces to ||dmu||^2 + ||sqrtA - sqrtB||_F^2
        CHECK(std::abs(fab - diag_ref) <= 1e-10 * (1.0 + diag_ref));
    }
}

TEST_CASE("fit_gaussian examples") {
    const std::vector<Signal> two = {Signal({1}, {0.0}), Signal({1}, {2.0})};
    const GaussianFit f = fit_gaussian(two);
    CHECK(f.mean[0] == doctest::Approx(1.0));
    CHECK(f.covariance[0] == doctest::Approx(2.0));

    const std::vector<Signal> constant = {Signal({1}, {0.3}), Signal({1}, {0.3}),
                                          Signal({1}, {0.3})};
    CHECK(fit_gaussian(constant).covariance[0] == 0.0);

    CHECK_THROWS_AS(fit_gaussian({Signal({1}, {0.0})}), std::invalid_argument);
}

TEST_CASE("fit_gaussian converges to the true parameters") {
    RngStream rng(23, 0);
    std::vector<Signal> samples;
    samples.reserve(100000);
    for (int i = 0; i < 100000; ++i) samples.push_back(standard_normal(rng, {2}));
    GaussianFit exact;
    exact.mean = {0.0, 0.0};
    exact.covariance = {1.0, 0.0, 0.0, 1.0};
    CHECK(gaussian_frechet(fit_gaussian(samples), exact) <= 0.01);
}

TEST_CASE("empirical_w1_1d examples") {
    CHECK(empirical_w1_1d({3.0, 1.0, 2.0}, {2.0, 3.0, 1.0}) == 0.0);
    CHECK(empirical_w1_1d({0.0, 0.0}, {1.0, 1.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(empirical_w1_1d({1.0}, {1.0, 2.0}), std::invalid_argument);

    // W1 between shifted normals equals the shift
    RngStream rng(24, 0);
    std::vector<double> a(100000), b(100000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal() + 0.5;
    }
    CHECK(empirical_w1_1d(a, b) == doctest::Approx(0.5).epsilon(0.02));
}
