#include <cmath>

#include "doctest.h"
#include "lcdd/signal.hpp"

using namespace lcdd;

TEST_CASE("standard_normal is deterministic for a fixed stream") {
    RngStream a(7, 0), b(7, 0);
    const Signal x = standard_normal(a, {4});
    const Signal y = standard_normal(b, {4});
    for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == y[i]);
}

TEST_CASE("distinct stream indices give different draws") {
    RngStream a(7, 0), b(7, 1);
    const Signal x = standard_normal(a, {4});
    const Signal y = standard_normal(b, {4});
    bool any_diff = false;
    for (std::size_t i = 0; i < 4; ++i) any_diff |= (x[i] != y[i]);
    CHECK(any_diff);
}

TEST_CASE("standard_normal moments over 1e6 draws") {
    RngStream rng(42, 0);
    const std::size_t n = 1000000;
    const Signal x = standard_normal(rng, {n});
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += x[i];
        sumsq += x[i] * x[i];
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.005);
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("per-coordinate independence: empirical covariance within 0.01") {
    RngStream rng(43, 0);
    const std::size_t n = 1000000;
    double sx = 0.0, sy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Signal v = standard_normal(rng, {2});
        sx += v[0];
        sy += v[1];
        sxy += v[0] * v[1];
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    CHECK(std::abs(cov) < 0.01);
}

TEST_CASE("axpy examples") {
    const Signal x({2}, {0.0, 2.0});
    const Signal y({2}, {1.0, 0.0});

    const Signal id = axpy(1.0, x, 0.0, y);
    CHECK(id[0] == 0.0);
    CHECK(id[1] == 2.0);

    const Signal mid = axpy(0.5, x, 0.5, y);
    CHECK(mid[0] == doctest::Approx(0.5));
    CHECK(mid[1] == doctest::Approx(1.0));

    const Signal a({2}, {1.0, 1.0});
    const Signal b({2}, {1.0, 2.0});
    const Signal r = axpy(2.0, a, -1.0, b);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("axpy is bitwise exact against zero") {
    RngStream rng(5, 9);
    const Signal x = standard_normal(rng, {64});
    const Signal z = Signal::zeros({64});
    const Signal r = axpy(1.0, x, 1.0, z);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(r[i] == x[i]);
}

TEST_CASE("shape contracts") {
    RngStream rng(0, 0);
    CHECK_THROWS_AS(standard_normal(rng, {}), std::invalid_argument);
    const Signal a = Signal::zeros({2});
    const Signal b = Signal::zeros({3});
    CHECK_THROWS_AS(axpy(1.0, a, 1.0, b), ShapeError);
}
