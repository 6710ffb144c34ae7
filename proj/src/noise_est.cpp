#include "lcdd/noise_est.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lcdd {

namespace {

double median_inplace(std::vector<double>& v) {
    const std::size_t n = v.size();
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(v.begin(), mid);
    return 0.5 * (lo + hi);
}

}  // namespace

NoiseEstimate estimate_rho(const Signal& y) {
    std::size_t rows, cols, channels;
    if (y.shape.size() == 2) {
        rows = y.shape[0];
        cols = y.shape[1];
        channels = 1;
    } else if (y.shape.size() == 3) {
        rows = y.shape[0];
        cols = y.shape[1];
        channels = y.shape[2];
    } else {
        throw std::invalid_argument("estimate_rho: expected a 2-D grid (optional channel dim)");
    }
    if (rows < 3 || cols < 3) {
        throw std::invalid_argument("estimate_rho: both grid dimensions must be >= 3");
    }

    const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
    auto at = [&](std::size_t r, std::size_t c, std::size_t ch) {
        return y.values[(r * cols + c) * channels + ch];
    };

    std::vector<double> residuals;
    residuals.reserve(2 * rows * cols * channels);
    for (std::size_t ch = 0; ch < channels; ++ch) {
        // second differences along rows
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 1; c + 1 < cols; ++c) {
                residuals.push_back(
                    std::abs(at(r, c - 1, ch) - 2.0 * at(r, c, ch) + at(r, c + 1, ch)) * inv_sqrt6);
            }
        }
        // and along columns
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 1; r + 1 < rows; ++r) {
                residuals.push_back(
                    std::abs(at(r - 1, c, ch) - 2.0 * at(r, c, ch) + at(r + 1, c, ch)) * inv_sqrt6);
            }
        }
    }

    NoiseEstimate est;
    est.n_residuals = residuals.size();
    est.rho_hat = 1.4826 * median_inplace(residuals);
    return est;
}

}  // namespace lcdd
