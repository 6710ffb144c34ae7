#include "lcdd/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcdd {

double mse(const Signal& a, const Signal& b) {
    require_same_shape(a, b, "mse");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

double psnr(const Signal& a, const Signal& b, double peak) {
    const double m = mse(a, b);
    if (m < peak * peak * 1e-10) return 100.0;
    return 10.0 * std::log10(peak * peak / m);
}

namespace {

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -1e-10) throw std::invalid_argument("gaussian_frechet: matrix not PSD");
        ev[i] = std::sqrt(std::max(ev[i], 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd as_matrix(const GaussianFit& f) {
    const auto d = static_cast<Eigen::Index>(f.dim());
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            m(i, j) = f.covariance[static_cast<std::size_t>(i * d + j)];
    // symmetrize away roundoff
    return 0.5 * (m + m.transpose());
}

}  // namespace

double gaussian_frechet(const GaussianFit& a, const GaussianFit& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("gaussian_frechet: dimension mismatch");
    const auto d = static_cast<Eigen::Index>(a.dim());

    double mean_term = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double diff = a.mean[i] - b.mean[i];
        mean_term += diff * diff;
    }

    const Eigen::MatrixXd sa = as_matrix(a);
    const Eigen::MatrixXd sb = as_matrix(b);
    const Eigen::MatrixXd ra = sqrt_psd(sa);
    const Eigen::MatrixXd cross = sqrt_psd(ra * sb * ra);

    double trace_term = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) trace_term += sa(i, i) + sb(i, i) - 2.0 * cross(i, i);

    return std::max(mean_term + trace_term, 0.0);
}

GaussianFit fit_gaussian(const std::vector<Signal>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("fit_gaussian: need >= 2 samples");
    const std::size_t d = samples[0].size();
    for (const auto& s : samples) require_same_shape(s, samples[0], "fit_gaussian");

    GaussianFit fit;
    fit.samples = samples.size();
    fit.mean.assign(d, 0.0);
    for (const auto& s : samples)
        for (std::size_t i = 0; i < d; ++i) fit.mean[i] += s.values[i];
    for (auto& m : fit.mean) m /= static_cast<double>(samples.size());

    fit.covariance.assign(d * d, 0.0);
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < d; ++i) {
            const double di = s.values[i] - fit.mean[i];
            for (std::size_t j = i; j < d; ++j) {
                fit.covariance[i * d + j] += di * (s.values[j] - fit.mean[j]);
            }
        }
    }
    const double denom = static_cast<double>(samples.size() - 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            fit.covariance[i * d + j] /= denom;
            fit.covariance[j * d + i] = fit.covariance[i * d + j];
        }
    }
    return fit;
}

double empirical_w1_1d(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("empirical_w1_1d: sequences must have equal length >= 1");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}

}  // namespace lcdd
