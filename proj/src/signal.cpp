#include "lcdd/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lcdd {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Signal::Signal(std::vector<std::size_t> shape_, std::vector<double> values_)
    : shape(std::move(shape_)), values(std::move(values_)) {
    if (shape_numel(shape) != values.size()) {
        throw std::invalid_argument("Signal: product(shape) != length(values)");
    }
}

Signal Signal::zeros(const std::vector<std::size_t>& shape) {
    return Signal(shape, std::vector<double>(shape_numel(shape), 0.0));
}

Signal Signal::constant(const std::vector<std::size_t>& shape, double value) {
    return Signal(shape, std::vector<double>(shape_numel(shape), value));
}

bool Signal::all_finite() const {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
    if (shape.empty()) {
        throw std::invalid_argument("shape must be nonempty");
    }
    std::size_t n = 1;
    for (std::size_t d : shape) {
        if (d < 1) throw std::invalid_argument("shape dims must be >= 1");
        n *= d;
    }
    return n;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    // xoshiro256++ state derived from the seed pair through splitmix64.
    std::uint64_t s = master_seed ^ (0x6a09e667f3bcc909ULL + stream_index * 0x2545f4914f6cdd1dULL);
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Polar Box-Muller.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

Signal standard_normal(RngStream& rng, const std::vector<std::size_t>& shape) {
    const std::size_t n = shape_numel(shape);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = rng.normal();
    return Signal(shape, std::move(values));
}

void require_same_shape(const Signal& a, const Signal& b, const char* where) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(where) + ": shape mismatch");
    }
}

Signal axpy(double a, const Signal& x, double b, const Signal& y) {
    require_same_shape(x, y, "axpy");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x.values[i] + b * y.values[i];
    return Signal(x.shape, std::move(out));
}

Signal scale(double a, const Signal& x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x.values[i];
    return Signal(x.shape, std::move(out));
}

}  // namespace lcdd
