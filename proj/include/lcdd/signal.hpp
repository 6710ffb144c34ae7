#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "lcdd/errors.hpp"

namespace lcdd {

// Flat row-major array of 64-bit reals. Immutable by convention: operations
// return new signals instead of mutating in place.
struct Signal {
    std::vector<std::size_t> shape;
    std::vector<double> values;

    Signal() = default;
    Signal(std::vector<std::size_t> shape_, std::vector<double> values_);

    static Signal zeros(const std::vector<std::size_t>& shape);
    static Signal constant(const std::vector<std::size_t>& shape, double value);
    static Signal scalar(double value) { return Signal({1}, {value}); }

    std::size_t size() const { return values.size(); }
    bool same_shape(const Signal& other) const { return shape == other.shape; }

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool all_finite() const;
};

// Counter-based seed pair. Identical (master_seed, stream_index) pairs replay
// the same draw sequence; distinct stream indices give independent streams.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    double normal();              // one N(0,1) draw
    double uniform();             // one U[0,1) draw
    std::uint64_t next_u64();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t state_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::size_t shape_numel(const std::vector<std::size_t>& shape);

// i.i.d. N(0,1) draws, deterministic given the stream.
Signal standard_normal(RngStream& rng, const std::vector<std::size_t>& shape);

// Elementwise a*x + b*y; shapes must match.
Signal axpy(double a, const Signal& x, double b, const Signal& y);

// Elementwise a*x.
Signal scale(double a, const Signal& x);

void require_same_shape(const Signal& a, const Signal& b, const char* where);

}  // namespace lcdd
