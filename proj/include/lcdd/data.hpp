#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcdd/oracle.hpp"
#include "lcdd/signal.hpp"

namespace lcdd {

struct Dataset {
    std::vector<Signal> samples;
    std::uint64_t seed = 0;
};

// 8-bit image, grayscale (channels == 1) or RGB (channels == 3), row-major,
// interleaved channels.
struct Image8 {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 1;
    std::vector<std::uint8_t> pixels;
};

// y = x + rho * n with n ~ N(0, I).
Signal add_noise(const Signal& x, double rho, RngStream& rng);

Dataset sample_prior(const GaussianMixturePrior& prior, std::size_t n, RngStream& rng);

// One draw from the mixture.
Signal sample_prior_one(const GaussianMixturePrior& prior, RngStream& rng);

// Pixel [0,255] -> model range [-1,1] via p/127.5 - 1. Grayscale images map to
// shape [H,W], RGB to [H,W,3].
Signal image_to_model(const Image8& img);

// Inverse map: clip to [-1,1], then round half away from zero.
Image8 model_to_image(const Signal& s);

// PGM (P5) / PPM (P6), maxval 255 only.
Image8 read_image(const std::string& path);
void write_image(const std::string& path, const Image8& img);

// Raw tensor format: magic "LCDDT1", u32-LE rank, u32-LE dims, f64-LE payload.
Signal read_tensor(const std::string& path);
void write_tensor(const std::string& path, const Signal& s);

}  // namespace lcdd
