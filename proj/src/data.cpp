#include "lcdd/data.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lcdd {

Signal add_noise(const Signal& x, double rho, RngStream& rng) {
    if (rho < 0.0) throw std::invalid_argument("add_noise: rho must be >= 0");
    if (rho == 0.0) return x;
    return axpy(1.0, x, rho, standard_normal(rng, x.shape));
}

Signal sample_prior_one(const GaussianMixturePrior& prior, RngStream& rng) {
    const double u = rng.uniform();
    std::size_t j = 0;
    double acc = prior.weights[0];
    while (j + 1 < prior.components() && u >= acc) acc += prior.weights[++j];
    const double sd = std::sqrt(prior.variances[j]);
    return axpy(1.0, prior.means[j], sd, standard_normal(rng, prior.means[j].shape));
}

Dataset sample_prior(const GaussianMixturePrior& prior, std::size_t n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_prior: n must be >= 1");
    prior.validate();
    Dataset ds;
    ds.seed = rng.master_seed();
    ds.samples.reserve(n);
    for (std::size_t s = 0; s < n; ++s) ds.samples.push_back(sample_prior_one(prior, rng));
    return ds;
}

Signal image_to_model(const Image8& img) {
    std::vector<std::size_t> shape;
    if (img.channels == 1) {
        shape = {img.height, img.width};
    } else {
        shape = {img.height, img.width, img.channels};
    }
    std::vector<double> values(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        values[i] = static_cast<double>(img.pixels[i]) / 127.5 - 1.0;
    }
    return Signal(std::move(shape), std::move(values));
}

Image8 model_to_image(const Signal& s) {
    Image8 img;
    if (s.shape.size() == 2) {
        img.height = s.shape[0];
        img.width = s.shape[1];
        img.channels = 1;
    } else if (s.shape.size() == 3 && (s.shape[2] == 1 || s.shape[2] == 3)) {
        img.height = s.shape[0];
        img.width = s.shape[1];
        img.channels = s.shape[2];
    } else {
        throw std::invalid_argument("model_to_image: expected shape [H,W] or [H,W,{1,3}]");
    }
    img.pixels.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double v = s.values[i];
        v = std::min(1.0, std::max(-1.0, v));
        const double p = (v + 1.0) * 127.5;
        img.pixels[i] = static_cast<std::uint8_t>(std::llround(p));  // half away from zero
    }
    return img;
}

namespace {

// Reads one whitespace-delimited token, skipping '#' comments, tracking offset.
std::string next_token(std::istream& in, std::size_t& offset) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        ++offset;
        if (c == '#') {
            while ((c = in.get()) != EOF) {
                ++offset;
                if (c == '\n') break;
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

std::size_t parse_dim(const std::string& tok, std::size_t offset, const char* what) {
    if (tok.empty()) throw ParseError(std::string("unexpected end of header reading ") + what, offset);
    std::size_t value = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') {
            throw ParseError(std::string("non-numeric ") + what + " in header", offset);
        }
        value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    return value;
}

}  // namespace

Image8 read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_image: cannot open " + path);
    std::size_t offset = 0;

    const std::string magic = next_token(in, offset);
    Image8 img;
    if (magic == "P5") {
        img.channels = 1;
    } else if (magic == "P6") {
        img.channels = 3;
    } else {
        throw ParseError("expected P5 or P6 magic", 0);
    }
    img.width = parse_dim(next_token(in, offset), offset, "width");
    img.height = parse_dim(next_token(in, offset), offset, "height");
    const std::size_t maxval = parse_dim(next_token(in, offset), offset, "maxval");
    if (maxval != 255) throw ParseError("unsupported maxval (only 255)", offset);
    if (img.width < 1 || img.height < 1) throw ParseError("zero image dimension", offset);

    const std::size_t n = img.width * img.height * img.channels;
    img.pixels.resize(n);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        throw ParseError("truncated pixel payload", offset + static_cast<std::size_t>(in.gcount()));
    }
    return img;
}

void write_image(const std::string& path, const Image8& img) {
    if (img.channels != 1 && img.channels != 3) {
        throw std::invalid_argument("write_image: channels must be 1 or 3");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_image: cannot open " + path);
    out << (img.channels == 1 ? "P5" : "P6") << "\n"
        << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw std::runtime_error("write_image: write failed for " + path);
}

namespace {

constexpr char kTensorMagic[6] = {'L', 'C', 'D', 'D', 'T', '1'};

std::uint32_t read_u32_le(std::istream& in, std::size_t& offset) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw ParseError("truncated tensor header", offset);
    offset += 4;
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

Signal read_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_tensor: cannot open " + path);
    std::size_t offset = 0;

    char magic[6];
    in.read(magic, 6);
    if (in.gcount() != 6 || std::memcmp(magic, kTensorMagic, 6) != 0) {
        throw ParseError("bad tensor magic (expected LCDDT1)", 0);
    }
    offset = 6;

    const std::uint32_t rank = read_u32_le(in, offset);
    if (rank < 1 || rank > 8) throw ParseError("unreasonable tensor rank", offset - 4);
    std::vector<std::size_t> shape(rank);
    std::size_t n = 1;
    for (auto& d : shape) {
        d = read_u32_le(in, offset);
        if (d < 1) throw ParseError("zero tensor dimension", offset - 4);
        n *= d;
    }

    std::vector<double> values(n);
    static_assert(sizeof(double) == 8);
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(n * 8));
    if (static_cast<std::size_t>(in.gcount()) != n * 8) {
        throw ParseError("truncated tensor payload",
                         offset + static_cast<std::size_t>(in.gcount()));
    }
    return Signal(std::move(shape), std::move(values));
}

void write_tensor(const std::string& path, const Signal& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_tensor: cannot open " + path);
    out.write(kTensorMagic, 6);
    write_u32_le(out, static_cast<std::uint32_t>(s.shape.size()));
    for (std::size_t d : s.shape) write_u32_le(out, static_cast<std::uint32_t>(d));
    out.write(reinterpret_cast<const char*>(s.values.data()),
              static_cast<std::streamsize>(s.values.size() * 8));
    if (!out) throw std::runtime_error("write_tensor: write failed for " + path);
}

}  // namespace lcdd
