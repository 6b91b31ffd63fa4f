#include "seghdc/pixel_pipeline.hpp"

#include <cstring>
#include <string>

#include "seghdc/errors.hpp"

namespace seghdc {

void ImageBuffer::validate() const {
    if (height == 0 || width == 0) throw ConfigError("image dimensions must be positive");
    if (channels != 1 && channels != 3) {
        throw ConfigError("image channels must be 1 or 3, got " + std::to_string(channels));
    }
    if (pixels.size() != height * width * channels) {
        throw ConfigError("image pixel buffer size mismatch");
    }
}

PixelHvGrid::PixelHvGrid(std::size_t height, std::size_t width, std::size_t dim)
    : height_(height),
      width_(width),
      dim_(dim),
      words_per_hv_(Hypervector::words_for(dim)),
      words_(height * width * Hypervector::words_for(dim), 0) {
    if (height == 0 || width == 0 || dim == 0) {
        throw ConfigError("pixel grid dimensions must be positive");
    }
}

Hypervector PixelHvGrid::hv(std::size_t i, std::size_t j) const {
    Hypervector h(dim_);
    auto src = hv_words(i, j);
    std::memcpy(h.words().data(), src.data(), src.size() * sizeof(std::uint64_t));
    return h;
}

void PixelHvGrid::set_hv(std::size_t i, std::size_t j, const Hypervector& h) {
    if (h.dim() != dim_) throw ConfigError("set_hv: dimension mismatch");
    auto dst = hv_words(i, j);
    std::memcpy(dst.data(), h.words().data(), dst.size() * sizeof(std::uint64_t));
}

EncoderKind encoder_kind_from_string(const std::string& s) {
    if (s == "manhattan") return EncoderKind::manhattan;
    if (s == "rpos") return EncoderKind::rpos;
    if (s == "rcolor") return EncoderKind::rcolor;
    throw ConfigError("unknown encoder kind '" + s + "' (expected manhattan, rpos or rcolor)");
}

std::string to_string(EncoderKind kind) {
    switch (kind) {
        case EncoderKind::manhattan: return "manhattan";
        case EncoderKind::rpos: return "rpos";
        case EncoderKind::rcolor: return "rcolor";
    }
    return "manhattan";
}

Hypervector pixel_hv(const Hypervector& p, const Hypervector& v) {
    return hv_xor(p, v);
}

namespace {

// Per-channel table entries widened to full dimension with the channel's
// segment placed at its concat offset. Channel supports are disjoint, so a
// pixel's color HV is the XOR of one widened entry per channel and
// grid = row ^ col ^ widened[0][v0] ^ ... without per-pixel concat shifts.
std::vector<std::vector<Hypervector>> widen_color_tables(const ColorCodebook& cb) {
    const std::size_t d = cb.config.dim;
    const auto dims = cb.config.channel_dims();
    std::vector<std::vector<Hypervector>> widened(cb.config.channels);
    std::size_t offset = 0;
    for (std::size_t ch = 0; ch < cb.config.channels; ++ch) {
        widened[ch].reserve(256);
        for (int v = 0; v < 256; ++v) {
            Hypervector full(d);
            const auto& entry = cb.tables[ch][v];
            for (std::size_t b = 0; b < entry.dim(); ++b) {
                if (entry.bit(b)) full.set_bit(offset + b, true);
            }
            widened[ch].push_back(std::move(full));
        }
        offset += dims[ch];
    }
    return widened;
}

}  // namespace

PixelHvGrid encode_image(const ImageBuffer& img, const PositionCodebook& pos_cb,
                         const ColorCodebook& color_cb) {
    img.validate();
    if (pos_cb.config.n_rows != img.height || pos_cb.config.n_cols != img.width) {
        throw ConfigError("position codebook shape (" + std::to_string(pos_cb.config.n_rows) +
                          "x" + std::to_string(pos_cb.config.n_cols) +
                          ") does not match image (" + std::to_string(img.height) + "x" +
                          std::to_string(img.width) + ")");
    }
    if (color_cb.config.channels != img.channels) {
        throw ConfigError("color codebook channels do not match image");
    }
    if (pos_cb.config.dim != color_cb.config.dim) {
        throw ConfigError("position and color codebooks must share one dimension");
    }

    const std::size_t dim = pos_cb.config.dim;
    PixelHvGrid grid(img.height, img.width, dim);
    const auto widened = widen_color_tables(color_cb);
    const std::size_t nw = grid.words_per_hv();

    for (std::size_t i = 0; i < img.height; ++i) {
        const auto row = pos_cb.row_hvs[i].words();
        for (std::size_t j = 0; j < img.width; ++j) {
            const auto col = pos_cb.col_hvs[j].words();
            auto out = grid.hv_words(i, j);
            for (std::size_t w = 0; w < nw; ++w) out[w] = row[w] ^ col[w];
            for (std::size_t ch = 0; ch < img.channels; ++ch) {
                const auto cw = widened[ch][img.at(i, j, ch)].words();
                for (std::size_t w = 0; w < nw; ++w) out[w] ^= cw[w];
            }
        }
    }
    return grid;
}

PositionCodebook build_random_position_codebook(const PositionConfig& config, Rng& rng) {
    config.validate();
    PositionCodebook cb;
    cb.config = config;
    cb.row_hvs.reserve(config.n_rows);
    cb.col_hvs.reserve(config.n_cols);
    for (std::size_t i = 0; i < config.n_rows; ++i) {
        cb.row_hvs.push_back(Hypervector::random(config.dim, rng));
    }
    for (std::size_t j = 0; j < config.n_cols; ++j) {
        cb.col_hvs.push_back(Hypervector::random(config.dim, rng));
    }
    return cb;
}

ColorCodebook build_random_color_codebook(const ColorConfig& config, Rng& rng) {
    config.validate();
    ColorCodebook cb;
    cb.config = config;
    const auto dims = config.channel_dims();
    cb.tables.resize(config.channels);
    for (std::size_t ch = 0; ch < config.channels; ++ch) {
        cb.tables[ch].reserve(256);
        for (int v = 0; v < 256; ++v) {
            cb.tables[ch].push_back(Hypervector::random(dims[ch], rng));
        }
    }
    return cb;
}

}  // namespace seghdc
