#include "seghdc/color_encoder.hpp"

#include <string>

#include "seghdc/errors.hpp"

namespace seghdc {

std::vector<std::size_t> ColorConfig::channel_dims() const {
    std::vector<std::size_t> dims(channels, dim / channels);
    for (std::size_t c = 0; c < dim % channels; ++c) ++dims[c];
    return dims;
}

std::size_t ColorConfig::unit_flip(std::size_t channel) const {
    const std::size_t d_ch = channel_dims().at(channel);
    return gamma * (d_ch / (256 * gamma));
}

void ColorConfig::validate() const {
    if (dim == 0) throw ConfigError("color config: dim must be >= 1");
    if (channels != 1 && channels != 3) {
        throw ConfigError("color config: channels must be 1 or 3, got " +
                          std::to_string(channels));
    }
    if (gamma == 0) throw ConfigError("color config: gamma must be >= 1");
    for (std::size_t c = 0; c < channels; ++c) {
        if (unit_flip(c) < gamma) {
            throw ConfigError(
                "dimension too small for color resolution: channel " + std::to_string(c) +
                " has sub-dim " + std::to_string(channel_dims()[c]) + ", needs >= 256*gamma = " +
                std::to_string(256 * gamma));
        }
    }
}

ColorCodebook build_color_codebook(const ColorConfig& config, Rng& rng) {
    config.validate();
    ColorCodebook cb;
    cb.config = config;
    const auto dims = config.channel_dims();
    cb.tables.resize(config.channels);
    for (std::size_t ch = 0; ch < config.channels; ++ch) {
        const std::size_t u = config.unit_flip(ch);
        auto& table = cb.tables[ch];
        table.reserve(256);
        table.push_back(Hypervector::random(dims[ch], rng));
        std::size_t cursor = 0;
        for (int v = 1; v < 256; ++v) {
            table.push_back(flip_range(table.back(), cursor, u));
            cursor += u;
        }
    }
    return cb;
}

Hypervector encode_color(const ColorCodebook& cb, std::span<const std::uint8_t> color) {
    if (color.size() != cb.config.channels) {
        throw ConfigError("encode_color: expected " + std::to_string(cb.config.channels) +
                          " channel values, got " + std::to_string(color.size()));
    }
    if (cb.config.channels == 1) return cb.tables[0][color[0]];
    std::vector<Hypervector> parts;
    parts.reserve(color.size());
    for (std::size_t ch = 0; ch < color.size(); ++ch) parts.push_back(cb.tables[ch][color[ch]]);
    return concat(parts);
}

Hypervector encode_color(const ColorCodebook& cb, std::initializer_list<std::uint8_t> color) {
    return encode_color(cb, std::span<const std::uint8_t>(color.begin(), color.size()));
}

}  // namespace seghdc
