#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seghdc/hypervector.hpp"

namespace seghdc {

/// Parameters of the linear color code. Each channel gets a 256-entry table
/// over a sub-dimension slice of d; gamma lengthens flip segments, raising
/// color's Hamming weight relative to position.
struct ColorConfig {
    std::size_t dim = 0;
    std::size_t channels = 1;  // 1 or 3
    std::size_t gamma = 1;

    /// Channel sub-dimensions partition dim as evenly as possible, remainder
    /// to the leading channels (e.g. 800 -> 267/267/266).
    std::vector<std::size_t> channel_dims() const;

    /// gamma * floor(d_ch / (256*gamma)); Hamming distance per unit of value
    /// difference within the channel.
    std::size_t unit_flip(std::size_t channel) const;

    void validate() const;
};

struct ColorCodebook {
    ColorConfig config;
    // tables[ch][v] has dimension channel_dims()[ch];
    // hamming(tables[ch][a], tables[ch][b]) == |a-b| * unit_flip(ch), exactly.
    std::vector<std::vector<Hypervector>> tables;
};

/// Entry 0 per channel is random; entry v flips the next unit_flip untouched
/// contiguous bits of entry v-1 (cursor from 0), so 255*u_c <= d_ch and
/// pairwise distances are linear in value difference.
ColorCodebook build_color_codebook(const ColorConfig& config, Rng& rng);

/// Single channel: the table entry itself. Three channels: concatenation of
/// the per-channel entries in channel order; total dimension d.
Hypervector encode_color(const ColorCodebook& cb, std::span<const std::uint8_t> color);
Hypervector encode_color(const ColorCodebook& cb, std::initializer_list<std::uint8_t> color);

}  // namespace seghdc
