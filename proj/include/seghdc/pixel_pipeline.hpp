#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seghdc/color_encoder.hpp"
#include "seghdc/hypervector.hpp"
#include "seghdc/position_encoder.hpp"

namespace seghdc {

/// 8-bit image, row-major, channel-interleaved. channels is 1 or 3.
struct ImageBuffer {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 1;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(std::size_t i, std::size_t j, std::size_t c) const {
        return pixels[(i * width + j) * channels + c];
    }
    std::uint8_t& at(std::size_t i, std::size_t j, std::size_t c) {
        return pixels[(i * width + j) * channels + c];
    }
    std::span<const std::uint8_t> pixel(std::size_t i, std::size_t j) const {
        return {pixels.data() + (i * width + j) * channels, channels};
    }
    std::size_t pixel_count() const { return height * width; }

    void validate() const;
};

/// Dense grid of pixel hypervectors in one contiguous bit-packed buffer
/// (payload is exactly H*W*words_per_hv 64-bit words).
class PixelHvGrid {
public:
    PixelHvGrid() = default;
    PixelHvGrid(std::size_t height, std::size_t width, std::size_t dim);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t words_per_hv() const noexcept { return words_per_hv_; }
    std::size_t payload_bytes() const noexcept { return words_.size() * sizeof(std::uint64_t); }

    std::span<const std::uint64_t> hv_words(std::size_t i, std::size_t j) const {
        return {words_.data() + (i * width_ + j) * words_per_hv_, words_per_hv_};
    }
    std::span<std::uint64_t> hv_words(std::size_t i, std::size_t j) {
        return {words_.data() + (i * width_ + j) * words_per_hv_, words_per_hv_};
    }

    Hypervector hv(std::size_t i, std::size_t j) const;
    void set_hv(std::size_t i, std::size_t j, const Hypervector& h);

private:
    std::size_t height_ = 0, width_ = 0, dim_ = 0, words_per_hv_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class EncoderKind { manhattan, rpos, rcolor };

EncoderKind encoder_kind_from_string(const std::string& s);
std::string to_string(EncoderKind kind);

/// xor(position HV, color HV); flips from either source land in the pixel HV.
Hypervector pixel_hv(const Hypervector& p, const Hypervector& v);

/// grid[i][j] = position_hv(i, j) xor encode_color(pixel color at (i, j)).
/// Pixel-independent, so any evaluation order gives identical bits.
PixelHvGrid encode_image(const ImageBuffer& img, const PositionCodebook& pos_cb,
                         const ColorCodebook& color_cb);

/// Ablation baseline: every row/column HV independently random (no flip
/// structure, no block sharing). Same type, so downstream code is agnostic.
PositionCodebook build_random_position_codebook(const PositionConfig& config, Rng& rng);

/// Ablation baseline: all 256 entries per channel independently random.
ColorCodebook build_random_color_codebook(const ColorConfig& config, Rng& rng);

}  // namespace seghdc
