#include "seghdc/position_encoder.hpp"

#include <cmath>
#include <string>

#include "seghdc/errors.hpp"

namespace seghdc {

std::size_t PositionConfig::x_row() const {
    return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(dim) /
                                               (2.0 * static_cast<double>(n_rows))));
}

std::size_t PositionConfig::x_col() const {
    return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(dim) /
                                               (2.0 * static_cast<double>(n_cols))));
}

void PositionConfig::validate() const {
    if (dim == 0 || n_rows == 0 || n_cols == 0) {
        throw ConfigError("position config: dim, n_rows and n_cols must be >= 1");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigError("position config: alpha must be in (0, 1], got " +
                          std::to_string(alpha));
    }
    if (beta == 0) throw ConfigError("position config: beta must be >= 1");
    if (x_row() == 0) {
        throw ConfigError("dimension too small for image size: x_row = floor(" +
                          std::to_string(alpha) + " * " + std::to_string(dim) + " / (2 * " +
                          std::to_string(n_rows) + ")) = 0; need alpha*dim >= 2*n_rows");
    }
    if (x_col() == 0) {
        throw ConfigError("dimension too small for image size: x_col = floor(" +
                          std::to_string(alpha) + " * " + std::to_string(dim) + " / (2 * " +
                          std::to_string(n_cols) + ")) = 0; need alpha*dim >= 2*n_cols");
    }
}

std::size_t block_index(std::size_t i, std::size_t beta) {
    return i / beta;
}

namespace {

// One axis of the codebook: base random HV, then one fresh flip segment per
// block, cursor advancing so segments never overlap. alpha <= 1 guarantees
// every segment stays inside [half_start, half_start + half_len).
std::vector<Hypervector> build_axis(std::size_t n, std::size_t beta, std::size_t x,
                                    std::size_t dim, std::size_t half_start, Rng& rng) {
    std::vector<Hypervector> hvs;
    hvs.reserve(n);
    Hypervector current = Hypervector::random(dim, rng);
    std::size_t cursor = half_start;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && block_index(i, beta) != block_index(i - 1, beta)) {
            current = flip_range(current, cursor, x);
            cursor += x;
        }
        hvs.push_back(current);
    }
    return hvs;
}

}  // namespace

PositionCodebook build_position_codebook(const PositionConfig& config, Rng& rng) {
    config.validate();
    PositionCodebook cb;
    cb.config = config;
    cb.row_hvs = build_axis(config.n_rows, config.beta, config.x_row(), config.dim, 0, rng);
    cb.col_hvs = build_axis(config.n_cols, config.beta, config.x_col(), config.dim,
                            config.dim / 2, rng);
    return cb;
}

Hypervector position_hv(const PositionCodebook& cb, std::size_t i, std::size_t j) {
    if (i >= cb.row_hvs.size() || j >= cb.col_hvs.size()) {
        throw ConfigError("position index (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") out of range for " + std::to_string(cb.row_hvs.size()) + "x" +
                          std::to_string(cb.col_hvs.size()) + " codebook");
    }
    return hv_xor(cb.row_hvs[i], cb.col_hvs[j]);
}

}  // namespace seghdc
