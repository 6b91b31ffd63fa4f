#pragma once

#include <cstddef>
#include <vector>

#include "seghdc/hypervector.hpp"

namespace seghdc {

/// Parameters of the block decay Manhattan position code.
///
/// Row hypervectors flip inside the first half of the dimension, column
/// hypervectors inside the second half, so the two axes never interfere.
/// alpha scales the per-block flip unit; beta groups adjacent rows/columns
/// into blocks that share one hypervector.
struct PositionConfig {
    std::size_t dim = 0;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    double alpha = 0.2;
    std::size_t beta = 1;

    /// floor(alpha*d / (2*n)); the Hamming distance added per block step.
    std::size_t x_row() const;
    std::size_t x_col() const;

    /// Throws ConfigError when a flip unit evaluates to zero (the code would
    /// lose all positional information) or a field is out of range.
    void validate() const;
};

struct PositionCodebook {
    PositionConfig config;
    std::vector<Hypervector> row_hvs;  // one per row; rows in a block share a value
    std::vector<Hypervector> col_hvs;
};

std::size_t block_index(std::size_t i, std::size_t beta);

/// Base row/column hypervectors are random; each successive block flips the
/// next x untouched contiguous bits, cursor advancing from the start of the
/// half. Disjoint segments make block distances exactly additive:
///   hamming(row[i], row[k]) == x_row * |block(i) - block(k)|.
PositionCodebook build_position_codebook(const PositionConfig& config, Rng& rng);

/// xor(row_hvs[i], col_hvs[j]).
Hypervector position_hv(const PositionCodebook& cb, std::size_t i, std::size_t j);

}  // namespace seghdc
