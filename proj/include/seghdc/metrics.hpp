#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seghdc/clusterer.hpp"
#include "seghdc/pixel_pipeline.hpp"

namespace seghdc {

/// Foreground flags, row-major.
struct BinaryMask {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> bits;  // 0 or 1

    bool at(std::size_t i, std::size_t j) const { return bits[i * width + j] != 0; }
};

/// Any nonzero pixel counts as foreground (0/255-style ground-truth images).
BinaryMask binarize_ground_truth(const ImageBuffer& img);

/// |pred AND gt| / |pred OR gt|; 1.0 when both masks are empty.
double iou(const BinaryMask& pred, const BinaryMask& gt);

struct ForegroundMatch {
    double iou = 0.0;
    std::vector<std::uint32_t> subset;  // cluster labels binarized to foreground
};

/// Max IoU over every non-empty proper subset of cluster labels; ties broken
/// by smallest subset, then lexicographically. k must be <= 4 (at most 14
/// candidate subsets).
ForegroundMatch best_foreground_iou(const SegmentationMask& mask, const BinaryMask& gt,
                                    std::size_t k);

}  // namespace seghdc
