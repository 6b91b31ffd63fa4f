#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "seghdc/hypervector.hpp"
#include "seghdc/pixel_pipeline.hpp"

namespace seghdc {

struct ClusterConfig {
    std::size_t k = 2;
    std::size_t iterations = 10;
    bool early_stop = true;

    void validate(std::size_t pixel_count) const;
};

struct PixelCoord {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Cluster representatives: raw integer sums of member pixel HVs, never
/// re-binarized or averaged (cosine assignment ignores magnitude).
struct CentroidSet {
    std::vector<IntVector> centroids;
    std::vector<std::size_t> member_counts;

    std::size_t k() const { return centroids.size(); }
};

struct SegmentationMask {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint32_t> labels;  // row-major, values < k

    std::uint32_t label(std::size_t i, std::size_t j) const { return labels[i * width + j]; }
    std::uint32_t& label(std::size_t i, std::size_t j) { return labels[i * width + j]; }

    friend bool operator==(const SegmentationMask&, const SegmentationMask&) = default;
};

/// Seed pixels with the largest color spread. Deterministic:
///  - centroid 1 minimizes the color key (sum of channel values),
///  - centroid 2 maximizes it,
///  - 3..k greedily maximize the minimum L1 color distance to chosen pixels,
/// all ties broken by row-major first occurrence; already-chosen coordinates
/// are never re-selected. A uniform image (key range zero) falls back to the
/// four corners in row-major order, then row-major fill.
std::vector<PixelCoord> select_initial_centroids(const ImageBuffer& img,
                                                 const PixelHvGrid& grid, std::size_t k);

/// Nearest centroid by cosine distance, ties to the lowest cluster index.
/// Comparisons use exact integer dot products with squared-norm
/// cross-multiplication (128-bit), so ties are stable.
SegmentationMask assign_labels(const PixelHvGrid& grid, const CentroidSet& centroids);

/// Non-empty clusters become the element-wise sum of their members' HVs;
/// empty clusters keep their previous centroid. member_counts reflect the
/// assignment (0 for empty clusters).
CentroidSet update_centroids(const PixelHvGrid& grid, const SegmentationMask& mask,
                             const CentroidSet& prev);

struct ClusterResult {
    SegmentationMask mask;
    std::size_t iterations_run = 0;
};

/// Called after each assignment round with (1-based round, current mask).
using IterationCallback = std::function<void(std::size_t, const SegmentationMask&)>;

/// Seed centroids from the selected pixels' HVs, then repeat assign/update for
/// config.iterations rounds; with early_stop, return as soon as an assignment
/// round leaves every label unchanged.
ClusterResult cluster(const PixelHvGrid& grid, const ImageBuffer& img,
                      const ClusterConfig& config, const IterationCallback& on_iteration = {});

}  // namespace seghdc
