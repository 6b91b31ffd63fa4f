#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "seghdc/clusterer.hpp"
#include "seghdc/metrics.hpp"
#include "seghdc/pixel_pipeline.hpp"

namespace seghdc {

/// One run's hyperparameters. Defaults reproduce the standard configuration
/// (d = 10000, alpha = 0.2, beta = 26, gamma = 1, k = 2, 10 iterations).
struct RunConfig {
    std::size_t dim = 10000;
    double alpha = 0.2;
    std::size_t beta = 26;
    std::size_t gamma = 1;
    std::size_t clusters = 2;
    std::size_t iterations = 10;
    std::uint64_t seed = 0;
    EncoderKind encoder = EncoderKind::manhattan;
    bool early_stop = true;

    PositionConfig position_config(const ImageBuffer& img) const;
    ColorConfig color_config(const ImageBuffer& img) const;

    /// Checks every downstream bound (flip units, cluster count) before any
    /// encoding work starts; throws ConfigError naming the violated bound.
    void validate(const ImageBuffer& img) const;
};

struct StageTimings {
    double encode_position_ms = 0.0;
    double encode_color_ms = 0.0;
    double produce_pixels_ms = 0.0;
    double cluster_ms = 0.0;
    double total_ms = 0.0;

    std::map<std::string, double> as_map() const;
};

struct PipelineResult {
    SegmentationMask mask;
    std::size_t iterations_run = 0;
    StageTimings timings;
};

/// Codebooks (position first, then color, from one seeded generator),
/// image encoding, clustering. Deterministic given (image bytes, config).
PipelineResult run_pipeline(const ImageBuffer& img, const RunConfig& config,
                            const IterationCallback& on_iteration = {});

/// Per-run metrics payload; serialized as one JSON object so batch tooling
/// can aggregate without parsing logs.
struct MetricsRecord {
    std::optional<double> iou;
    std::size_t iterations_run = 0;
    StageTimings timings;
    RunConfig config;

    nlohmann::json to_json() const;
};

}  // namespace seghdc
