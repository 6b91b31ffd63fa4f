#include "seghdc/pipeline.hpp"

#include <chrono>

namespace seghdc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

PositionConfig RunConfig::position_config(const ImageBuffer& img) const {
    return PositionConfig{dim, img.height, img.width, alpha, beta};
}

ColorConfig RunConfig::color_config(const ImageBuffer& img) const {
    return ColorConfig{dim, img.channels, gamma};
}

void RunConfig::validate(const ImageBuffer& img) const {
    img.validate();
    position_config(img).validate();
    color_config(img).validate();
    ClusterConfig{clusters, iterations, early_stop}.validate(img.pixel_count());
}

std::map<std::string, double> StageTimings::as_map() const {
    return {{"encode_position", encode_position_ms},
            {"encode_color", encode_color_ms},
            {"produce_pixels", produce_pixels_ms},
            {"cluster", cluster_ms},
            {"total", total_ms}};
}

PipelineResult run_pipeline(const ImageBuffer& img, const RunConfig& config,
                            const IterationCallback& on_iteration) {
    config.validate(img);
    Rng rng(config.seed);

    PipelineResult result;
    const auto t_total = Clock::now();

    auto t = Clock::now();
    const PositionCodebook pos_cb = config.encoder == EncoderKind::rpos
                                        ? build_random_position_codebook(
                                              config.position_config(img), rng)
                                        : build_position_codebook(config.position_config(img), rng);
    result.timings.encode_position_ms = ms_since(t);

    t = Clock::now();
    const ColorCodebook color_cb = config.encoder == EncoderKind::rcolor
                                       ? build_random_color_codebook(config.color_config(img), rng)
                                       : build_color_codebook(config.color_config(img), rng);
    result.timings.encode_color_ms = ms_since(t);

    t = Clock::now();
    const PixelHvGrid grid = encode_image(img, pos_cb, color_cb);
    result.timings.produce_pixels_ms = ms_since(t);

    t = Clock::now();
    ClusterResult clustered =
        cluster(grid, img, ClusterConfig{config.clusters, config.iterations, config.early_stop},
                on_iteration);
    result.timings.cluster_ms = ms_since(t);

    result.mask = std::move(clustered.mask);
    result.iterations_run = clustered.iterations_run;
    result.timings.total_ms = ms_since(t_total);
    return result;
}

nlohmann::json MetricsRecord::to_json() const {
    nlohmann::json j;
    j["iou"] = iou.has_value() ? nlohmann::json(*iou) : nlohmann::json(nullptr);
    j["iterations_run"] = iterations_run;
    j["timings"] = timings.as_map();
    j["config"] = {{"d", config.dim},
                   {"alpha", config.alpha},
                   {"beta", config.beta},
                   {"gamma", config.gamma},
                   {"k", config.clusters},
                   {"iterations", config.iterations},
                   {"encoder", to_string(config.encoder)},
                   {"seed", config.seed}};
    return j;
}

}  // namespace seghdc
