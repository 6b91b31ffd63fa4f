#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seghdc/errors.hpp"
#include "seghdc/image_io.hpp"
#include "seghdc/metrics.hpp"
#include "seghdc/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct CommonOptions {
    std::string input;
    std::string gt;
    std::string metrics;
    std::string encoder = "manhattan";
    bool no_early_stop = false;
    seghdc::RunConfig config;
};

void add_config_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--input,-i", o.input, "Input image (8-bit PNG or binary PGM)")->required();
    cmd->add_option("--dim", o.config.dim, "Hypervector dimension d");
    cmd->add_option("--alpha", o.config.alpha, "Position flip-unit ratio in (0, 1]");
    cmd->add_option("--beta", o.config.beta, "Position block size");
    cmd->add_option("--gamma", o.config.gamma, "Color flip-expansion factor");
    cmd->add_option("--clusters,-k", o.config.clusters, "Number of clusters");
    cmd->add_option("--iterations", o.config.iterations, "Clustering iterations");
    cmd->add_option("--seed", o.config.seed, "Codebook RNG seed");
    cmd->add_option("--encoder", o.encoder, "Encoder kind: manhattan, rpos or rcolor")
        ->check(CLI::IsMember({"manhattan", "rpos", "rcolor"}));
    cmd->add_flag("--no-early-stop", o.no_early_stop,
                  "Always run the configured number of iterations");
    cmd->add_option("--metrics", o.metrics, "Write metrics JSON to this path");
}

void finalize_config(CommonOptions& o) {
    o.config.encoder = seghdc::encoder_kind_from_string(o.encoder);
    if (o.no_early_stop) o.config.early_stop = false;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw seghdc::IoError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

double score_against_gt(const seghdc::SegmentationMask& mask, const std::string& gt_path,
                        std::size_t k) {
    const seghdc::ImageBuffer gt_img = seghdc::load_image(gt_path);
    const seghdc::BinaryMask gt = seghdc::binarize_ground_truth(gt_img);
    return seghdc::best_foreground_iou(mask, gt, k).iou;
}

int run_segment(CommonOptions& o, const std::string& output, const std::string& dump_dir) {
    finalize_config(o);
    const seghdc::ImageBuffer img = seghdc::load_image(o.input);
    o.config.validate(img);

    std::size_t dumped = 0;
    seghdc::IterationCallback on_iteration;
    if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        on_iteration = [&](std::size_t round, const seghdc::SegmentationMask& m) {
            char name[32];
            std::snprintf(name, sizeof(name), "iter_%03zu.png", round);
            seghdc::save_mask(m, o.config.clusters, (fs::path(dump_dir) / name).string());
            ++dumped;
        };
    }

    const seghdc::PipelineResult result = seghdc::run_pipeline(img, o.config, on_iteration);
    seghdc::save_mask(result.mask, o.config.clusters, output);

    seghdc::MetricsRecord record{{}, result.iterations_run, result.timings, o.config};
    if (!o.gt.empty()) record.iou = score_against_gt(result.mask, o.gt, o.config.clusters);

    if (!o.metrics.empty()) write_json(record.to_json(), o.metrics);
    std::cout << "mask: " << output << "  iterations: " << result.iterations_run;
    if (record.iou) std::printf("  iou: %.4f", *record.iou);
    if (dumped > 0) std::cout << "  per-iteration masks: " << dumped;
    std::printf("  total: %.1f ms\n", result.timings.total_ms);
    return kExitOk;
}

int run_eval(const std::string& pred_path, const std::string& gt_path, std::size_t k) {
    const seghdc::ImageBuffer pred_img = seghdc::load_image(pred_path);
    const seghdc::ImageBuffer gt_img = seghdc::load_image(gt_path);
    const seghdc::SegmentationMask pred = seghdc::labels_from_mask_image(pred_img, k);
    const seghdc::BinaryMask gt = seghdc::binarize_ground_truth(gt_img);
    const auto match = seghdc::best_foreground_iou(pred, gt, k);
    std::printf("%.4f\n", match.iou);
    return kExitOk;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int run_bench(CommonOptions& o, std::size_t repeats, std::vector<std::size_t> sweep_dim,
              std::vector<std::size_t> sweep_iters) {
    finalize_config(o);
    o.config.early_stop = false;  // fixed-iteration protocol
    if (repeats == 0) throw seghdc::ConfigError("bench: --repeats must be >= 1");
    const seghdc::ImageBuffer img = seghdc::load_image(o.input);

    if (sweep_dim.empty()) sweep_dim = {o.config.dim};
    if (sweep_iters.empty()) sweep_iters = {o.config.iterations};

    json records = json::array();
    for (const std::size_t d : sweep_dim) {
        for (const std::size_t iters : sweep_iters) {
            seghdc::RunConfig cfg = o.config;
            cfg.dim = d;
            cfg.iterations = iters;
            cfg.validate(img);

            std::map<std::string, std::vector<double>> samples;
            seghdc::PipelineResult last;
            for (std::size_t r = 0; r < repeats; ++r) {
                last = seghdc::run_pipeline(img, cfg);
                for (const auto& [stage, ms] : last.timings.as_map()) {
                    samples[stage].push_back(ms);
                }
            }
            seghdc::StageTimings med;
            med.encode_position_ms = median(samples["encode_position"]);
            med.encode_color_ms = median(samples["encode_color"]);
            med.produce_pixels_ms = median(samples["produce_pixels"]);
            med.cluster_ms = median(samples["cluster"]);
            med.total_ms = median(samples["total"]);

            seghdc::MetricsRecord record{{}, last.iterations_run, med, cfg};
            if (!o.gt.empty()) record.iou = score_against_gt(last.mask, o.gt, cfg.clusters);
            records.push_back(record.to_json());

            std::printf("d=%zu iterations=%zu total=%.1f ms cluster=%.1f ms", d, iters,
                        med.total_ms, med.cluster_ms);
            if (record.iou) std::printf(" iou=%.4f", *record.iou);
            std::printf("\n");
        }
    }
    if (!o.metrics.empty()) write_json(records, o.metrics);
    return kExitOk;
}

std::map<std::string, fs::path> stem_index(const std::string& dir) {
    if (!fs::is_directory(dir)) throw seghdc::IoError("'" + dir + "' is not a directory");
    std::map<std::string, fs::path> index;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        if (!index.emplace(p.stem().string(), p).second) {
            std::cerr << "warning: duplicate stem '" << p.stem().string() << "' in " << dir
                      << ", keeping first match\n";
        }
    }
    return index;
}

int run_batch(CommonOptions& o) {
    finalize_config(o);
    const auto inputs = stem_index(o.input);
    const auto gts = stem_index(o.gt);

    for (const auto& [stem, path] : inputs) {
        if (!gts.count(stem)) {
            std::cerr << "warning: no ground truth for '" << path.string() << "', skipped\n";
        }
    }
    for (const auto& [stem, path] : gts) {
        if (!inputs.count(stem)) {
            std::cerr << "warning: no input for ground truth '" << path.string()
                      << "', skipped\n";
        }
    }

    json per_image = json::array();
    double iou_sum = 0.0;
    std::size_t count = 0;
    for (const auto& [stem, path] : inputs) {
        const auto gt_it = gts.find(stem);
        if (gt_it == gts.end()) continue;
        const seghdc::ImageBuffer img = seghdc::load_image(path.string());
        o.config.validate(img);
        const seghdc::PipelineResult result = seghdc::run_pipeline(img, o.config);
        const double score =
            score_against_gt(result.mask, gt_it->second.string(), o.config.clusters);
        per_image.push_back({{"stem", stem},
                             {"iou", score},
                             {"iterations_run", result.iterations_run}});
        iou_sum += score;
        ++count;
        std::printf("%s  iou=%.4f\n", stem.c_str(), score);
    }
    if (count == 0) {
        std::cerr << "error: no input/ground-truth pairs matched by filename stem\n";
        return kExitConfig;
    }

    const double mean = iou_sum / static_cast<double>(count);
    json summary = {{"per_image", per_image}, {"mean_iou", mean}, {"count", count}};
    if (!o.metrics.empty()) write_json(summary, o.metrics);
    std::printf("mean iou over %zu images: %.4f\n", count, mean);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperdimensional-computing unsupervised image segmentation"};
    app.require_subcommand(1);

    CommonOptions seg_opts;
    std::string seg_output;
    std::string seg_dump_dir;
    CLI::App* seg = app.add_subcommand("segment", "Segment one image into a label mask");
    add_config_flags(seg, seg_opts);
    seg->add_option("--output,-o", seg_output, "Output mask PNG")->required();
    seg->add_option("--gt", seg_opts.gt, "Ground-truth image for IoU scoring");
    seg->add_option("--dump-iterations", seg_dump_dir,
                    "Directory receiving one mask PNG per clustering round");

    std::string eval_pred, eval_gt;
    std::size_t eval_k = 2;
    CLI::App* eval = app.add_subcommand("eval", "Score a mask PNG against ground truth");
    eval->add_option("--input,-i", eval_pred, "Predicted mask PNG")->required();
    eval->add_option("--gt", eval_gt, "Ground-truth image")->required();
    eval->add_option("--clusters,-k", eval_k, "Number of label levels in the mask");

    CommonOptions bench_opts;
    std::size_t bench_repeats = 1;
    std::vector<std::size_t> sweep_dim, sweep_iters;
    CLI::App* bench = app.add_subcommand(
        "bench", "Time the pipeline (fixed iterations, early stop disabled)");
    add_config_flags(bench, bench_opts);
    bench->add_option("--gt", bench_opts.gt, "Ground-truth image for IoU scoring");
    bench->add_option("--repeats", bench_repeats, "Runs per configuration (median reported)");
    bench->add_option("--sweep-dim", sweep_dim, "Comma-separated dimensions to sweep")
        ->delimiter(',');
    bench->add_option("--sweep-iters", sweep_iters, "Comma-separated iteration counts to sweep")
        ->delimiter(',');

    CommonOptions batch_opts;
    CLI::App* batch = app.add_subcommand("batch", "Segment and score a directory of images");
    add_config_flags(batch, batch_opts);
    batch->add_option("--gt", batch_opts.gt, "Ground-truth directory (paired by filename stem)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (seg->parsed()) return run_segment(seg_opts, seg_output, seg_dump_dir);
        if (eval->parsed()) return run_eval(eval_pred, eval_gt, eval_k);
        if (bench->parsed()) return run_bench(bench_opts, bench_repeats, sweep_dim, sweep_iters);
        if (batch->parsed()) return run_batch(batch_opts);
    } catch (const seghdc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const seghdc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}
