#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "seghdc/image_io.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* env = std::getenv("SEGHDC_CLI");
    REQUIRE_MESSAGE(env != nullptr, "SEGHDC_CLI must point at the seghdc binary");
    return env;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("seghdc_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const TempDir& tmp, const std::string& args) {
    const std::string out_file = tmp.file("__stdout"), err_file = tmp.file("__stderr");
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2> " + err_file;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream o(out_file), e(err_file);
    r.out.assign((std::istreambuf_iterator<char>(o)), {});
    r.err.assign((std::istreambuf_iterator<char>(e)), {});
    return r;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), {});
}

// small-but-real segmentation workload
void write_inputs(const TempDir& tmp) {
    const auto img = seghdc::testing::two_region_image(16, 16, 3, 30, 220, 10, 77);
    seghdc::save_image(img, tmp.file("input.png"));
    const auto gt = seghdc::testing::right_half_mask(16, 16);
    seghdc::ImageBuffer gt_img;
    gt_img.height = 16;
    gt_img.width = 16;
    gt_img.channels = 1;
    gt_img.pixels.resize(256);
    for (std::size_t i = 0; i < 256; ++i) gt_img.pixels[i] = gt.bits[i] ? 255 : 0;
    seghdc::save_image(gt_img, tmp.file("gt.png"));
}

const std::string kSmallConfig = " --dim 2000 --beta 4 --seed 3";

}  // namespace

TEST_CASE("segment writes a mask, metrics and scores against ground truth") {
    TempDir tmp;
    write_inputs(tmp);
    const auto r = run_cli(tmp, "segment -i " + tmp.file("input.png") + " -o " +
                                    tmp.file("mask.png") + " --gt " + tmp.file("gt.png") +
                                    " --metrics " + tmp.file("m.json") + kSmallConfig);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(tmp.file("mask.png")));

    std::ifstream mf(tmp.file("m.json"));
    const json m = json::parse(mf);
    CHECK(m.at("iou").get<double>() >= 0.95);
    CHECK(m.at("config").at("d") == 2000);
    CHECK(m.at("timings").at("total").get<double>() >=
          m.at("timings").at("cluster").get<double>());
}

TEST_CASE("segment with stock defaults reaches 0.95 IoU on a two-region image") {
    TempDir tmp;
    const auto img = seghdc::testing::two_region_image(32, 32, 3, 30, 220, 10, 5);
    seghdc::save_image(img, tmp.file("in.png"));
    const auto gt = seghdc::testing::right_half_mask(32, 32);
    seghdc::ImageBuffer gt_img;
    gt_img.height = 32;
    gt_img.width = 32;
    gt_img.channels = 1;
    gt_img.pixels.resize(32 * 32);
    for (std::size_t i = 0; i < gt.bits.size(); ++i) gt_img.pixels[i] = gt.bits[i] ? 255 : 0;
    seghdc::save_image(gt_img, tmp.file("gt.png"));

    const auto r = run_cli(tmp, "segment -i " + tmp.file("in.png") + " -o " +
                                    tmp.file("mask.png") + " --gt " + tmp.file("gt.png") +
                                    " --metrics " + tmp.file("m.json"));
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    std::ifstream mf(tmp.file("m.json"));
    const json m = json::parse(mf);
    CHECK(m.at("iou").get<double>() >= 0.95);
    CHECK(m.at("config").at("d") == 10000);
    CHECK(m.at("config").at("beta") == 26);
}

TEST_CASE("segment is byte-deterministic for a fixed seed") {
    TempDir tmp;
    write_inputs(tmp);
    const std::string base = "segment -i " + tmp.file("input.png") + kSmallConfig;
    REQUIRE(run_cli(tmp, base + " -o " + tmp.file("a.png") + " --metrics " + tmp.file("a.json"))
                .exit_code == 0);
    REQUIRE(run_cli(tmp, base + " -o " + tmp.file("b.png") + " --metrics " + tmp.file("b.json"))
                .exit_code == 0);
    CHECK(read_bytes(tmp.file("a.png")) == read_bytes(tmp.file("b.png")));

    std::ifstream fa(tmp.file("a.json")), fb(tmp.file("b.json"));
    json ja = json::parse(fa), jb = json::parse(fb);
    ja.erase("timings");
    jb.erase("timings");
    CHECK(ja == jb);
}

TEST_CASE("dump-iterations emits one mask per round") {
    TempDir tmp;
    write_inputs(tmp);
    const auto r = run_cli(tmp, "segment -i " + tmp.file("input.png") + " -o " +
                                    tmp.file("mask.png") + " --dump-iterations " +
                                    tmp.file("iters") + " --iterations 4 --no-early-stop" +
                                    " --metrics " + tmp.file("m.json") + kSmallConfig);
    REQUIRE(r.exit_code == 0);
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(tmp.file("iters"))) {
        (void)e;
        ++count;
    }
    CHECK(count == 4);
    std::ifstream mf(tmp.file("m.json"));
    CHECK(json::parse(mf).at("iterations_run") == 4);
}

TEST_CASE("eval prints the matched IoU with four decimals") {
    TempDir tmp;
    // identical masks
    seghdc::SegmentationMask m{1, 4, {0, 1, 1, 0}};
    seghdc::save_mask(m, 2, tmp.file("pred.png"));
    seghdc::save_mask(m, 2, tmp.file("gt_same.png"));
    auto r = run_cli(tmp, "eval -i " + tmp.file("pred.png") + " --gt " + tmp.file("gt_same.png") +
                              " -k 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "1.0000\n");

    // inverted prediction scores identically
    seghdc::SegmentationMask inv{1, 4, {1, 0, 0, 1}};
    seghdc::save_mask(inv, 2, tmp.file("pred_inv.png"));
    r = run_cli(tmp, "eval -i " + tmp.file("pred_inv.png") + " --gt " + tmp.file("gt_same.png") +
                         " -k 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "1.0000\n");

    // two foreground pixels each, one shared -> 1/3
    seghdc::SegmentationMask pred{1, 5, {1, 1, 0, 0, 0}};
    seghdc::SegmentationMask gt{1, 5, {0, 1, 1, 0, 0}};
    seghdc::save_mask(pred, 2, tmp.file("p3.png"));
    seghdc::save_mask(gt, 2, tmp.file("g3.png"));
    r = run_cli(tmp, "eval -i " + tmp.file("p3.png") + " --gt " + tmp.file("g3.png") + " -k 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "0.3333\n");
}

TEST_CASE("eval rejects shape mismatches with a nonzero exit") {
    TempDir tmp;
    seghdc::save_mask(seghdc::SegmentationMask{1, 4, {0, 1, 1, 0}}, 2, tmp.file("a.png"));
    seghdc::save_mask(seghdc::SegmentationMask{2, 2, {0, 1, 1, 0}}, 2, tmp.file("b.png"));
    const auto r = run_cli(tmp, "eval -i " + tmp.file("a.png") + " --gt " + tmp.file("b.png"));
    CHECK(r.exit_code == 1);
}

TEST_CASE("bench sweeps iterations and reports contained timings") {
    TempDir tmp;
    write_inputs(tmp);
    const auto r = run_cli(tmp, "bench -i " + tmp.file("input.png") + " --gt " +
                                    tmp.file("gt.png") + " --sweep-iters 1,2,3,4 --metrics " +
                                    tmp.file("bench.json") + kSmallConfig);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    std::ifstream mf(tmp.file("bench.json"));
    const json records = json::parse(mf);
    REQUIRE(records.is_array());
    REQUIRE(records.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(records[i].at("iterations_run") == i + 1);
        CHECK(records[i].at("config").at("iterations") == i + 1);
        CHECK(records[i].at("timings").at("total").get<double>() >=
              records[i].at("timings").at("cluster").get<double>());
        CHECK(records[i].at("iou").is_number());
    }
}

TEST_CASE("batch pairs stems, averages scores and flags strays") {
    TempDir tmp;
    fs::create_directories(tmp.file("in"));
    fs::create_directories(tmp.file("gt"));
    for (int i = 0; i < 3; ++i) {
        const auto name = "img" + std::to_string(i) + ".png";
        seghdc::save_image(seghdc::testing::two_region_image(16, 16, 3, 30, 220, 10, 100 + i),
                           (fs::path(tmp.file("in")) / name).string());
        const auto gt = seghdc::testing::right_half_mask(16, 16);
        seghdc::ImageBuffer gt_img;
        gt_img.height = 16;
        gt_img.width = 16;
        gt_img.channels = 1;
        gt_img.pixels.resize(256);
        for (std::size_t p = 0; p < 256; ++p) gt_img.pixels[p] = gt.bits[p] ? 255 : 0;
        seghdc::save_image(gt_img, (fs::path(tmp.file("gt")) / name).string());
    }
    // a stray input with no ground truth must only warn
    seghdc::save_image(seghdc::testing::uniform_image(8, 8, 1, 9), tmp.file("in/stray.png"));

    const auto r = run_cli(tmp, "batch -i " + tmp.file("in") + " --gt " + tmp.file("gt") +
                                    " --metrics " + tmp.file("batch.json") + kSmallConfig);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("stray") != std::string::npos);

    std::ifstream mf(tmp.file("batch.json"));
    const json j = json::parse(mf);
    REQUIRE(j.at("per_image").size() == 3);
    CHECK(j.at("count") == 3);
    double mean = 0;
    for (const auto& rec : j.at("per_image")) mean += rec.at("iou").get<double>();
    mean /= 3.0;
    CHECK(j.at("mean_iou").get<double>() == doctest::Approx(mean).epsilon(1e-12));
    // deterministic sorted-stem order
    CHECK(j.at("per_image")[0].at("stem") == "img0");
    CHECK(j.at("per_image")[2].at("stem") == "img2");
}

TEST_CASE("batch with no matching stems exits nonzero") {
    TempDir tmp;
    fs::create_directories(tmp.file("in"));
    fs::create_directories(tmp.file("gt"));
    seghdc::save_image(seghdc::testing::uniform_image(8, 8, 1, 1), tmp.file("in/a.png"));
    seghdc::save_image(seghdc::testing::uniform_image(8, 8, 1, 1), tmp.file("gt/b.png"));
    const auto r = run_cli(tmp, "batch -i " + tmp.file("in") + " --gt " + tmp.file("gt"));
    CHECK(r.exit_code == 1);
}

TEST_CASE("exit codes distinguish validation from io failures") {
    TempDir tmp;
    write_inputs(tmp);
    // dim too small for a 16x16 image at alpha 0.2 -> validation error
    auto r = run_cli(tmp, "segment -i " + tmp.file("input.png") + " -o " + tmp.file("m.png") +
                              " --dim 64");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("dimension too small") != std::string::npos);

    // missing input file -> io error
    r = run_cli(tmp, "segment -i " + tmp.file("missing.png") + " -o " + tmp.file("m.png"));
    CHECK(r.exit_code == 2);

    // unknown flag -> parse error
    r = run_cli(tmp, "segment --frobnicate");
    CHECK(r.exit_code == 1);

    // unknown encoder name -> validation error
    r = run_cli(tmp, "segment -i " + tmp.file("input.png") + " -o " + tmp.file("m.png") +
                         " --encoder bogus");
    CHECK(r.exit_code == 1);
}
