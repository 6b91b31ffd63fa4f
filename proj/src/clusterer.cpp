#include "seghdc/clusterer.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "seghdc/errors.hpp"

namespace seghdc {

void ClusterConfig::validate(std::size_t pixel_count) const {
    if (k == 0) throw ConfigError("cluster config: k must be >= 1");
    if (iterations == 0) throw ConfigError("cluster config: iterations must be >= 1");
    if (k > pixel_count) {
        throw ConfigError("cluster config: k = " + std::to_string(k) + " exceeds pixel count " +
                          std::to_string(pixel_count));
    }
}

namespace {

std::size_t color_key(const ImageBuffer& img, std::size_t i, std::size_t j) {
    std::size_t s = 0;
    for (std::size_t c = 0; c < img.channels; ++c) s += img.at(i, j, c);
    return s;
}

std::size_t l1_color_distance(const ImageBuffer& img, PixelCoord a, PixelCoord b) {
    std::size_t s = 0;
    for (std::size_t c = 0; c < img.channels; ++c) {
        s += static_cast<std::size_t>(
            std::abs(static_cast<int>(img.at(a.row, a.col, c)) -
                     static_cast<int>(img.at(b.row, b.col, c))));
    }
    return s;
}

// simA > simB where simX = dotX / sqrt(norm2X) and the pixel norm cancels.
// Cross-multiplied in 128 bits so the decision is exact.
bool strictly_closer(std::uint64_t dot_cand, std::uint64_t norm2_cand,
                     std::uint64_t dot_best, std::uint64_t norm2_best) {
    if (norm2_cand == 0) return false;                 // sim 0 never beats sim >= 0
    if (norm2_best == 0) return dot_cand > 0;          // any positive similarity wins
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(dot_cand) * dot_cand * norm2_best;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(dot_best) * dot_best * norm2_cand;
    return lhs > rhs;
}

}  // namespace

std::vector<PixelCoord> select_initial_centroids(const ImageBuffer& img,
                                                 const PixelHvGrid& grid, std::size_t k) {
    img.validate();
    if (grid.height() != img.height || grid.width() != img.width) {
        throw ConfigError("select_initial_centroids: grid shape does not match image");
    }
    if (k == 0 || k > img.pixel_count()) {
        throw ConfigError("select_initial_centroids: k = " + std::to_string(k) +
                          " out of range for " + std::to_string(img.pixel_count()) + " pixels");
    }

    const std::size_t h = img.height, w = img.width;
    std::vector<std::uint8_t> chosen_flag(h * w, 0);
    std::vector<PixelCoord> chosen;
    chosen.reserve(k);
    auto take = [&](PixelCoord p) {
        chosen.push_back(p);
        chosen_flag[p.row * w + p.col] = 1;
    };

    std::size_t min_key = std::numeric_limits<std::size_t>::max(), max_key = 0;
    PixelCoord min_px{}, max_px{};
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
            const std::size_t key = color_key(img, i, j);
            if (key < min_key) { min_key = key; min_px = {i, j}; }
            if (key > max_key) { max_key = key; max_px = {i, j}; }
        }
    }
    if (min_key == max_key) {
        // uniform image: corners first, then row-major fill
        const PixelCoord corners[4] = {{0, 0}, {0, w - 1}, {h - 1, 0}, {h - 1, w - 1}};
        for (const auto& c : corners) {
            if (chosen.size() == k) break;
            if (!chosen_flag[c.row * w + c.col]) take(c);
        }
        for (std::size_t i = 0; i < h && chosen.size() < k; ++i) {
            for (std::size_t j = 0; j < w && chosen.size() < k; ++j) {
                if (!chosen_flag[i * w + j]) take({i, j});
            }
        }
        return chosen;
    }

    take(min_px);
    if (k >= 2) take(max_px);

    // greedy farthest-color selection for the rest
    std::vector<std::size_t> min_dist(h * w, std::numeric_limits<std::size_t>::max());
    auto relax = [&](PixelCoord added) {
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                min_dist[i * w + j] =
                    std::min(min_dist[i * w + j], l1_color_distance(img, {i, j}, added));
            }
        }
    };
    for (const auto& p : chosen) relax(p);
    while (chosen.size() < k) {
        bool found = false;
        std::size_t best = 0;
        PixelCoord best_px{};
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                if (chosen_flag[i * w + j]) continue;
                if (!found || min_dist[i * w + j] > best) {
                    found = true;
                    best = min_dist[i * w + j];
                    best_px = {i, j};
                }
            }
        }
        take(best_px);
        relax(best_px);
    }
    return chosen;
}

SegmentationMask assign_labels(const PixelHvGrid& grid, const CentroidSet& centroids) {
    const std::size_t k = centroids.k();
    if (k == 0) throw ConfigError("assign_labels: empty centroid set");
    for (const auto& c : centroids.centroids) {
        if (c.dim() != grid.dim()) throw ConfigError("assign_labels: dimension mismatch");
    }

    std::vector<std::uint64_t> norm2(k);
    for (std::size_t c = 0; c < k; ++c) norm2[c] = centroids.centroids[c].norm_squared();

    SegmentationMask mask;
    mask.height = grid.height();
    mask.width = grid.width();
    mask.labels.resize(grid.height() * grid.width());
    for (std::size_t i = 0; i < grid.height(); ++i) {
        for (std::size_t j = 0; j < grid.width(); ++j) {
            const auto words = grid.hv_words(i, j);
            std::uint32_t best = 0;
            std::uint64_t best_dot = dot_words(words, centroids.centroids[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const std::uint64_t d = dot_words(words, centroids.centroids[c]);
                if (strictly_closer(d, norm2[c], best_dot, norm2[best])) {
                    best = static_cast<std::uint32_t>(c);
                    best_dot = d;
                }
            }
            mask.label(i, j) = best;
        }
    }
    return mask;
}

CentroidSet update_centroids(const PixelHvGrid& grid, const SegmentationMask& mask,
                             const CentroidSet& prev) {
    if (mask.height != grid.height() || mask.width != grid.width()) {
        throw ConfigError("update_centroids: mask shape does not match grid");
    }
    const std::size_t k = prev.k();
    CentroidSet next;
    next.centroids.assign(k, IntVector(grid.dim()));
    next.member_counts.assign(k, 0);
    for (std::size_t i = 0; i < grid.height(); ++i) {
        for (std::size_t j = 0; j < grid.width(); ++j) {
            const std::uint32_t c = mask.label(i, j);
            if (c >= k) {
                throw ConfigError("update_centroids: label " + std::to_string(c) +
                                  " out of range for k = " + std::to_string(k));
            }
            next.centroids[c].add_words(grid.hv_words(i, j));
            ++next.member_counts[c];
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (next.member_counts[c] == 0) next.centroids[c] = prev.centroids[c];
    }
    return next;
}

ClusterResult cluster(const PixelHvGrid& grid, const ImageBuffer& img,
                      const ClusterConfig& config, const IterationCallback& on_iteration) {
    config.validate(img.pixel_count());
    if (grid.height() != img.height || grid.width() != img.width) {
        throw ConfigError("cluster: grid shape does not match image");
    }

    const auto seeds = select_initial_centroids(img, grid, config.k);
    CentroidSet centroids;
    centroids.centroids.reserve(config.k);
    for (const auto& s : seeds) {
        IntVector c(grid.dim());
        c.add_words(grid.hv_words(s.row, s.col));
        centroids.centroids.push_back(std::move(c));
        centroids.member_counts.push_back(1);
    }

    SegmentationMask mask, prev_mask;
    std::size_t rounds = 0;
    for (std::size_t r = 1; r <= config.iterations; ++r) {
        mask = assign_labels(grid, centroids);
        rounds = r;
        if (on_iteration) on_iteration(r, mask);
        if (config.early_stop && r > 1 && mask == prev_mask) break;
        if (r < config.iterations) centroids = update_centroids(grid, mask, centroids);
        prev_mask = mask;
    }
    return {std::move(mask), rounds};
}

}  // namespace seghdc
