#include "seghdc/metrics.hpp"

#include <algorithm>
#include <string>

#include "seghdc/errors.hpp"

namespace seghdc {

BinaryMask binarize_ground_truth(const ImageBuffer& img) {
    img.validate();
    BinaryMask m;
    m.height = img.height;
    m.width = img.width;
    m.bits.resize(img.height * img.width, 0);
    for (std::size_t i = 0; i < img.height; ++i) {
        for (std::size_t j = 0; j < img.width; ++j) {
            bool fg = false;
            for (std::size_t c = 0; c < img.channels; ++c) fg = fg || img.at(i, j, c) != 0;
            m.bits[i * img.width + j] = fg ? 1 : 0;
        }
    }
    return m;
}

double iou(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.height != gt.height || pred.width != gt.width) {
        throw ConfigError("iou: mask shapes differ (" + std::to_string(pred.height) + "x" +
                          std::to_string(pred.width) + " vs " + std::to_string(gt.height) + "x" +
                          std::to_string(gt.width) + ")");
    }
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < pred.bits.size(); ++i) {
        const bool a = pred.bits[i] != 0, b = gt.bits[i] != 0;
        inter += (a && b);
        uni += (a || b);
    }
    if (uni == 0) return 1.0;  // vacuous agreement of two empty masks
    return static_cast<double>(inter) / static_cast<double>(uni);
}

ForegroundMatch best_foreground_iou(const SegmentationMask& mask, const BinaryMask& gt,
                                    std::size_t k) {
    if (k > 4) {
        throw ConfigError("exhaustive matching unsupported for k = " + std::to_string(k) +
                          " (limit is 4)");
    }
    if (k == 0) throw ConfigError("best_foreground_iou: k must be >= 1");
    if (mask.height != gt.height || mask.width != gt.width) {
        throw ConfigError("best_foreground_iou: mask shapes differ");
    }
    for (const auto l : mask.labels) {
        if (l >= k) {
            throw ConfigError("best_foreground_iou: label " + std::to_string(l) +
                              " out of range for k = " + std::to_string(k));
        }
    }

    // for k = 1 the only binarization is the whole image as foreground
    const std::uint32_t full = (1u << k) - 1;
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (k > 1 && s == full) continue;  // proper subsets only
        candidates.push_back(s);
    }

    auto subset_labels = [&](std::uint32_t s) {
        std::vector<std::uint32_t> labels;
        for (std::uint32_t c = 0; c < k; ++c) {
            if (s & (1u << c)) labels.push_back(c);
        }
        return labels;
    };

    ForegroundMatch best;
    bool have = false;
    for (const std::uint32_t s : candidates) {
        BinaryMask pred;
        pred.height = mask.height;
        pred.width = mask.width;
        pred.bits.resize(mask.labels.size());
        for (std::size_t i = 0; i < mask.labels.size(); ++i) {
            pred.bits[i] = (s >> mask.labels[i]) & 1u;
        }
        const double score = iou(pred, gt);
        auto labels = subset_labels(s);
        const bool better =
            !have || score > best.iou ||
            (score == best.iou && (labels.size() < best.subset.size() ||
                                   (labels.size() == best.subset.size() &&
                                    std::lexicographical_compare(labels.begin(), labels.end(),
                                                                 best.subset.begin(),
                                                                 best.subset.end()))));
        if (better) {
            best.iou = score;
            best.subset = std::move(labels);
            have = true;
        }
    }
    return best;
}

}  // namespace seghdc
