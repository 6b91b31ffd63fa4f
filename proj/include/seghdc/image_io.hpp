#pragma once

#include <cstddef>
#include <string>

#include "seghdc/clusterer.hpp"
#include "seghdc/pixel_pipeline.hpp"

namespace seghdc {

/// Reads an 8-bit grayscale or RGB PNG, or a binary PGM (P5). The format is
/// detected from magic bytes, not the extension. 16-bit files and PNG color
/// types other than gray/RGB are rejected.
ImageBuffer load_image(const std::string& path);

/// 8-bit PNG, grayscale for 1 channel, RGB for 3.
void save_image(const ImageBuffer& img, const std::string& path);

/// 8-bit grayscale PNG with label l mapped to floor(255*l / (k-1)); k = 1
/// writes an all-zero image. Deterministic bytes for identical inputs.
void save_mask(const SegmentationMask& mask, std::size_t k, const std::string& path);

/// Inverse of save_mask's level mapping: each pixel value snaps to the nearest
/// of the k quantized levels. Lossless for k <= 256.
SegmentationMask labels_from_mask_image(const ImageBuffer& img, std::size_t k);

}  // namespace seghdc
