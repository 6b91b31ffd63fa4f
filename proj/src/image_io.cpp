#include "seghdc/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "seghdc/errors.hpp"

namespace seghdc {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open '" + path + "'");
    return f;
}

ImageBuffer load_png(std::FILE* fp, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng initialization failed");
    }
    std::string error;
    ImageBuffer img;
    std::vector<png_bytep> rows;  // constructed before setjmp: longjmp must not skip ctors
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("corrupt PNG file '" + path + "'");
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth != 8) {
        error = "unsupported bit depth " + std::to_string(bit_depth) + " in '" + path +
                "' (only 8-bit images are supported)";
    } else if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
        error = "unsupported PNG color type in '" + path +
                "' (only 8-bit grayscale and RGB are supported)";
    }
    if (!error.empty()) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(error);
    }

    img.height = height;
    img.width = width;
    img.channels = (color_type == PNG_COLOR_TYPE_RGB) ? 3 : 1;
    img.pixels.resize(img.height * img.width * img.channels);

    rows.resize(height);
    for (png_uint_32 i = 0; i < height; ++i) {
        rows[i] = img.pixels.data() + static_cast<std::size_t>(i) * width * img.channels;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

// minimal P5 reader: "P5" <ws> width <ws> height <ws> maxval <single ws> data
ImageBuffer load_pgm(std::FILE* fp, const std::string& path) {
    auto next_token = [&]() -> std::string {
        std::string tok;
        int ch;
        while ((ch = std::fgetc(fp)) != EOF) {
            if (ch == '#') {  // comment to end of line
                while ((ch = std::fgetc(fp)) != EOF && ch != '\n') {}
                continue;
            }
            if (std::isspace(ch)) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(ch));
        }
        if (tok.empty()) throw IoError("truncated PGM header in '" + path + "'");
        return tok;
    };

    if (next_token() != "P5") throw IoError("'" + path + "' is not a binary PGM (P5) file");
    const long width = std::strtol(next_token().c_str(), nullptr, 10);
    const long height = std::strtol(next_token().c_str(), nullptr, 10);
    const long maxval = std::strtol(next_token().c_str(), nullptr, 10);
    if (width <= 0 || height <= 0) throw IoError("invalid PGM dimensions in '" + path + "'");
    if (maxval > 255) {
        throw IoError("unsupported bit depth in '" + path +
                      "' (PGM maxval " + std::to_string(maxval) + " exceeds 255)");
    }
    if (maxval <= 0) throw IoError("invalid PGM maxval in '" + path + "'");

    ImageBuffer img;
    img.height = static_cast<std::size_t>(height);
    img.width = static_cast<std::size_t>(width);
    img.channels = 1;
    img.pixels.resize(img.height * img.width);
    if (std::fread(img.pixels.data(), 1, img.pixels.size(), fp) != img.pixels.size()) {
        throw IoError("truncated PGM pixel data in '" + path + "'");
    }
    return img;
}

}  // namespace

ImageBuffer load_image(const std::string& path) {
    auto fp = open_file(path, "rb");
    unsigned char magic[8] = {0};
    const std::size_t got = std::fread(magic, 1, sizeof(magic), fp.get());
    std::rewind(fp.get());
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return load_png(fp.get(), path);
    if (got >= 2 && magic[0] == 'P' && magic[1] == '5') return load_pgm(fp.get(), path);
    throw IoError("'" + path + "' is neither a PNG nor a binary PGM (P5) file");
}

void save_image(const ImageBuffer& img, const std::string& path) {
    img.validate();
    auto fp = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialization failed");
    }
    std::vector<png_const_bytep> rows(img.height);
    for (std::size_t i = 0; i < img.height; ++i) {
        rows[i] = img.pixels.data() + i * img.width * img.channels;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write PNG '" + path + "'");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8,
                 img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_rows(png, const_cast<png_bytepp>(rows.data()),
                   static_cast<png_uint_32>(rows.size()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

namespace {

std::uint8_t level_value(std::size_t label, std::size_t k) {
    if (k <= 1) return 0;
    return static_cast<std::uint8_t>(255 * label / (k - 1));
}

}  // namespace

void save_mask(const SegmentationMask& mask, std::size_t k, const std::string& path) {
    if (k == 0) throw ConfigError("save_mask: k must be >= 1");
    if (k > 256) throw ConfigError("save_mask: k > 256 cannot map to distinct 8-bit levels");
    ImageBuffer img;
    img.height = mask.height;
    img.width = mask.width;
    img.channels = 1;
    img.pixels.resize(mask.labels.size());
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        if (mask.labels[i] >= k) {
            throw ConfigError("save_mask: label " + std::to_string(mask.labels[i]) +
                              " out of range for k = " + std::to_string(k));
        }
        img.pixels[i] = level_value(mask.labels[i], k);
    }
    save_image(img, path);
}

SegmentationMask labels_from_mask_image(const ImageBuffer& img, std::size_t k) {
    if (k == 0 || k > 256) throw ConfigError("labels_from_mask_image: k must be in 1..256");
    if (img.channels != 1) {
        throw ConfigError("labels_from_mask_image: mask image must be grayscale");
    }
    SegmentationMask mask;
    mask.height = img.height;
    mask.width = img.width;
    mask.labels.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const int v = img.pixels[i];
        std::size_t best = 0;
        int best_err = 256;
        for (std::size_t l = 0; l < k; ++l) {
            const int err = std::abs(v - static_cast<int>(level_value(l, k)));
            if (err < best_err) {
                best_err = err;
                best = l;
            }
        }
        mask.labels[i] = static_cast<std::uint32_t>(best);
    }
    return mask;
}

}  // namespace seghdc
