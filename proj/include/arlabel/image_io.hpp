#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "arlabel/raster.hpp"

namespace arlabel {

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {}

    uint8_t* pixel(int x, int y) { return &data[(static_cast<size_t>(y) * width + x) * 3]; }
    const uint8_t* pixel(int x, int y) const {
        return &data[(static_cast<size_t>(y) * width + x) * 3];
    }
};

/// Loads an RGB image from an 8-bit PNG (gray and palette inputs are expanded).
RgbImage load_image(const std::filesystem::path& path);
void save_image(const RgbImage& image, const std::filesystem::path& path);

/// Loads an 8-bit grayscale PNG or PGM, mapping stored values to [0,1] by v/255.
GrayMap load_graymap(const std::filesystem::path& path);

/// Saves clamped [0,1] values quantized to 8 bits; format chosen by extension
/// (.png or .pgm).
void save_graymap(const GrayMap& map, const std::filesystem::path& path);

/// Loads an 8-bit single-channel image of raw category ids (no scaling).
SemanticMap load_semantic_map(const std::filesystem::path& path);
void save_semantic_map(const SemanticMap& map, const std::filesystem::path& path);

}  // namespace arlabel
