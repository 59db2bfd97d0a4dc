#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "arlabel/geometry.hpp"

namespace arlabel {

/// Dense per-pixel scalar field, row-major, finite non-negative values.
/// A *normalized* map additionally has max value <= 1.
struct GrayMap {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayMap() = default;
    GrayMap(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t size() const { return data.size(); }
    double max_value() const;

    /// In-place division by max value; identically-zero maps stay zero.
    void normalize();
};

struct CategoryTable;  // categories.hpp

inline constexpr uint8_t kUnknownCategory = 255;

/// Dense per-pixel category-id field aligned to a CategoryTable.
struct SemanticMap {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> ids;
    std::shared_ptr<const CategoryTable> table;

    SemanticMap() = default;
    SemanticMap(int w, int h, uint8_t fill = kUnknownCategory)
        : width(w), height(h), ids(static_cast<size_t>(w) * h, fill) {}

    uint8_t& at(int x, int y) { return ids[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return ids[static_cast<size_t>(y) * width + x]; }
};

/// Binary mask of the rect clipped to the image. Throws DegenerateRect on
/// non-positive sides.
GrayMap rasterize_rect(const LabelRect& rect, int image_width, int image_height);

/// Binary mask of the Bresenham trace between the segment endpoints, with
/// pixels covered by `exclude` removed. A zero-length segment yields an
/// all-zero mask.
GrayMap rasterize_segment(const Segment& seg, const LabelRect* exclude, int image_width,
                          int image_height);

/// Pixels of the Bresenham trace, clipped to the image, minus `exclude`,
/// sorted row-major. Empty for zero-length segments.
std::vector<PixelCoord> trace_segment(const Segment& seg, const LabelRect* exclude,
                                      int image_width, int image_height);

/// Sum of map values over the rect clipped to the image, rows ascending.
double rect_map_sum(const LabelRect& rect, const GrayMap& map);

/// Sum of map values over a row-major sorted pixel list.
double pixels_map_sum(const std::vector<PixelCoord>& pixels, const GrayMap& map);

/// Number of pixels shared by two row-major sorted pixel lists.
long long shared_pixel_count(const std::vector<PixelCoord>& a, const std::vector<PixelCoord>& b);

}  // namespace arlabel
