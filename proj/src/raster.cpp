#include "arlabel/raster.hpp"

#include <algorithm>
#include <cmath>

#include "arlabel/error.hpp"

namespace arlabel {

double GrayMap::max_value() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, v);
    return m;
}

void GrayMap::normalize() {
    const double m = max_value();
    if (m <= 0.0) return;
    for (double& v : data) v /= m;
}

GrayMap rasterize_rect(const LabelRect& rect, int image_width, int image_height) {
    if (rect.width <= 0 || rect.height <= 0)
        throw DegenerateRect("rect sides must be positive, got " + std::to_string(rect.width) +
                             "x" + std::to_string(rect.height));
    GrayMap mask(image_width, image_height);
    const int x0 = std::max(rect.x_lo(), 0);
    const int x1 = std::min(rect.x_hi(), image_width - 1);
    const int y0 = std::max(rect.y_lo(), 0);
    const int y1 = std::min(rect.y_hi(), image_height - 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) mask.at(x, y) = 1.0;
    return mask;
}

std::vector<PixelCoord> trace_segment(const Segment& seg, const LabelRect* exclude,
                                      int image_width, int image_height) {
    std::vector<PixelCoord> pixels;
    int x0 = static_cast<int>(std::llround(seg.from.x));
    int y0 = static_cast<int>(std::llround(seg.from.y));
    const int x1 = static_cast<int>(std::llround(seg.to.x));
    const int y1 = static_cast<int>(std::llround(seg.to.y));
    if (x0 == x1 && y0 == y1) return pixels;

    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        const bool in_image = x0 >= 0 && x0 < image_width && y0 >= 0 && y0 < image_height;
        if (in_image && !(exclude && exclude->covers(x0, y0))) pixels.push_back({x0, y0});
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
    std::sort(pixels.begin(), pixels.end());
    return pixels;
}

GrayMap rasterize_segment(const Segment& seg, const LabelRect* exclude, int image_width,
                          int image_height) {
    GrayMap mask(image_width, image_height);
    for (const PixelCoord& p : trace_segment(seg, exclude, image_width, image_height))
        mask.at(p.x, p.y) = 1.0;
    return mask;
}

double rect_map_sum(const LabelRect& rect, const GrayMap& map) {
    const int x0 = std::max(rect.x_lo(), 0);
    const int x1 = std::min(rect.x_hi(), map.width - 1);
    const int y0 = std::max(rect.y_lo(), 0);
    const int y1 = std::min(rect.y_hi(), map.height - 1);
    double acc = 0.0;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) acc += map.at(x, y);
    return acc;
}

double pixels_map_sum(const std::vector<PixelCoord>& pixels, const GrayMap& map) {
    double acc = 0.0;
    for (const PixelCoord& p : pixels) acc += map.at(p.x, p.y);
    return acc;
}

long long shared_pixel_count(const std::vector<PixelCoord>& a, const std::vector<PixelCoord>& b) {
    long long count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace arlabel
