#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace arlabel {

// Pixel coordinates, x right, y down, origin at the top-left corner.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct PixelCoord {
    int x = 0;
    int y = 0;

    friend bool operator==(PixelCoord a, PixelCoord b) { return a.x == b.x && a.y == b.y; }
    // Row-major order, the canonical order for deterministic pixel sums.
    friend bool operator<(PixelCoord a, PixelCoord b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// Axis-aligned label rectangle anchored at its center.
// Pixel (x, y) is covered iff  cx - w/2 <= x < cx + w/2  and the same in y,
// so an integer-centered even-sized rect covers exactly width*height pixels.
struct LabelRect {
    Vec2 center;
    int width = 0;   // nu_L
    int height = 0;  // mu_L

    int x_lo() const { return static_cast<int>(std::ceil(center.x - width * 0.5)); }
    int y_lo() const { return static_cast<int>(std::ceil(center.y - height * 0.5)); }
    int x_hi() const { return static_cast<int>(std::ceil(center.x + width * 0.5)) - 1; }
    int y_hi() const { return static_cast<int>(std::ceil(center.y + height * 0.5)) - 1; }

    long long area() const { return static_cast<long long>(width) * height; }

    bool inside(int image_width, int image_height) const {
        return x_lo() >= 0 && y_lo() >= 0 && x_hi() < image_width && y_hi() < image_height;
    }

    bool covers(int px, int py) const {
        return px >= x_lo() && px <= x_hi() && py >= y_lo() && py <= y_hi();
    }
};

struct Segment {
    Vec2 from;
    Vec2 to;
};

// Pixel count of the overlap of two rects, both clipped to the image.
inline long long intersection_area(const LabelRect& a, const LabelRect& b, int image_width,
                                   int image_height) {
    const int x0 = std::max({a.x_lo(), b.x_lo(), 0});
    const int x1 = std::min({a.x_hi(), b.x_hi(), image_width - 1});
    const int y0 = std::max({a.y_lo(), b.y_lo(), 0});
    const int y1 = std::min({a.y_hi(), b.y_hi(), image_height - 1});
    if (x1 < x0 || y1 < y0) return 0;
    return static_cast<long long>(x1 - x0 + 1) * (y1 - y0 + 1);
}

// Feasible anchor range keeping the rect fully inside the image.
// For integer anchors this is [floor(s/2), dim - ceil(s/2)] per axis.
inline double min_center(int rect_side) { return rect_side * 0.5; }
inline double max_center(int image_side, int rect_side) { return image_side - rect_side * 0.5; }

inline double clamp_center(double c, int image_side, int rect_side) {
    return std::clamp(c, min_center(rect_side), max_center(image_side, rect_side));
}

}  // namespace arlabel
