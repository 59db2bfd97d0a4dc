#include "arlabel/vision.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "arlabel/error.hpp"

namespace arlabel {

namespace detail {

void rgb_to_lab(uint8_t r8, uint8_t g8, uint8_t b8, double& L, double& A, double& B) {
    auto linearize = [](double c) {
        return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    };
    const double r = linearize(r8 / 255.0);
    const double g = linearize(g8 / 255.0);
    const double b = linearize(b8 / 255.0);

    // sRGB D65
    const double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / 0.95047;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / 1.08883;

    auto f = [](double t) {
        return t > 0.008856 ? std::cbrt(t) : 7.787 * t + 16.0 / 116.0;
    };
    const double fx = f(x), fy = f(y), fz = f(z);
    L = 116.0 * fy - 16.0;
    A = 500.0 * (fx - fy);
    B = 200.0 * (fy - fz);
}

}  // namespace detail

namespace {

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

struct LabPlanes {
    int width = 0, height = 0;
    std::vector<double> L, A, B;
};

LabPlanes to_lab(const RgbImage& image, bool parallel) {
    LabPlanes lab;
    lab.width = image.width;
    lab.height = image.height;
    const size_t n = static_cast<size_t>(image.width) * image.height;
    lab.L.resize(n);
    lab.A.resize(n);
    lab.B.resize(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            const uint8_t* px = image.pixel(x, y);
            const size_t i = static_cast<size_t>(y) * image.width + x;
            detail::rgb_to_lab(px[0], px[1], px[2], lab.L[i], lab.A[i], lab.B[i]);
        }
    return lab;
}

// Separable 5-tap binomial blur [1 4 6 4 1]/16 with edge replication.
void blur5(const std::vector<double>& src, std::vector<double>& dst, int width, int height,
           bool parallel) {
    static const double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    std::vector<double> tmp(src.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = -2; t <= 2; ++t)
                acc += k[t + 2] * src[static_cast<size_t>(y) * width + clampi(x + t, 0, width - 1)];
            tmp[static_cast<size_t>(y) * width + x] = acc;
        }
    dst.resize(src.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = -2; t <= 2; ++t)
                acc += k[t + 2] * tmp[static_cast<size_t>(clampi(y + t, 0, height - 1)) * width + x];
            dst[static_cast<size_t>(y) * width + x] = acc;
        }
}

GrayMap saliency_ft_impl(const RgbImage& image, bool parallel) {
    const LabPlanes lab = to_lab(image, parallel);
    const int w = image.width, h = image.height;
    const size_t n = lab.L.size();

    // Deterministic mean: per-row partial sums combined in row order, so the
    // result does not depend on the thread count.
    std::vector<double> rowL(h, 0.0), rowA(h, 0.0), rowB(h, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < h; ++y) {
        double sl = 0, sa = 0, sb = 0;
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            sl += lab.L[i];
            sa += lab.A[i];
            sb += lab.B[i];
        }
        rowL[y] = sl;
        rowA[y] = sa;
        rowB[y] = sb;
    }
    double meanL = 0, meanA = 0, meanB = 0;
    for (int y = 0; y < h; ++y) {
        meanL += rowL[y];
        meanA += rowA[y];
        meanB += rowB[y];
    }
    meanL /= static_cast<double>(n);
    meanA /= static_cast<double>(n);
    meanB /= static_cast<double>(n);

    std::vector<double> bL, bA, bB;
    blur5(lab.L, bL, w, h, parallel);
    blur5(lab.A, bA, w, h, parallel);
    blur5(lab.B, bB, w, h, parallel);

    GrayMap out(w, h);
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            const double dl = meanL - bL[i];
            const double da = meanA - bA[i];
            const double db = meanB - bB[i];
            out.data[i] = std::sqrt(dl * dl + da * da + db * db);
        }
    // Uniform images leave only rounding noise; do not normalize it up to 1.
    if (out.max_value() < 1e-9) return GrayMap(w, h, 0.0);
    out.normalize();
    return out;
}

void gaussian_blur(const std::vector<double>& src, std::vector<double>& dst, int width, int height,
                   double sigma, bool parallel) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int t = -radius; t <= radius; ++t) {
        kernel[t + radius] = std::exp(-0.5 * (t * t) / (sigma * sigma));
        ksum += kernel[t + radius];
    }
    for (double& kv : kernel) kv /= ksum;

    std::vector<double> tmp(src.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t)
                acc += kernel[t + radius] *
                       src[static_cast<size_t>(y) * width + clampi(x + t, 0, width - 1)];
            tmp[static_cast<size_t>(y) * width + x] = acc;
        }
    dst.resize(src.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t)
                acc += kernel[t + radius] *
                       tmp[static_cast<size_t>(clampi(y + t, 0, height - 1)) * width + x];
            dst[static_cast<size_t>(y) * width + x] = acc;
        }
}

GrayMap canny_impl(const RgbImage& image, const EdgeParams& params, bool parallel) {
    const int w = image.width, h = image.height;
    const size_t n = static_cast<size_t>(w) * h;

    std::vector<double> gray(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const uint8_t* px = image.pixel(x, y);
            gray[static_cast<size_t>(y) * w + x] =
                (0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]) / 255.0;
        }

    std::vector<double> smooth;
    gaussian_blur(gray, smooth, w, h, params.gaussian_sigma, parallel);

    std::vector<double> mag(n, 0.0);
    std::vector<uint8_t> dir(n, 0);  // 0: 0deg, 1: 45deg, 2: 90deg, 3: 135deg
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            auto v = [&](int xx, int yy) {
                return smooth[static_cast<size_t>(clampi(yy, 0, h - 1)) * w + clampi(xx, 0, w - 1)];
            };
            const double gx = (v(x + 1, y - 1) + 2 * v(x + 1, y) + v(x + 1, y + 1)) -
                              (v(x - 1, y - 1) + 2 * v(x - 1, y) + v(x - 1, y + 1));
            const double gy = (v(x - 1, y + 1) + 2 * v(x, y + 1) + v(x + 1, y + 1)) -
                              (v(x - 1, y - 1) + 2 * v(x, y - 1) + v(x + 1, y - 1));
            const size_t i = static_cast<size_t>(y) * w + x;
            mag[i] = std::hypot(gx, gy);
            double angle = std::atan2(gy, gx) * 180.0 / M_PI;
            if (angle < 0) angle += 180.0;
            uint8_t d = 0;
            if (angle >= 22.5 && angle < 67.5)
                d = 1;
            else if (angle >= 67.5 && angle < 112.5)
                d = 2;
            else if (angle >= 112.5 && angle < 157.5)
                d = 3;
            dir[i] = d;
        }

    double max_mag = 0.0;
    {
        std::vector<double> row_max(h, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
        for (int y = 0; y < h; ++y) {
            double m = 0.0;
            for (int x = 0; x < w; ++x)
                m = std::max(m, mag[static_cast<size_t>(y) * w + x]);
            row_max[y] = m;
        }
        for (int y = 0; y < h; ++y) max_mag = std::max(max_mag, row_max[y]);
    }

    GrayMap edges(w, h);
    if (max_mag <= 0.0) return edges;

    // Non-maximum suppression. The plateau tie goes to the pixel whose
    // forward neighbor is strictly smaller, so a symmetric two-pixel ridge
    // thins to a single line.
    std::vector<double> thin(n, 0.0);
    static const int off[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            if (mag[i] <= 0.0) continue;
            const int dx = off[dir[i]][0], dy = off[dir[i]][1];
            auto m_at = [&](int xx, int yy) {
                if (xx < 0 || xx >= w || yy < 0 || yy >= h) return 0.0;
                return mag[static_cast<size_t>(yy) * w + xx];
            };
            const double fwd = m_at(x + dx, y + dy);
            const double bwd = m_at(x - dx, y - dy);
            if (mag[i] > fwd && mag[i] >= bwd) thin[i] = mag[i];
        }

    const double high = params.high_threshold * max_mag;
    const double low = params.low_threshold * max_mag;

    // Hysteresis from strong seeds over weak pixels, 8-connected.
    std::vector<int> stack;
    stack.reserve(n / 8);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            if (thin[i] >= high && edges.data[i] == 0.0) {
                edges.data[i] = 1.0;
                stack.push_back(static_cast<int>(i));
                while (!stack.empty()) {
                    const int j = stack.back();
                    stack.pop_back();
                    const int jx = j % w, jy = j / w;
                    for (int oy = -1; oy <= 1; ++oy)
                        for (int ox = -1; ox <= 1; ++ox) {
                            const int nx = jx + ox, ny = jy + oy;
                            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                            const size_t ni = static_cast<size_t>(ny) * w + nx;
                            if (edges.data[ni] == 0.0 && thin[ni] >= low) {
                                edges.data[ni] = 1.0;
                                stack.push_back(static_cast<int>(ni));
                            }
                        }
                }
            }
        }
    return edges;
}

}  // namespace

GrayMap saliency_ft(const RgbImage& image) { return saliency_ft_impl(image, true); }
GrayMap saliency_ft_serial(const RgbImage& image) { return saliency_ft_impl(image, false); }

GrayMap canny(const RgbImage& image, const EdgeParams& params) {
    return canny_impl(image, params, true);
}
GrayMap canny_serial(const RgbImage& image, const EdgeParams& params) {
    return canny_impl(image, params, false);
}

GrayMap resolve_saliency(const SaliencySource& source, const RgbImage& image) {
    if (source.kind == SaliencyKind::builtin_ft) return saliency_ft(image);

    GrayMap map = load_graymap(source.path);
    if (map.width != image.width || map.height != image.height)
        throw DimensionMismatch("saliency map " + source.path.string() + " is " +
                                std::to_string(map.width) + "x" + std::to_string(map.height) +
                                ", image is " + std::to_string(image.width) + "x" +
                                std::to_string(image.height));
    map.normalize();
    return map;
}

}  // namespace arlabel
