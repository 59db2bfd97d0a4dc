#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "arlabel/image_io.hpp"
#include "arlabel/raster.hpp"

namespace arlabel {

enum class SaliencyKind { builtin_ft, file };

struct SaliencySource {
    SaliencyKind kind = SaliencyKind::builtin_ft;
    std::filesystem::path path;  // required when kind == file
};

struct EdgeParams {
    double gaussian_sigma = 1.4;
    double low_threshold = 0.1;   // fraction of the max gradient magnitude
    double high_threshold = 0.3;  // fraction of the max gradient magnitude
};

/// Frequency-tuned saliency: per-pixel Lab distance between the global mean
/// Lab vector and the 5x5-binomial-blurred Lab value, normalized to max 1.
GrayMap saliency_ft(const RgbImage& image);
GrayMap saliency_ft_serial(const RgbImage& image);

/// Classic Canny pipeline (grayscale, Gaussian smooth, Sobel, non-maximum
/// suppression, hysteresis); output values are exactly 0 or 1.
GrayMap canny(const RgbImage& image, const EdgeParams& params = {});
GrayMap canny_serial(const RgbImage& image, const EdgeParams& params = {});

/// Dispatch between the builtin detector and a precomputed map file; file
/// maps are checked against the image dimensions and renormalized to max 1.
GrayMap resolve_saliency(const SaliencySource& source, const RgbImage& image);

namespace detail {
// Lab conversion shared by the parallel and serial saliency paths.
void rgb_to_lab(uint8_t r, uint8_t g, uint8_t b, double& L, double& A, double& B);
}  // namespace detail

}  // namespace arlabel
