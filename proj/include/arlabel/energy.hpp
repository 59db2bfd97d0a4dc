#pragma once

#include <span>
#include <string>
#include <vector>

#include "arlabel/geometry.hpp"
#include "arlabel/guidance.hpp"
#include "arlabel/raster.hpp"

namespace arlabel {

/// The leader-line orientation term as written scores |cos phi| against the
/// y axis (a vertical leader costs the most); prefer_vertical flips it to
/// 1 - |cos phi| so vertical leaders are rewarded. Default: prefer_vertical.
enum class OrientationMode { as_written, prefer_vertical };

struct EnergyWeights {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;       // label terms
    double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;  // leader-line terms
    OrientationMode orientation = OrientationMode::prefer_vertical;

    /// Coefficients learned on the original street-view placement study.
    static EnergyWeights streetview_preset() {
        return {0.3514, 0.0675, 0.0839, 0.0371, 0.1078, 0.2302, 0.1221,
                OrientationMode::prefer_vertical};
    }

    /// Coefficients scaled for the small synthetic scenes: guidance coverage
    /// dominates, leader length is a mild pull.
    static EnergyWeights synthetic_preset() {
        return {3.0, 0.3, 1.5, 0.5, 0.3, 0.002, 0.02, OrientationMode::prefer_vertical};
    }
};

struct EnergyBreakdown {
    double lb_g = 0.0;    // labels over guidance
    double lb_e = 0.0;    // labels over edges
    double lb_int = 0.0;  // label-label overlap
    double ln_g = 0.0;    // leader lines over guidance
    double ln_int = 0.0;  // leader-line crossings (shared pixels)
    double ln_len = 0.0;  // total leader length
    double ln_ori = 0.0;  // orientation cost
    double total = 0.0;

    std::string to_json() const;
};

/// A layout as the energy model sees it: label anchors paired with their
/// POIs, one shared label size, inside a known image.
struct LayoutView {
    std::span<const Vec2> anchors;
    std::span<const Vec2> pois;
    int label_width = 0;
    int label_height = 0;
    int image_width = 0;
    int image_height = 0;

    size_t size() const { return anchors.size(); }
    LabelRect rect(size_t k) const { return {anchors[k], label_width, label_height}; }
};

/// Leader-line pixels for label k: POI -> anchor, label interior excluded,
/// sorted row-major. A zero-length leader has no pixels.
std::vector<PixelCoord> leader_pixels(const LayoutView& view, size_t k);

double e_label_guidance(const LayoutView& view, const GrayMap& guidance);
double e_label_edge(const LayoutView& view, const GrayMap& edges);
double e_label_intersection(const LayoutView& view);
double e_line_guidance(const LayoutView& view, const GrayMap& guidance);
double e_line_intersection(const LayoutView& view);
double e_line_length(const LayoutView& view);
double e_line_orientation(const LayoutView& view, OrientationMode mode);

/// Single-leader orientation cost; zero-length leaders contribute 0.
double orientation_cost(Vec2 leader, OrientationMode mode);

EnergyBreakdown total_energy(const LayoutView& view, const GuidanceBundle& bundle,
                             const EnergyWeights& weights);

}  // namespace arlabel
