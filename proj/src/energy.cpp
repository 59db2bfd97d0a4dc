#include "arlabel/energy.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace arlabel {

std::vector<PixelCoord> leader_pixels(const LayoutView& view, size_t k) {
    const LabelRect rect = view.rect(k);
    const Segment seg{view.pois[k], view.anchors[k]};
    return trace_segment(seg, &rect, view.image_width, view.image_height);
}

double e_label_guidance(const LayoutView& view, const GrayMap& guidance) {
    double acc = 0.0;
    for (size_t k = 0; k < view.size(); ++k) acc += rect_map_sum(view.rect(k), guidance);
    return acc / static_cast<double>(view.label_width * view.label_height);
}

double e_label_edge(const LayoutView& view, const GrayMap& edges) {
    return e_label_guidance(view, edges);
}

double e_label_intersection(const LayoutView& view) {
    long long shared = 0;
    for (size_t k = 0; k + 1 < view.size(); ++k)
        for (size_t j = k + 1; j < view.size(); ++j)
            shared += intersection_area(view.rect(k), view.rect(j), view.image_width,
                                        view.image_height);
    return static_cast<double>(shared) /
           static_cast<double>(view.label_width * view.label_height);
}

double e_line_guidance(const LayoutView& view, const GrayMap& guidance) {
    double acc = 0.0;
    for (size_t k = 0; k < view.size(); ++k)
        acc += pixels_map_sum(leader_pixels(view, k), guidance);
    return acc / static_cast<double>(view.label_width * view.label_height);
}

double e_line_intersection(const LayoutView& view) {
    if (view.size() < 2) return 0.0;
    std::vector<std::vector<PixelCoord>> traces(view.size());
    for (size_t k = 0; k < view.size(); ++k) traces[k] = leader_pixels(view, k);
    long long shared = 0;
    for (size_t k = 0; k + 1 < view.size(); ++k)
        for (size_t j = k + 1; j < view.size(); ++j)
            shared += shared_pixel_count(traces[k], traces[j]);
    return static_cast<double>(shared);
}

double e_line_length(const LayoutView& view) {
    double acc = 0.0;
    for (size_t k = 0; k < view.size(); ++k) acc += distance(view.anchors[k], view.pois[k]);
    return acc;
}

double orientation_cost(Vec2 leader, OrientationMode mode) {
    const double len = norm(leader);
    if (len == 0.0) return 0.0;
    const double cos_to_y = std::abs(leader.y) / len;
    return mode == OrientationMode::as_written ? cos_to_y : 1.0 - cos_to_y;
}

double e_line_orientation(const LayoutView& view, OrientationMode mode) {
    double acc = 0.0;
    for (size_t k = 0; k < view.size(); ++k)
        acc += orientation_cost(view.anchors[k] - view.pois[k], mode);
    return acc;
}

EnergyBreakdown total_energy(const LayoutView& view, const GuidanceBundle& bundle,
                             const EnergyWeights& weights) {
    EnergyBreakdown b;
    b.lb_g = e_label_guidance(view, bundle.guidance);
    b.lb_e = e_label_edge(view, bundle.edges);
    b.lb_int = e_label_intersection(view);
    b.ln_g = e_line_guidance(view, bundle.guidance);
    b.ln_int = e_line_intersection(view);
    b.ln_len = e_line_length(view);
    b.ln_ori = e_line_orientation(view, weights.orientation);
    b.total = weights.a1 * b.lb_g + weights.a2 * b.lb_e + weights.a3 * b.lb_int +
              weights.b1 * b.ln_g + weights.b2 * b.ln_int + weights.b3 * b.ln_len +
              weights.b4 * b.ln_ori;
    return b;
}

std::string EnergyBreakdown::to_json() const {
    nlohmann::json doc;
    doc["lb_g"] = lb_g;
    doc["lb_e"] = lb_e;
    doc["lb_int"] = lb_int;
    doc["ln_g"] = ln_g;
    doc["ln_int"] = ln_int;
    doc["ln_len"] = ln_len;
    doc["ln_ori"] = ln_ori;
    doc["total"] = total;
    return doc.dump(2);
}

}  // namespace arlabel
