#include "arlabel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "arlabel/error.hpp"

namespace arlabel {

std::string method_name(Method m) {
    switch (m) {
        case Method::proposed: return "proposed";
        case Method::naive: return "naive";
        case Method::height_sep: return "height-sep";
        case Method::planar_sep: return "planar-sep";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "proposed") return Method::proposed;
    if (name == "naive") return Method::naive;
    if (name == "height-sep" || name == "height-separation") return Method::height_sep;
    if (name == "planar-sep" || name == "planar-separation") return Method::planar_sep;
    throw ArlabelError("unknown method '" + name + "'");
}

LayoutView make_view(const Scene& scene, const std::vector<Vec2>& anchors) {
    return {anchors, scene.pois, scene.label_width, scene.label_height, scene.width, scene.height};
}

std::string Layout::to_json(const Scene& scene, const EnergyWeights* weights,
                            const SolverConfig* config) const {
    nlohmann::json doc;
    doc["scene_id"] = scene_id;
    doc["method"] = method;
    doc["positions"] = nlohmann::json::array();
    for (size_t k = 0; k < anchors.size(); ++k)
        doc["positions"].push_back({{"k", k}, {"x", anchors[k].x}, {"y", anchors[k].y}});
    doc["label_size"] = {{"width", scene.label_width}, {"height", scene.label_height}};
    if (weights) {
        doc["weights"] = {{"alpha", {weights->a1, weights->a2, weights->a3}},
                          {"beta", {weights->b1, weights->b2, weights->b3, weights->b4}},
                          {"orientation", weights->orientation == OrientationMode::prefer_vertical
                                              ? "prefer-vertical"
                                              : "as-written"}};
    }
    if (config) {
        doc["config"] = {{"grid_stride", config->grid_stride},
                         {"planar_radius", config->planar_radius}};
    }
    return doc.dump(2) + "\n";
}

namespace detail {

std::vector<Vec2> candidate_grid(const Scene& scene, int stride) {
    std::vector<Vec2> grid;
    const int cx_min = scene.label_width / 2;
    const int cx_max = scene.width - (scene.label_width + 1) / 2;
    const int cy_min = scene.label_height / 2;
    const int cy_max = scene.height - (scene.label_height + 1) / 2;
    for (int cy = cy_min; cy <= cy_max; cy += stride)
        for (int cx = cx_min; cx <= cx_max; cx += stride)
            grid.push_back({static_cast<double>(cx), static_cast<double>(cy)});
    return grid;
}

double candidate_score(const Scene& scene, const GuidanceBundle& bundle,
                       const EnergyWeights& weights, const PlacedState& placed, size_t poi_index,
                       Vec2 center, double& leader_len) {
    const double area = static_cast<double>(scene.label_width * scene.label_height);
    const LabelRect rect{center, scene.label_width, scene.label_height};

    const double lb_g = rect_map_sum(rect, bundle.guidance) / area;
    const double lb_e = rect_map_sum(rect, bundle.edges) / area;

    long long overlap = 0;
    for (const LabelRect& other : placed.rects)
        overlap += intersection_area(rect, other, scene.width, scene.height);
    const double lb_int = static_cast<double>(overlap) / area;

    const Segment leader{scene.pois[poi_index], center};
    const std::vector<PixelCoord> trace =
        trace_segment(leader, &rect, scene.width, scene.height);
    const double ln_g = pixels_map_sum(trace, bundle.guidance) / area;

    long long crossings = 0;
    for (const std::vector<PixelCoord>& other : placed.traces)
        crossings += shared_pixel_count(trace, other);
    const double ln_int = static_cast<double>(crossings);

    leader_len = distance(center, scene.pois[poi_index]);
    const double ln_ori = orientation_cost(center - scene.pois[poi_index], weights.orientation);

    return weights.a1 * lb_g + weights.a2 * lb_e + weights.a3 * lb_int + weights.b1 * ln_g +
           weights.b2 * ln_int + weights.b3 * leader_len + weights.b4 * ln_ori;
}

std::vector<Candidate> score_candidates(const Scene& scene, const GuidanceBundle& bundle,
                                        const EnergyWeights& weights, const PlacedState& placed,
                                        size_t poi_index, const std::vector<Vec2>& grid) {
    std::vector<Candidate> out(grid.size());
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < grid.size(); ++i) {
        out[i].center = grid[i];
        out[i].score =
            candidate_score(scene, bundle, weights, placed, poi_index, grid[i], out[i].leader_len);
    }
    return out;
}

std::vector<Candidate> score_candidates_serial(const Scene& scene, const GuidanceBundle& bundle,
                                               const EnergyWeights& weights,
                                               const PlacedState& placed, size_t poi_index,
                                               const std::vector<Vec2>& grid) {
    std::vector<Candidate> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        out[i].center = grid[i];
        out[i].score =
            candidate_score(scene, bundle, weights, placed, poi_index, grid[i], out[i].leader_len);
    }
    return out;
}

size_t best_candidate(const std::vector<Candidate>& candidates) {
    size_t best = 0;
    for (size_t i = 1; i < candidates.size(); ++i) {
        const Candidate& a = candidates[i];
        const Candidate& b = candidates[best];
        const auto key = [](const Candidate& c) {
            return std::make_tuple(c.score, c.leader_len, c.center.y, c.center.x);
        };
        if (key(a) < key(b)) best = i;
    }
    return best;
}

}  // namespace detail

namespace {

void check_feasible(const Scene& scene) {
    if (scene.label_width > scene.width || scene.label_height > scene.height)
        throw NoFeasiblePlacement("label " + std::to_string(scene.label_width) + "x" +
                                  std::to_string(scene.label_height) + " does not fit image " +
                                  std::to_string(scene.width) + "x" +
                                  std::to_string(scene.height));
}

// Left to right; nearest first within a column, with the distance from the
// image bottom-center standing in for depth.
std::vector<size_t> processing_order(const Scene& scene) {
    std::vector<size_t> order(scene.pois.size());
    std::iota(order.begin(), order.end(), size_t{0});
    const Vec2 bottom_center{scene.width * 0.5, static_cast<double>(scene.height)};
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (scene.pois[a].x != scene.pois[b].x) return scene.pois[a].x < scene.pois[b].x;
        return distance(scene.pois[a], bottom_center) < distance(scene.pois[b], bottom_center);
    });
    return order;
}

bool rects_overlap(const Scene& scene, Vec2 a, Vec2 b) {
    const LabelRect ra{a, scene.label_width, scene.label_height};
    const LabelRect rb{b, scene.label_width, scene.label_height};
    return intersection_area(ra, rb, scene.width, scene.height) > 0;
}

}  // namespace

Layout solve_greedy(const Scene& scene, const GuidanceBundle& bundle,
                    const EnergyWeights& weights, const SolverConfig& config) {
    check_feasible(scene);
    if (config.grid_stride < 1) throw ArlabelError("grid stride must be >= 1");

    const std::vector<Vec2> grid = detail::candidate_grid(scene, config.grid_stride);
    if (grid.empty()) throw NoFeasiblePlacement("empty candidate grid");

    Layout layout;
    layout.scene_id = scene.id;
    layout.method = method_name(Method::proposed);
    layout.anchors.resize(scene.pois.size());

    detail::PlacedState placed;
    for (size_t k : processing_order(scene)) {
        const std::vector<detail::Candidate> scored =
            detail::score_candidates(scene, bundle, weights, placed, k, grid);
        const detail::Candidate& chosen = scored[detail::best_candidate(scored)];
        layout.anchors[k] = chosen.center;

        const LabelRect rect{chosen.center, scene.label_width, scene.label_height};
        placed.rects.push_back(rect);
        placed.traces.push_back(
            trace_segment({scene.pois[k], chosen.center}, &rect, scene.width, scene.height));
    }
    return layout;
}

Layout solve_naive(const Scene& scene) {
    check_feasible(scene);
    Layout layout;
    layout.scene_id = scene.id;
    layout.method = method_name(Method::naive);
    for (const Vec2& poi : scene.pois)
        layout.anchors.push_back({clamp_center(poi.x, scene.width, scene.label_width),
                                  clamp_center(poi.y, scene.height, scene.label_height)});
    return layout;
}

Layout solve_height_separation(const Scene& scene) {
    Layout layout = solve_naive(scene);
    layout.method = method_name(Method::height_sep);

    const double step = scene.label_height * 0.5;
    const double cy_min = min_center(scene.label_height);
    const size_t n = layout.anchors.size();
    // Each move strictly decreases one label's y, so the total travel is
    // bounded; the guard covers the stuck case of labels pinned at the top.
    size_t max_moves = (n * n + n) * (static_cast<size_t>(scene.height / step) + 2);

    bool moved = true;
    while (moved && max_moves-- > 0) {
        moved = false;
        for (size_t i = 0; i < n && !moved; ++i)
            for (size_t j = i + 1; j < n && !moved; ++j) {
                if (!rects_overlap(scene, layout.anchors[i], layout.anchors[j])) continue;
                // Smaller POI y reads as farther away; that label moves up.
                size_t up = scene.pois[i].y < scene.pois[j].y ? i : j;
                if (layout.anchors[up].y <= cy_min) up = (up == i) ? j : i;
                if (layout.anchors[up].y <= cy_min) continue;  // both pinned
                layout.anchors[up].y = std::max(cy_min, layout.anchors[up].y - step);
                moved = true;
            }
    }
    return layout;
}

Layout solve_planar_separation(const Scene& scene, const SolverConfig& config) {
    Layout layout = solve_naive(scene);
    layout.method = method_name(Method::planar_sep);
    const size_t n = layout.anchors.size();

    auto total_overlap = [&](size_t k, Vec2 center) {
        const LabelRect rect{center, scene.label_width, scene.label_height};
        long long acc = 0;
        for (size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const LabelRect other{layout.anchors[j], scene.label_width, scene.label_height};
            acc += intersection_area(rect, other, scene.width, scene.height);
        }
        return acc;
    };

    for (size_t k = 0; k < n; ++k) {
        if (total_overlap(k, layout.anchors[k]) == 0) continue;
        long long best_overlap = -1;
        Vec2 best = layout.anchors[k];
        for (int step = 0; step < 36; ++step) {
            const double angle = step * 10.0 * M_PI / 180.0;
            Vec2 cand{scene.pois[k].x + config.planar_radius * std::cos(angle),
                      scene.pois[k].y + config.planar_radius * std::sin(angle)};
            cand.x = clamp_center(cand.x, scene.width, scene.label_width);
            cand.y = clamp_center(cand.y, scene.height, scene.label_height);
            const long long overlap = total_overlap(k, cand);
            if (best_overlap < 0 || overlap < best_overlap) {
                best_overlap = overlap;
                best = cand;
            }
        }
        layout.anchors[k] = best;
    }
    return layout;
}

Layout solve(Method method, const Scene& scene, const GuidanceBundle& bundle,
             const EnergyWeights& weights, const SolverConfig& config) {
    switch (method) {
        case Method::proposed: return solve_greedy(scene, bundle, weights, config);
        case Method::naive: return solve_naive(scene);
        case Method::height_sep: return solve_height_separation(scene);
        case Method::planar_sep: return solve_planar_separation(scene, config);
    }
    throw ArlabelError("unknown method");
}

RgbImage render_overlay(const Scene& scene, const Layout& layout, const RgbImage& image) {
    RgbImage out = image;
    auto put = [&](int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        if (x < 0 || x >= out.width || y < 0 || y >= out.height) return;
        uint8_t* px = out.pixel(x, y);
        px[0] = r;
        px[1] = g;
        px[2] = b;
    };

    const LayoutView view = make_view(scene, layout.anchors);
    for (size_t k = 0; k < layout.anchors.size(); ++k)
        for (const PixelCoord& p : leader_pixels(view, k)) put(p.x, p.y, 0, 0, 0);

    for (size_t k = 0; k < layout.anchors.size(); ++k) {
        const LabelRect rect = view.rect(k);
        const int x0 = std::max(rect.x_lo(), 0), x1 = std::min(rect.x_hi(), out.width - 1);
        const int y0 = std::max(rect.y_lo(), 0), y1 = std::min(rect.y_hi(), out.height - 1);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                const bool border =
                    x == rect.x_lo() || x == rect.x_hi() || y == rect.y_lo() || y == rect.y_hi();
                if (border)
                    put(x, y, 0, 0, 0);
                else
                    put(x, y, 255, 255, 255);
            }

        // Text placeholder: tick marks sized to the text, one block per
        // character, vertically centered.
        const std::string& text =
            k < scene.label_texts.size() ? scene.label_texts[k] : std::string("label");
        const int ticks = std::max(1, static_cast<int>(text.size()));
        const int tick_h = std::min(6, scene.label_height - 6);
        if (tick_h > 0) {
            int tx = x0 + 4;
            const int ty = (y0 + y1) / 2 - tick_h / 2;
            for (int t = 0; t < ticks && tx + 2 <= x1 - 4; ++t, tx += 4)
                for (int y = ty; y < ty + tick_h; ++y)
                    for (int x = tx; x < tx + 2; ++x)
                        if (x > x0 && x < x1 && y > y0 && y < y1) put(x, y, 30, 30, 30);
        }
    }
    return out;
}

}  // namespace arlabel
