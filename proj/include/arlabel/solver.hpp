#pragma once

#include <string>
#include <vector>

#include "arlabel/energy.hpp"
#include "arlabel/geometry.hpp"
#include "arlabel/guidance.hpp"
#include "arlabel/image_io.hpp"

namespace arlabel {

struct Scene {
    std::string id;
    int width = 0;
    int height = 0;
    std::vector<Vec2> pois;
    int label_width = 120;
    int label_height = 30;
    std::vector<std::string> label_texts;

    // Map-file references, relative to the owning manifest.
    std::string image_path;
    std::string semantic_path;
    std::string saliency_path;  // optional
};

enum class Method { proposed, naive, height_sep, planar_sep };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct SolverConfig {
    int grid_stride = 8;
    double planar_radius = 60.0;  // half the default label width
};

struct Layout {
    std::string scene_id;
    std::string method;
    std::vector<Vec2> anchors;  // label centers, one per POI

    std::string to_json(const Scene& scene, const EnergyWeights* weights = nullptr,
                        const SolverConfig* config = nullptr) const;
};

LayoutView make_view(const Scene& scene, const std::vector<Vec2>& anchors);

/// Greedy placement: labels sorted left-to-right (ties by distance from the
/// bottom-center, the near-to-far proxy), each committed to the lowest-energy
/// in-bounds grid candidate given the labels placed so far. Ties break by
/// leader length, then y, then x. Throws NoFeasiblePlacement when the label
/// does not fit the image.
Layout solve_greedy(const Scene& scene, const GuidanceBundle& bundle,
                    const EnergyWeights& weights, const SolverConfig& config);

/// Labels dropped directly onto the POIs, clamped in-bounds.
Layout solve_naive(const Scene& scene);

/// Labels share their POI's x; while two overlap, the one with the farther
/// POI (smaller y, the depth proxy) moves up by half a label height.
Layout solve_height_separation(const Scene& scene);

/// Starts from naive; an overlapping label tries 36 ring positions around
/// its POI at 10-degree steps and keeps the one with the least total overlap
/// (ties to the smallest angle).
Layout solve_planar_separation(const Scene& scene, const SolverConfig& config);

Layout solve(Method method, const Scene& scene, const GuidanceBundle& bundle,
             const EnergyWeights& weights, const SolverConfig& config);

/// White labels with a 1-px black border and a text placeholder, plus black
/// leader lines from each POI to its label border.
RgbImage render_overlay(const Scene& scene, const Layout& layout, const RgbImage& image);

namespace detail {
// Exposed for the solver tests and the kernel benchmark.
struct Candidate {
    Vec2 center;
    double score = 0.0;
    double leader_len = 0.0;
};
struct PlacedState {
    std::vector<LabelRect> rects;
    std::vector<std::vector<PixelCoord>> traces;
};
double candidate_score(const Scene& scene, const GuidanceBundle& bundle,
                       const EnergyWeights& weights, const PlacedState& placed, size_t poi_index,
                       Vec2 center, double& leader_len);
std::vector<Vec2> candidate_grid(const Scene& scene, int stride);
size_t best_candidate(const std::vector<Candidate>& candidates);
std::vector<Candidate> score_candidates(const Scene& scene, const GuidanceBundle& bundle,
                                        const EnergyWeights& weights, const PlacedState& placed,
                                        size_t poi_index, const std::vector<Vec2>& grid);
std::vector<Candidate> score_candidates_serial(const Scene& scene, const GuidanceBundle& bundle,
                                               const EnergyWeights& weights,
                                               const PlacedState& placed, size_t poi_index,
                                               const std::vector<Vec2>& grid);
}  // namespace detail

}  // namespace arlabel
