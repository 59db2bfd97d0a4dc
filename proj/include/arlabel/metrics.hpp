#pragma once

#include <string>
#include <vector>

#include "arlabel/energy.hpp"
#include "arlabel/solver.hpp"

namespace arlabel {

/// Robust per-label consensus of participant placements: the two most
/// isolated points (greatest sum of distances to the others, removed
/// sequentially) are dropped and the rest averaged. Fewer than three
/// participants keep every point, with a warning note.
struct ConsensusPlacement {
    std::vector<Vec2> anchors;      // one per label
    std::vector<int> retained;      // points kept per label
    std::vector<std::string> notes;
};

/// positions[participant][label].
ConsensusPlacement consensus(const std::vector<std::vector<Vec2>>& positions);

/// One evaluated scene: the prediction being scored plus everything needed
/// to score it.
struct EvalScene {
    const Scene* scene = nullptr;
    const GuidanceBundle* bundle = nullptr;
    const ConsensusPlacement* consensus = nullptr;
    std::vector<Vec2> prediction;
};

/// Mean distance between predicted anchors and the consensus anchors,
/// averaged over all labels of all scenes.
double mu_centroid(const std::vector<EvalScene>& scenes);

/// Mean of (label-guidance + label-overlap) energy per label.
double mu_over(const std::vector<EvalScene>& scenes);

/// Leader-line crossing severity: mean shared pixels per scene, plus the raw
/// total over the split.
struct MuInt {
    double mean = 0.0;
    double total = 0.0;
};
MuInt mu_int(const std::vector<EvalScene>& scenes);

/// Mean deviation of leader lengths from the preferred length gamma;
/// zero-length leaders (labels on their POIs) are skipped.
double mu_len(const std::vector<EvalScene>& scenes, double gamma);

inline constexpr double kDefaultGamma = 10.0;

struct MetricRow {
    std::string method;
    std::string mode;
    double mu_centroid = 0.0;
    double mu_over = 0.0;
    double mu_int_mean = 0.0;
    double mu_int_total = 0.0;
    double mu_len = 0.0;
};

struct MetricReport {
    std::vector<MetricRow> rows;
    double gamma = kDefaultGamma;
    int scene_count = 0;

    std::string to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

}  // namespace arlabel
