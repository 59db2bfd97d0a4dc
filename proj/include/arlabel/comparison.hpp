#pragma once

#include <vector>

#include "arlabel/dataset.hpp"
#include "arlabel/metrics.hpp"
#include "arlabel/weight_learn.hpp"

namespace arlabel {

struct ComparisonConfig {
    std::vector<Method> methods = {Method::naive, Method::height_sep, Method::planar_sep,
                                   Method::proposed};
    std::vector<AblationMode> modes = {AblationMode{}};
    EnergyWeights weights = EnergyWeights::streetview_preset();
    PriorWeights priors = PriorWeights::streetview_preset();
    SolverConfig solver;
    EdgeParams edges;
    double gamma = kDefaultGamma;
};

/// Everything needed to evaluate one scene under one ablation mode, kept so
/// callers can reuse bundles across methods.
struct PreparedScene {
    const SceneEntry* entry = nullptr;
    GuidanceBundle bundle;
    ConsensusPlacement consensus;
};

/// Loads scene data and builds bundles for one mode; scene-parallel,
/// deterministic. Scenes that fail to load raise.
std::vector<PreparedScene> prepare_scenes(const DatasetManifest& manifest,
                                          const AblationMode& mode,
                                          const ComparisonConfig& config);

/// One metric row per (method, mode) pair.
MetricReport run_comparison(const DatasetManifest& manifest, const ComparisonConfig& config);

}  // namespace arlabel
