#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arlabel/energy.hpp"
#include "arlabel/metrics.hpp"
#include "arlabel/solver.hpp"

namespace arlabel {

struct TrainCase {
    const Scene* scene = nullptr;
    const GuidanceBundle* bundle = nullptr;
    const ConsensusPlacement* consensus = nullptr;
};

struct WeightSearchConfig {
    int budget = 500;  // objective evaluations, including the initial one
    uint64_t seed = 0;
    EnergyWeights init = EnergyWeights::streetview_preset();
    SolverConfig solver;
    double step_factor = 2.0;
    double min_step_factor = 1.05;
};

struct WeightLearnResult {
    EnergyWeights weights;
    double objective = 0.0;  // training mu_centroid of the returned weights
    int evaluations = 0;
    std::vector<std::string> log;
};

/// Training mu_centroid of the greedy solver under the given weights.
double training_objective(const std::vector<TrainCase>& cases, const EnergyWeights& weights,
                          const SolverConfig& solver);

/// Seeded coordinate descent with multiplicative steps over the seven
/// non-negative weights; never returns weights scoring worse than the
/// initialization. Throws on an empty training set.
WeightLearnResult learn_weights(const std::vector<TrainCase>& cases,
                                const WeightSearchConfig& config);

std::string weights_to_json(const EnergyWeights& weights, const WeightLearnResult* result);
EnergyWeights weights_from_json(const std::string& text);

}  // namespace arlabel
