#include "arlabel/weight_learn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arlabel/error.hpp"

namespace arlabel {

namespace {

double* coordinate(EnergyWeights& w, int index) {
    switch (index) {
        case 0: return &w.a1;
        case 1: return &w.a2;
        case 2: return &w.a3;
        case 3: return &w.b1;
        case 4: return &w.b2;
        case 5: return &w.b3;
        case 6: return &w.b4;
    }
    return nullptr;
}

const char* coordinate_name(int index) {
    static const char* names[] = {"a1", "a2", "a3", "b1", "b2", "b3", "b4"};
    return names[index];
}

}  // namespace

double training_objective(const std::vector<TrainCase>& cases, const EnergyWeights& weights,
                          const SolverConfig& solver) {
    std::vector<EvalScene> evals;
    evals.reserve(cases.size());
    for (const TrainCase& c : cases) {
        EvalScene e;
        e.scene = c.scene;
        e.bundle = c.bundle;
        e.consensus = c.consensus;
        e.prediction = solve_greedy(*c.scene, *c.bundle, weights, solver).anchors;
        evals.push_back(std::move(e));
    }
    return mu_centroid(evals);
}

WeightLearnResult learn_weights(const std::vector<TrainCase>& cases,
                                const WeightSearchConfig& config) {
    if (cases.empty()) throw ArlabelError("weight learning needs a non-empty training set");

    WeightLearnResult result;
    result.weights = config.init;
    result.objective = training_objective(cases, config.init, config.solver);
    result.evaluations = 1;
    {
        std::ostringstream line;
        line << "init objective " << result.objective;
        result.log.push_back(line.str());
    }

    std::mt19937_64 rng(config.seed);
    std::vector<int> order = {0, 1, 2, 3, 4, 5, 6};
    double factor = config.step_factor;

    while (factor >= config.min_step_factor && result.evaluations < config.budget) {
        std::shuffle(order.begin(), order.end(), rng);
        bool improved = false;
        for (int coord : order) {
            const double current = *coordinate(result.weights, coord);
            // A zero coordinate cannot grow multiplicatively; probe it at 1.
            const double candidates[2] = {current > 0.0 ? current * factor : 1.0,
                                          current / factor};
            for (double value : candidates) {
                if (result.evaluations >= config.budget) break;
                EnergyWeights trial = result.weights;
                *coordinate(trial, coord) = value;
                const double objective = training_objective(cases, trial, config.solver);
                ++result.evaluations;
                if (objective < result.objective) {
                    result.weights = trial;
                    result.objective = objective;
                    improved = true;
                    std::ostringstream line;
                    line << "eval " << result.evaluations << ": " << coordinate_name(coord)
                         << " -> " << value << ", objective " << objective;
                    result.log.push_back(line.str());
                    break;
                }
            }
            if (result.evaluations >= config.budget) break;
        }
        if (!improved) factor = std::sqrt(factor);
    }
    return result;
}

std::string weights_to_json(const EnergyWeights& weights, const WeightLearnResult* result) {
    nlohmann::json doc;
    doc["alpha"] = {weights.a1, weights.a2, weights.a3};
    doc["beta"] = {weights.b1, weights.b2, weights.b3, weights.b4};
    doc["orientation"] = weights.orientation == OrientationMode::prefer_vertical
                             ? "prefer-vertical"
                             : "as-written";
    if (result) {
        doc["objective"] = result->objective;
        doc["evaluations"] = result->evaluations;
        doc["log"] = result->log;
    }
    return doc.dump(2) + "\n";
}

EnergyWeights weights_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(std::string("invalid weights json: ") + e.what());
    }
    EnergyWeights w;
    const auto& alpha = doc.at("alpha");
    const auto& beta = doc.at("beta");
    if (alpha.size() != 3 || beta.size() != 4)
        throw ManifestError("weights json needs alpha[3] and beta[4]");
    w.a1 = alpha[0].get<double>();
    w.a2 = alpha[1].get<double>();
    w.a3 = alpha[2].get<double>();
    w.b1 = beta[0].get<double>();
    w.b2 = beta[1].get<double>();
    w.b3 = beta[2].get<double>();
    w.b4 = beta[3].get<double>();
    const std::string orientation = doc.value("orientation", "prefer-vertical");
    w.orientation = orientation == "as-written" ? OrientationMode::as_written
                                                : OrientationMode::prefer_vertical;
    return w;
}

}  // namespace arlabel
