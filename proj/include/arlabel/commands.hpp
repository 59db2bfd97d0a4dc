#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arlabel/comparison.hpp"
#include "arlabel/dataset.hpp"

namespace arlabel {

// Exit codes shared by every command: 0 success, 1 usage error, 2 data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// "default"/"street" for the street-view preset, "synthetic" for the
/// desk-scale preset, otherwise a weights json path.
EnergyWeights resolve_weights(const std::string& source);

/// "default"/"street" for the street-view preset, "ones" for no prior,
/// otherwise a priors json path.
PriorWeights resolve_priors(const std::string& source);

struct LearnPriorsOptions {
    std::filesystem::path manifest;
    std::filesystem::path out;  // priors json file
    std::optional<std::filesystem::path> remap;
    int jobs = 0;
};
int cmd_learn_priors(const LearnPriorsOptions& options);

struct LearnWeightsOptions {
    std::filesystem::path manifest;
    std::filesystem::path out;  // weights json file
    std::string mode = "full";
    std::string priors = "default";
    std::string init_weights = "default";
    int budget = 500;
    uint64_t seed = 0;
    int stride = 8;
    int jobs = 0;
};
int cmd_learn_weights(const LearnWeightsOptions& options);

struct PlaceOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    std::string method = "proposed";
    std::string mode = "full";
    std::string weights = "default";
    std::string priors = "default";
    int stride = 8;
    int jobs = 0;
    bool render = true;
};
int cmd_place(const PlaceOptions& options);

struct EvaluateOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    std::vector<std::string> methods = {"naive", "height-sep", "planar-sep", "proposed"};
    std::vector<std::string> modes = {"full"};
    std::string weights = "default";
    std::string priors = "default";
    double gamma = kDefaultGamma;
    int stride = 8;
    int jobs = 0;
};
int cmd_evaluate(const EvaluateOptions& options);

struct ExportMapsOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    std::string mode = "full";
    std::string priors = "default";
    int jobs = 0;
};
int cmd_export_maps(const ExportMapsOptions& options);

struct GenerateSyntheticOptions {
    std::filesystem::path out_dir;
    SyntheticSpec spec;
};
int cmd_generate_synthetic(const GenerateSyntheticOptions& options);

}  // namespace arlabel
