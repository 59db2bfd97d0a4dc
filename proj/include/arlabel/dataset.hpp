#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arlabel/categories.hpp"
#include "arlabel/image_io.hpp"
#include "arlabel/solver.hpp"

namespace arlabel {

struct ParticipantPlacement {
    std::string id;
    std::vector<Vec2> positions;  // one anchor per label
};

struct SceneEntry {
    Scene scene;
    std::vector<ParticipantPlacement> participants;
};

struct DatasetManifest {
    std::string split;  // "train" or "test"
    std::vector<SceneEntry> scenes;
    std::filesystem::path base_dir;  // directory the manifest was loaded from

    std::filesystem::path resolve(const std::string& relative) const {
        return base_dir / relative;
    }
};

/// Loads and eagerly validates a manifest; violations raise ManifestError
/// naming the offending field.
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
std::string manifest_to_json(const DatasetManifest& manifest);

/// Checks every referenced map against the scene dimensions and the category
/// table; returns the violations instead of throwing.
struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};
ValidationReport validate_against_maps(const DatasetManifest& manifest,
                                       const CategoryTable& table);

struct LoadedScene {
    RgbImage image;
    SemanticMap semantic;
    std::optional<GrayMap> saliency;
};
LoadedScene load_scene_data(const DatasetManifest& manifest, const SceneEntry& entry);

/// Desk-scale stand-in for the street-view study: banded scenes (sky strip,
/// building band with foliage and sign patches, road band, object blocks on
/// the road edge), a precomputed-style saliency file bright around objects
/// and signs, and simulated participants who drop each label into the sky
/// just above its POI with Gaussian jitter.
struct SyntheticSpec {
    int image_count = 30;
    int width = 320;
    int height = 240;
    uint64_t seed = 1;
    int participant_count = 6;
    double noise_scale = 0.0;  // pixels
    int labels_per_scene = 8;
    int label_width = 48;
    int label_height = 20;
    std::string split = "train";
};

/// Writes images/, semantic/, saliency/ and manifest.json under out_dir and
/// returns the manifest. Fully deterministic in the spec (seed included).
DatasetManifest generate_synthetic(const SyntheticSpec& spec,
                                   const std::filesystem::path& out_dir);

std::vector<TendencyScene> tendency_inputs(const DatasetManifest& manifest,
                                           const std::vector<SemanticMap>& semantics);

}  // namespace arlabel
