#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "arlabel/dataset.hpp"
#include "arlabel/error.hpp"

using namespace arlabel;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "arlabel_test_dataset" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string minimal_manifest_json() {
    return R"({
  "split": "train",
  "scenes": [
    {
      "scene_id": "s000",
      "width": 32, "height": 24,
      "image": "images/s000.png",
      "semantic_map": "semantic/s000.png",
      "label_size": {"width": 8, "height": 4},
      "pois": [{"x": 10, "y": 12}, {"x": 20, "y": 12}],
      "participants": [
        {"participant_id": "p00", "positions": [{"x": 10, "y": 4}, {"x": 20, "y": 4}]},
        {"participant_id": "p01", "positions": [{"x": 11, "y": 4}, {"x": 21, "y": 4}]}
      ]
    }
  ]
})";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), {});
}

}  // namespace

TEST_SUITE_BEGIN("dataset");

TEST_CASE("a minimal manifest loads with defaults applied") {
    const fs::path dir = fresh_dir("minimal");
    std::ofstream(dir / "manifest.json") << minimal_manifest_json();
    const DatasetManifest manifest = load_manifest(dir / "manifest.json");
    REQUIRE(manifest.scenes.size() == 1);
    const Scene& s = manifest.scenes[0].scene;
    CHECK(s.id == "s000");
    CHECK(s.pois.size() == 2);
    CHECK(s.label_texts == std::vector<std::string>{"Destination", "Destination"});
    CHECK(manifest.scenes[0].participants.size() == 2);
}

TEST_CASE("out-of-bounds positions are rejected with the field path") {
    const fs::path dir = fresh_dir("oob");
    std::string text = minimal_manifest_json();
    text.replace(text.find("{\"x\": 11, \"y\": 4}"), 17, "{\"x\": 99, \"y\": 4}");
    std::ofstream(dir / "manifest.json") << text;
    try {
        load_manifest(dir / "manifest.json");
        FAIL("expected ManifestError");
    } catch (const ManifestError& e) {
        CHECK(std::string(e.what()).find("participants[1].positions[0]") != std::string::npos);
    }
}

TEST_CASE("label count mismatches across participants are rejected") {
    const fs::path dir = fresh_dir("kmismatch");
    std::string text = minimal_manifest_json();
    text.replace(text.find("[{\"x\": 11, \"y\": 4}, {\"x\": 21, \"y\": 4}]"), 38,
                 "[{\"x\": 11, \"y\": 4}]");
    std::ofstream(dir / "manifest.json") << text;
    CHECK_THROWS_AS(load_manifest(dir / "manifest.json"), ManifestError);
}

TEST_CASE("missing manifest raises IoError, bad json raises ManifestError") {
    CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.json"), IoError);
    const fs::path dir = fresh_dir("badjson");
    std::ofstream(dir / "manifest.json") << "{not json";
    CHECK_THROWS_AS(load_manifest(dir / "manifest.json"), ManifestError);
}

TEST_CASE("load then save is the identity on manifests") {
    const fs::path dir = fresh_dir("identity");
    std::ofstream(dir / "manifest.json") << minimal_manifest_json();
    const DatasetManifest manifest = load_manifest(dir / "manifest.json");
    save_manifest(manifest, dir / "saved.json");
    const DatasetManifest reloaded = load_manifest(dir / "saved.json");
    save_manifest(reloaded, dir / "saved2.json");
    CHECK(read_file(dir / "saved.json") == read_file(dir / "saved2.json"));
    CHECK(reloaded.scenes[0].scene.pois == manifest.scenes[0].scene.pois);
    CHECK(reloaded.scenes[0].participants[1].positions ==
          manifest.scenes[0].participants[1].positions);
}

TEST_CASE("synthetic generation is deterministic byte for byte") {
    SyntheticSpec spec;
    spec.image_count = 2;
    spec.width = 96;
    spec.height = 72;
    spec.labels_per_scene = 3;
    spec.label_width = 20;
    spec.label_height = 10;
    spec.participant_count = 4;
    spec.noise_scale = 1.5;
    spec.seed = 99;

    const fs::path a = fresh_dir("gen_a");
    const fs::path b = fresh_dir("gen_b");
    generate_synthetic(spec, a);
    generate_synthetic(spec, b);
    CHECK(read_file(a / "manifest.json") == read_file(b / "manifest.json"));
    CHECK(read_file(a / "images/s000.png") == read_file(b / "images/s000.png"));
    CHECK(read_file(a / "semantic/s001.png") == read_file(b / "semantic/s001.png"));
    CHECK(read_file(a / "saliency/s000.pgm") == read_file(b / "saliency/s000.pgm"));

    // A different seed actually changes the data.
    SyntheticSpec other = spec;
    other.seed = 100;
    const fs::path c = fresh_dir("gen_c");
    generate_synthetic(other, c);
    CHECK(read_file(a / "manifest.json") != read_file(c / "manifest.json"));
}

TEST_CASE("generated manifests load cleanly and validate against their maps") {
    SyntheticSpec spec;
    spec.image_count = 2;
    spec.width = 128;
    spec.height = 96;
    spec.labels_per_scene = 4;
    spec.label_width = 24;
    spec.label_height = 12;
    spec.participant_count = 3;
    spec.seed = 7;
    const fs::path dir = fresh_dir("gen_valid");
    generate_synthetic(spec, dir);
    const DatasetManifest manifest = load_manifest(dir / "manifest.json");
    const ValidationReport report =
        validate_against_maps(manifest, CategoryTable::default_table());
    for (const std::string& v : report.violations) MESSAGE(v);
    CHECK(report.ok());
}

TEST_CASE("zero noise makes all participants identical and consensus exact") {
    SyntheticSpec spec;
    spec.image_count = 1;
    spec.width = 128;
    spec.height = 96;
    spec.labels_per_scene = 3;
    spec.label_width = 24;
    spec.label_height = 12;
    spec.participant_count = 5;
    spec.noise_scale = 0.0;
    spec.seed = 3;
    const fs::path dir = fresh_dir("gen_zero_noise");
    const DatasetManifest manifest = generate_synthetic(spec, dir);
    const SceneEntry& entry = manifest.scenes[0];
    for (const ParticipantPlacement& p : entry.participants)
        CHECK(p.positions == entry.participants[0].positions);
}

TEST_CASE("generated tendency statistics rank the sky over the road") {
    SyntheticSpec spec;
    spec.image_count = 4;
    spec.width = 160;
    spec.height = 120;
    spec.labels_per_scene = 4;
    spec.label_width = 24;
    spec.label_height = 12;
    spec.participant_count = 4;
    spec.noise_scale = 2.0;
    spec.seed = 21;
    const fs::path dir = fresh_dir("gen_tendency");
    const DatasetManifest manifest = generate_synthetic(spec, dir);

    std::vector<SemanticMap> semantics;
    for (const SceneEntry& entry : manifest.scenes)
        semantics.push_back(load_semantic_map(manifest.resolve(entry.scene.semantic_path)));
    const TendencyStats stats =
        compute_tendency(tendency_inputs(manifest, semantics), CategoryTable::default_table());
    CHECK(stats.find(category::sky)->lambda > stats.find(category::road)->lambda);
    CHECK(stats.find(category::sky)->lambda > 0.5);
}

TEST_CASE("validation flags wrong-size and unknown-id maps") {
    const fs::path dir = fresh_dir("validate_bad");
    std::ofstream(dir / "manifest.json") << minimal_manifest_json();
    fs::create_directories(dir / "images");
    fs::create_directories(dir / "semantic");

    RgbImage image(32, 24);
    save_image(image, dir / "images" / "s000.png");
    SemanticMap wrong(16, 12);
    save_semantic_map(wrong, dir / "semantic" / "s000.png");

    const DatasetManifest manifest = load_manifest(dir / "manifest.json");
    ValidationReport report = validate_against_maps(manifest, CategoryTable::default_table());
    REQUIRE(!report.ok());

    // Fix the size but poison two pixels with an id outside the table.
    SemanticMap right(32, 24, category::sky);
    right.at(3, 3) = 200;
    right.at(4, 3) = 200;
    save_semantic_map(right, dir / "semantic" / "s000.png");
    report = validate_against_maps(manifest, CategoryTable::default_table());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("200") != std::string::npos);
    CHECK(report.violations[0].find("2 pixels") != std::string::npos);
}

TEST_SUITE_END();
