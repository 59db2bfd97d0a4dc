#include "arlabel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arlabel/error.hpp"

namespace arlabel {

using nlohmann::json;

namespace {

json vec_to_json(const Vec2& v) { return {{"x", v.x}, {"y", v.y}}; }

Vec2 vec_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw ManifestError(where + ": expected {x,y}");
    return {j["x"].get<double>(), j["y"].get<double>()};
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ManifestError(message);
}

}  // namespace

std::string manifest_to_json(const DatasetManifest& manifest) {
    json doc;
    doc["split"] = manifest.split;
    doc["scenes"] = json::array();
    for (const SceneEntry& entry : manifest.scenes) {
        const Scene& s = entry.scene;
        json js;
        js["scene_id"] = s.id;
        js["width"] = s.width;
        js["height"] = s.height;
        js["image"] = s.image_path;
        js["semantic_map"] = s.semantic_path;
        if (!s.saliency_path.empty()) js["saliency_map"] = s.saliency_path;
        js["label_size"] = {{"width", s.label_width}, {"height", s.label_height}};
        js["pois"] = json::array();
        for (const Vec2& p : s.pois) js["pois"].push_back(vec_to_json(p));
        js["label_texts"] = s.label_texts;
        js["participants"] = json::array();
        for (const ParticipantPlacement& p : entry.participants) {
            json jp;
            jp["participant_id"] = p.id;
            jp["positions"] = json::array();
            for (const Vec2& v : p.positions) jp["positions"].push_back(vec_to_json(v));
            js["participants"].push_back(jp);
        }
        doc["scenes"].push_back(js);
    }
    return doc.dump(2) + "\n";
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << manifest_to_json(manifest);
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ManifestError(std::string("invalid manifest json: ") + e.what());
    }

    DatasetManifest manifest;
    manifest.base_dir = path.parent_path();
    require(doc.contains("split") && doc["split"].is_string(), "split: missing");
    manifest.split = doc["split"].get<std::string>();
    require(manifest.split == "train" || manifest.split == "test",
            "split: must be 'train' or 'test', got '" + manifest.split + "'");
    require(doc.contains("scenes") && doc["scenes"].is_array(), "scenes: missing array");

    for (size_t i = 0; i < doc["scenes"].size(); ++i) {
        const json& js = doc["scenes"][i];
        const std::string where = "scenes[" + std::to_string(i) + "]";
        SceneEntry entry;
        Scene& s = entry.scene;

        require(js.contains("scene_id"), where + ".scene_id: missing");
        s.id = js["scene_id"].get<std::string>();
        require(js.contains("width") && js.contains("height"), where + ": missing width/height");
        s.width = js["width"].get<int>();
        s.height = js["height"].get<int>();
        require(s.width > 0 && s.height > 0, where + ": image dimensions must be positive");
        require(js.contains("image"), where + ".image: missing");
        s.image_path = js["image"].get<std::string>();
        require(js.contains("semantic_map"), where + ".semantic_map: missing");
        s.semantic_path = js["semantic_map"].get<std::string>();
        if (js.contains("saliency_map")) s.saliency_path = js["saliency_map"].get<std::string>();

        require(js.contains("label_size"), where + ".label_size: missing");
        s.label_width = js["label_size"].at("width").get<int>();
        s.label_height = js["label_size"].at("height").get<int>();
        require(s.label_width > 0 && s.label_height > 0,
                where + ".label_size: sides must be positive");

        require(js.contains("pois") && js["pois"].is_array() && !js["pois"].empty(),
                where + ".pois: need at least one");
        for (size_t k = 0; k < js["pois"].size(); ++k) {
            const Vec2 p = vec_from_json(js["pois"][k], where + ".pois[" + std::to_string(k) + "]");
            require(p.x >= 0 && p.x < s.width && p.y >= 0 && p.y < s.height,
                    where + ".pois[" + std::to_string(k) + "]: out of bounds");
            s.pois.push_back(p);
        }
        const size_t labels = s.pois.size();

        if (js.contains("label_texts")) {
            for (const json& t : js["label_texts"]) s.label_texts.push_back(t.get<std::string>());
            require(s.label_texts.size() == labels, where + ".label_texts: count != label count");
        } else {
            s.label_texts.assign(labels, "Destination");
        }

        require(js.contains("participants") && js["participants"].is_array(),
                where + ".participants: missing array");
        for (size_t u = 0; u < js["participants"].size(); ++u) {
            const json& jp = js["participants"][u];
            const std::string pwhere = where + ".participants[" + std::to_string(u) + "]";
            ParticipantPlacement placement;
            require(jp.contains("participant_id"), pwhere + ".participant_id: missing");
            placement.id = jp["participant_id"].get<std::string>();
            require(jp.contains("positions") && jp["positions"].is_array(),
                    pwhere + ".positions: missing array");
            require(jp["positions"].size() == labels,
                    pwhere + ".positions: count " + std::to_string(jp["positions"].size()) +
                        " != label count " + std::to_string(labels));
            for (size_t k = 0; k < jp["positions"].size(); ++k) {
                const Vec2 p = vec_from_json(jp["positions"][k],
                                             pwhere + ".positions[" + std::to_string(k) + "]");
                require(p.x >= 0 && p.x < s.width && p.y >= 0 && p.y < s.height,
                        pwhere + ".positions[" + std::to_string(k) + "]: out of bounds");
                placement.positions.push_back(p);
            }
            entry.participants.push_back(std::move(placement));
        }
        manifest.scenes.push_back(std::move(entry));
    }
    return manifest;
}

ValidationReport validate_against_maps(const DatasetManifest& manifest,
                                       const CategoryTable& table) {
    ValidationReport report;
    std::set<int> known;
    for (const CategoryEntry& e : table.entries) known.insert(e.id);
    known.insert(kUnknownCategory);

    for (const SceneEntry& entry : manifest.scenes) {
        const Scene& s = entry.scene;
        try {
            const RgbImage image = load_image(manifest.resolve(s.image_path));
            if (image.width != s.width || image.height != s.height)
                report.violations.push_back(s.id + ": image is " + std::to_string(image.width) +
                                            "x" + std::to_string(image.height) + ", scene says " +
                                            std::to_string(s.width) + "x" +
                                            std::to_string(s.height));
        } catch (const ArlabelError& e) {
            report.violations.push_back(s.id + ": " + e.what());
        }
        try {
            const SemanticMap semantic = load_semantic_map(manifest.resolve(s.semantic_path));
            if (semantic.width != s.width || semantic.height != s.height) {
                report.violations.push_back(s.id + ": semantic map size mismatch");
            } else {
                std::map<int, long long> unknown_counts;
                for (uint8_t id : semantic.ids)
                    if (!known.count(id)) ++unknown_counts[id];
                for (const auto& [id, count] : unknown_counts)
                    report.violations.push_back(s.id + ": unknown category id " +
                                                std::to_string(id) + " on " +
                                                std::to_string(count) + " pixels");
            }
        } catch (const ArlabelError& e) {
            report.violations.push_back(s.id + ": " + e.what());
        }
        if (!s.saliency_path.empty()) {
            try {
                const GrayMap saliency = load_graymap(manifest.resolve(s.saliency_path));
                if (saliency.width != s.width || saliency.height != s.height)
                    report.violations.push_back(s.id + ": saliency map size mismatch");
            } catch (const ArlabelError& e) {
                report.violations.push_back(s.id + ": " + e.what());
            }
        }
    }
    return report;
}

LoadedScene load_scene_data(const DatasetManifest& manifest, const SceneEntry& entry) {
    const Scene& s = entry.scene;
    LoadedScene data;
    data.image = load_image(manifest.resolve(s.image_path));
    if (data.image.width != s.width || data.image.height != s.height)
        throw DimensionMismatch(s.id + ": image does not match the declared scene size");
    data.semantic = load_semantic_map(manifest.resolve(s.semantic_path));
    if (data.semantic.width != s.width || data.semantic.height != s.height)
        throw DimensionMismatch(s.id + ": semantic map does not match the declared scene size");
    if (!s.saliency_path.empty()) {
        data.saliency = load_graymap(manifest.resolve(s.saliency_path));
        if (data.saliency->width != s.width || data.saliency->height != s.height)
            throw DimensionMismatch(s.id + ": saliency map does not match the declared scene size");
    }
    return data;
}

std::vector<TendencyScene> tendency_inputs(const DatasetManifest& manifest,
                                           const std::vector<SemanticMap>& semantics) {
    std::vector<TendencyScene> out;
    for (size_t i = 0; i < manifest.scenes.size(); ++i) {
        const SceneEntry& entry = manifest.scenes[i];
        TendencyScene t;
        t.semantic = &semantics[i];
        t.label_width = entry.scene.label_width;
        t.label_height = entry.scene.label_height;
        for (const ParticipantPlacement& p : entry.participants)
            t.participant_positions.push_back(p.positions);
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct IntRect {
    int x0, y0, x1, y1;  // inclusive
    bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    double distance_to(int x, int y) const {
        const double dx = x < x0 ? x0 - x : (x > x1 ? x - x1 : 0);
        const double dy = y < y0 ? y0 - y : (y > y1 ? y - y1 : 0);
        return std::hypot(dx, dy);
    }
};

struct Rgb {
    uint8_t r, g, b;
};

void fill_rect(RgbImage& image, SemanticMap& semantic, const IntRect& rect, Rgb color,
               uint8_t id) {
    for (int y = std::max(0, rect.y0); y <= std::min(image.height - 1, rect.y1); ++y)
        for (int x = std::max(0, rect.x0); x <= std::min(image.width - 1, rect.x1); ++x) {
            uint8_t* px = image.pixel(x, y);
            px[0] = color.r;
            px[1] = color.g;
            px[2] = color.b;
            semantic.at(x, y) = id;
        }
}

}  // namespace

DatasetManifest generate_synthetic(const SyntheticSpec& spec,
                                   const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir / "images");
    fs::create_directories(out_dir / "semantic");
    fs::create_directories(out_dir / "saliency");

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto uniform_int = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    static const Rgb building_palette[] = {
        {152, 96, 88}, {96, 112, 144}, {168, 152, 120}, {88, 128, 120}, {136, 120, 152},
    };
    static const Rgb car_palette[] = {
        {192, 48, 48}, {48, 64, 192}, {208, 176, 48}, {160, 48, 160}, {48, 160, 160},
    };

    DatasetManifest manifest;
    manifest.split = spec.split;
    manifest.base_dir = out_dir;

    const int W = spec.width, H = spec.height;
    const int K = spec.labels_per_scene;

    for (int s = 0; s < spec.image_count; ++s) {
        char scene_id[16];
        std::snprintf(scene_id, sizeof scene_id, "s%03d", s);

        RgbImage image(W, H);
        SemanticMap semantic(W, H);

        const int sky_h = static_cast<int>(H * uniform(0.24, 0.30));
        const int road_y = static_cast<int>(H * uniform(0.68, 0.74));

        fill_rect(image, semantic, {0, 0, W - 1, sky_h - 1}, {202, 222, 248}, category::sky);
        fill_rect(image, semantic, {0, road_y, W - 1, H - 1}, {72, 72, 76}, category::road);

        // Building band as color-varied vertical blocks.
        int bx = 0;
        while (bx < W) {
            const int bw = uniform_int(40, 80);
            const Rgb color = building_palette[static_cast<size_t>(uniform_int(0, 4))];
            fill_rect(image, semantic, {bx, sky_h, std::min(W - 1, bx + bw - 1), road_y - 1},
                      color, category::building);
            bx += bw;
        }

        // Foliage patches hanging into the building band.
        const int foliage_count = uniform_int(1, 2);
        for (int f = 0; f < foliage_count; ++f) {
            const int fw = uniform_int(W / 10, W / 5);
            const int fx = uniform_int(0, W - fw - 1);
            const int fh = uniform_int((road_y - sky_h) / 3, (road_y - sky_h) / 2);
            fill_rect(image, semantic, {fx, sky_h, fx + fw - 1, sky_h + fh - 1}, {64, 112, 64},
                      category::foliage);
        }

        // Traffic-sign patches in the upper building band, kept clear of the
        // sky so the protected class is distinct from the free region.
        std::vector<IntRect> salient_rects;
        const int sign_count = 2;
        for (int g = 0; g < sign_count; ++g) {
            const int side = uniform_int(12, 16);
            const int sx = uniform_int(8, W - side - 8);
            const int sy = sky_h + 4 + uniform_int(0, (road_y - sky_h) / 3);
            const IntRect rect{sx, sy, sx + side - 1, sy + side - 1};
            fill_rect(image, semantic, rect, g % 2 == 0 ? Rgb{232, 32, 32} : Rgb{248, 208, 32},
                      category::traffic_sign);
            salient_rects.push_back(rect);
        }

        // Object blocks (cars) on the road edge; clustered x positions so the
        // naive layout overlaps.
        Scene scene;
        scene.id = scene_id;
        scene.width = W;
        scene.height = H;
        scene.label_width = spec.label_width;
        scene.label_height = spec.label_height;

        const int cluster_count = std::max(1, (K + 2) / 3);
        std::vector<double> clusters;
        for (int c = 0; c < cluster_count; ++c) clusters.push_back(uniform(40.0, W - 40.0));
        for (int k = 0; k < K; ++k) {
            const double cx = clusters[static_cast<size_t>(k) % clusters.size()];
            const int ow = uniform_int(26, 40);
            const int oh = uniform_int(16, 26);
            int x0 = static_cast<int>(cx + uniform(-30.0, 30.0)) - ow / 2;
            x0 = std::clamp(x0, 0, W - ow);
            const int y1 = road_y + uniform_int(0, 6);
            const IntRect rect{x0, y1 - oh + 1, x0 + ow - 1, std::min(H - 1, y1)};
            fill_rect(image, semantic, rect, car_palette[static_cast<size_t>(k) % 5],
                      category::car);
            salient_rects.push_back(rect);
            scene.pois.push_back({(rect.x0 + rect.x1) * 0.5, (rect.y0 + rect.y1) * 0.5});
        }
        scene.label_texts.assign(static_cast<size_t>(K), "Destination");

        // Precomputed-style saliency: bright on the objects and signs with a
        // short falloff halo, zero elsewhere (notably the sky).
        GrayMap saliency(W, H);
        for (const IntRect& rect : salient_rects) {
            const int pad = 12;
            for (int y = std::max(0, rect.y0 - pad); y <= std::min(H - 1, rect.y1 + pad); ++y)
                for (int x = std::max(0, rect.x0 - pad); x <= std::min(W - 1, rect.x1 + pad);
                     ++x) {
                    const double d = rect.distance_to(x, y);
                    const double v = std::clamp(1.0 - std::max(0.0, d - 2.0) / 10.0, 0.0, 1.0);
                    saliency.at(x, y) = std::max(saliency.at(x, y), v);
                }
        }

        // Simulated participants drop each label into the sky directly above
        // its POI, with optional Gaussian jitter.
        SceneEntry entry;
        entry.scene = scene;
        const double target_y = sky_h - std::ceil(spec.label_height / 2.0) - 2.0;
        for (int u = 0; u < spec.participant_count; ++u) {
            char pid[16];
            std::snprintf(pid, sizeof pid, "p%02d", u);
            ParticipantPlacement placement;
            placement.id = pid;
            for (int k = 0; k < K; ++k) {
                Vec2 pos{clamp_center(scene.pois[static_cast<size_t>(k)].x, W, spec.label_width),
                         target_y};
                if (spec.noise_scale > 0.0) {
                    std::normal_distribution<double> jitter(0.0, spec.noise_scale);
                    pos.x += jitter(rng);
                    pos.y += jitter(rng);
                }
                pos.x = clamp_center(pos.x, W, spec.label_width);
                pos.y = clamp_center(pos.y, H, spec.label_height);
                placement.positions.push_back(pos);
            }
            entry.participants.push_back(std::move(placement));
        }

        const std::string image_rel = std::string("images/") + scene_id + ".png";
        const std::string semantic_rel = std::string("semantic/") + scene_id + ".png";
        const std::string saliency_rel = std::string("saliency/") + scene_id + ".pgm";
        save_image(image, out_dir / image_rel);
        save_semantic_map(semantic, out_dir / semantic_rel);
        save_graymap(saliency, out_dir / saliency_rel);

        entry.scene.image_path = image_rel;
        entry.scene.semantic_path = semantic_rel;
        entry.scene.saliency_path = saliency_rel;
        manifest.scenes.push_back(std::move(entry));
    }

    save_manifest(manifest, out_dir / "manifest.json");
    return manifest;
}

}  // namespace arlabel
