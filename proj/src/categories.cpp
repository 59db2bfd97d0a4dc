#include "arlabel/categories.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "arlabel/error.hpp"

namespace arlabel {

using nlohmann::json;

CategoryTable CategoryTable::default_table() {
    CategoryTable t;
    t.entries = {
        {category::sky, "Sky", std::nullopt},
        {category::foliage, "Foliage", std::nullopt},
        {category::building, "Building", std::nullopt},
        {category::bridge, "Bridge", std::nullopt},
        {category::person, "Person", std::nullopt},
        {category::bus, "Bus", std::nullopt},
        {category::motorcycle, "Motorcycle", std::nullopt},
        {category::pole, "Pole", std::nullopt},
        {category::sidewalk, "Sidewalk", std::nullopt},
        {category::car, "Car", std::nullopt},
        {category::traffic_sign, "Traffic Sign", 1.0},
        {category::rider, "Rider", std::nullopt},
        {category::road, "Road", std::nullopt},
        {category::bicycle, "Bicycle", std::nullopt},
        {category::traffic_light, "Traffic Light", 1.0},
    };
    return t;
}

const CategoryEntry* CategoryTable::find(int id) const {
    for (const CategoryEntry& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

const CategoryEntry* CategoryTable::find(const std::string& name) const {
    for (const CategoryEntry& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

const TendencyStats::Row* TendencyStats::find(int id) const {
    for (const Row& r : rows)
        if (r.id == id) return &r;
    return nullptr;
}

PriorWeights PriorWeights::streetview_preset() {
    // Tendency ratios observed in the street-view placement study.
    static const std::map<int, double> lambdas = {
        {category::sky, 0.4364},          {category::foliage, 0.3806},
        {category::building, 0.1740},     {category::bridge, 0.1085},
        {category::person, 0.0043},       {category::bus, 0.0027},
        {category::motorcycle, 0.0027},   {category::pole, 0.0018},
        {category::sidewalk, 0.0016},     {category::car, 0.0015},
        {category::traffic_sign, 0.0014}, {category::rider, 0.0012},
        {category::road, 0.0005},         {category::bicycle, 0.0003},
        {category::traffic_light, 0.0001},
    };
    const CategoryTable table = CategoryTable::default_table();
    TendencyStats stats;
    for (const CategoryEntry& e : table.entries) {
        TendencyStats::Row row;
        row.id = e.id;
        row.lambda = lambdas.at(e.id);
        row.n_potential = 1.0;
        row.n_actual = row.lambda;
        stats.rows.push_back(row);
    }
    return compute_prior(stats, table);
}

std::array<double, 256> PriorWeights::lookup() const {
    std::array<double, 256> lut;
    lut.fill(1.0);
    for (const auto& [id, value] : c)
        if (id >= 0 && id < 256) lut[static_cast<size_t>(id)] = value;
    return lut;
}

std::map<int, double> count_fractional(const std::vector<Vec2>& anchors, int label_width,
                                       int label_height, const SemanticMap& semantic) {
    std::map<int, double> masses;
    for (const Vec2& anchor : anchors) {
        const LabelRect rect{anchor, label_width, label_height};
        const int x0 = std::max(rect.x_lo(), 0);
        const int x1 = std::min(rect.x_hi(), semantic.width - 1);
        const int y0 = std::max(rect.y_lo(), 0);
        const int y1 = std::min(rect.y_hi(), semantic.height - 1);
        if (x1 < x0 || y1 < y0)
            throw DimensionMismatch("label rect falls outside the semantic map");

        std::map<int, long long> counts;
        long long total = 0;
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                ++counts[semantic.at(x, y)];
                ++total;
            }
        for (const auto& [id, n] : counts)
            masses[id] += static_cast<double>(n) / static_cast<double>(total);
    }
    return masses;
}

TendencyStats compute_tendency(const std::vector<TendencyScene>& scenes,
                               const CategoryTable& table) {
    std::map<int, double> potential;
    std::map<int, double> actual;

    // Per-scene partial tallies merged in scene order; the merge is
    // associative so the scene loop can run in parallel.
    std::vector<std::map<int, double>> scene_actual(scenes.size());
    std::vector<std::set<int>> scene_categories(scenes.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t s = 0; s < scenes.size(); ++s) {
        const TendencyScene& scene = scenes[s];
        for (uint8_t id : scene.semantic->ids) scene_categories[s].insert(id);
        for (const std::vector<Vec2>& layout : scene.participant_positions) {
            const std::map<int, double> masses =
                count_fractional(layout, scene.label_width, scene.label_height, *scene.semantic);
            for (const auto& [id, mass] : masses) scene_actual[s][id] += mass;
        }
    }
    for (size_t s = 0; s < scenes.size(); ++s) {
        const TendencyScene& scene = scenes[s];
        const double labels_here =
            static_cast<double>(scene.participant_positions.size()) *
            (scene.participant_positions.empty() ? 0.0
                                                 : scene.participant_positions.front().size());
        for (int id : scene_categories[s]) potential[id] += labels_here;
        for (const auto& [id, mass] : scene_actual[s]) actual[id] += mass;
    }

    TendencyStats stats;
    for (const CategoryEntry& e : table.entries) {
        TendencyStats::Row row;
        row.id = e.id;
        row.n_potential = potential.count(e.id) ? potential.at(e.id) : 0.0;
        row.n_actual = actual.count(e.id) ? actual.at(e.id) : 0.0;
        row.lambda = row.n_potential > 0.0 ? row.n_actual / row.n_potential : 0.0;
        if (row.n_potential <= 0.0)
            stats.notes.push_back("category '" + e.name + "' absent from all images; lambda = 0");
        stats.rows.push_back(row);
    }
    return stats;
}

PriorWeights compute_prior(const TendencyStats& stats, const CategoryTable& table) {
    double max_lambda = 0.0;
    for (const TendencyStats::Row& r : stats.rows) max_lambda = std::max(max_lambda, r.lambda);
    if (max_lambda <= 0.0) throw DegeneratePrior("all tendency factors are zero");

    PriorWeights weights;
    for (const CategoryEntry& e : table.entries) {
        const TendencyStats::Row* row = stats.find(e.id);
        double value = 1.0;  // unseen categories stay maximally protected
        if (row && row->n_potential > 0.0) value = 1.0 - row->lambda / max_lambda;
        if (e.override_c) value = *e.override_c;
        weights.c[e.id] = value;
    }
    return weights;
}

std::string priors_to_json(const CategoryTable& table, const TendencyStats* stats,
                           const PriorWeights& weights) {
    json doc;
    doc["categories"] = json::array();
    for (const CategoryEntry& e : table.entries) {
        json entry;
        entry["id"] = e.id;
        entry["name"] = e.name;
        if (stats) {
            if (const TendencyStats::Row* row = stats->find(e.id)) {
                entry["lambda"] = row->lambda;
                if (row->n_potential > 0.0) {
                    entry["n_potential"] = row->n_potential;
                    entry["n_actual"] = row->n_actual;
                }
            }
        }
        entry["c"] = weights.at(e.id);
        if (e.override_c) entry["override"] = *e.override_c;
        doc["categories"].push_back(entry);
    }
    if (stats && !stats->notes.empty()) doc["notes"] = stats->notes;
    return doc.dump(2) + "\n";
}

void priors_from_json(const std::string& text, CategoryTable& table, TendencyStats& stats,
                      PriorWeights& weights) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ManifestError(std::string("invalid priors json: ") + e.what());
    }
    if (!doc.contains("categories") || !doc["categories"].is_array())
        throw ManifestError("priors json missing 'categories' array");

    table.entries.clear();
    stats.rows.clear();
    weights.c.clear();
    for (const json& entry : doc["categories"]) {
        CategoryEntry e;
        e.id = entry.at("id").get<int>();
        e.name = entry.at("name").get<std::string>();
        if (entry.contains("override")) e.override_c = entry["override"].get<double>();
        table.entries.push_back(e);

        TendencyStats::Row row;
        row.id = e.id;
        row.lambda = entry.value("lambda", 0.0);
        row.n_potential = entry.value("n_potential", 0.0);
        row.n_actual = entry.value("n_actual", 0.0);
        stats.rows.push_back(row);

        weights.c[e.id] = entry.at("c").get<double>();
    }
}

IdRemap IdRemap::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ManifestError(std::string("invalid remap json: ") + e.what());
    }
    IdRemap remap;
    for (const json& m : doc.at("mappings"))
        remap.mapping[m.at("from").get<int>()] = m.at("to").get<int>();
    return remap;
}

SemanticMap IdRemap::apply(const SemanticMap& input) const {
    std::array<uint8_t, 256> lut;
    lut.fill(kUnknownCategory);
    for (const auto& [from, to] : mapping)
        if (from >= 0 && from < 256) lut[static_cast<size_t>(from)] = static_cast<uint8_t>(to);

    SemanticMap out(input.width, input.height);
    out.table = input.table;
    for (size_t i = 0; i < input.ids.size(); ++i) out.ids[i] = lut[input.ids[i]];
    return out;
}

}  // namespace arlabel
