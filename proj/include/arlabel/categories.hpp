#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arlabel/geometry.hpp"
#include "arlabel/raster.hpp"

namespace arlabel {

struct CategoryEntry {
    int id = 0;
    std::string name;
    // When set, replaces the computed prior weight for this category
    // (task-critical classes are pinned to 1 regardless of observed tendency).
    std::optional<double> override_c;
};

struct CategoryTable {
    std::vector<CategoryEntry> entries;

    /// The 15 street-view categories with the traffic sign/light overrides.
    static CategoryTable default_table();

    const CategoryEntry* find(int id) const;
    const CategoryEntry* find(const std::string& name) const;
};

namespace category {
// Ids of the default table, in tendency order.
inline constexpr int sky = 0;
inline constexpr int foliage = 1;
inline constexpr int building = 2;
inline constexpr int bridge = 3;
inline constexpr int person = 4;
inline constexpr int bus = 5;
inline constexpr int motorcycle = 6;
inline constexpr int pole = 7;
inline constexpr int sidewalk = 8;
inline constexpr int car = 9;
inline constexpr int traffic_sign = 10;
inline constexpr int rider = 11;
inline constexpr int road = 12;
inline constexpr int bicycle = 13;
inline constexpr int traffic_light = 14;
}  // namespace category

/// Per-category placement-tendency statistics.
struct TendencyStats {
    struct Row {
        int id = 0;
        double n_potential = 0.0;
        double n_actual = 0.0;    // fractional label count
        double lambda = 0.0;      // n_actual / n_potential, 0 when no potential
    };
    std::vector<Row> rows;              // one per table entry, table order
    std::vector<std::string> notes;     // diagnostics (e.g. categories never seen)

    const Row* find(int id) const;
};

/// Per-category repulsion weight c in [0,1]; categories absent from the
/// weights are maximally protected (c = 1).
struct PriorWeights {
    std::map<int, double> c;

    double at(int id) const {
        auto it = c.find(id);
        return it == c.end() ? 1.0 : it->second;
    }

    static PriorWeights all_ones() { return {}; }

    /// Prior weights learned on the original street-view study, including the
    /// traffic sign/light overrides.
    static PriorWeights streetview_preset();

    /// Fast per-pixel lookup for 8-bit category ids.
    std::array<double, 256> lookup() const;
};

/// Splits each label's unit mass across categories in proportion to the
/// number of its pixels falling in each; result sums to the number of labels.
std::map<int, double> count_fractional(const std::vector<Vec2>& anchors, int label_width,
                                       int label_height, const SemanticMap& semantic);

/// One scene's input to the tendency computation.
struct TendencyScene {
    const SemanticMap* semantic = nullptr;
    int label_width = 0;
    int label_height = 0;
    std::vector<std::vector<Vec2>> participant_positions;  // [participant][label]
};

/// N_potential(cat) = sum over scenes containing cat of K * U, N_actual from
/// fractional counting over every participant layout, lambda = ratio.
TendencyStats compute_tendency(const std::vector<TendencyScene>& scenes,
                               const CategoryTable& table);

/// c = 1 - lambda / max(lambda), then table overrides replace computed values.
/// Throws DegeneratePrior when every lambda is zero.
PriorWeights compute_prior(const TendencyStats& stats, const CategoryTable& table);

/// {categories:[{id,name,lambda,c,override}]} document.
std::string priors_to_json(const CategoryTable& table, const TendencyStats* stats,
                           const PriorWeights& weights);
void priors_from_json(const std::string& text, CategoryTable& table, TendencyStats& stats,
                      PriorWeights& weights);

/// Id remapping (e.g. Cityscapes ids to the default table); unmapped ids
/// become kUnknownCategory.
struct IdRemap {
    std::map<int, int> mapping;

    static IdRemap load(const std::filesystem::path& path);
    SemanticMap apply(const SemanticMap& input) const;
};

}  // namespace arlabel
