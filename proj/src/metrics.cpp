#include "arlabel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arlabel/error.hpp"

namespace arlabel {

namespace {

// Index of the point with the greatest sum of distances to the others;
// ties go to the smallest index.
size_t most_isolated(const std::vector<Vec2>& points) {
    size_t worst = 0;
    double worst_sum = -1.0;
    for (size_t i = 0; i < points.size(); ++i) {
        double sum = 0.0;
        for (size_t j = 0; j < points.size(); ++j) sum += distance(points[i], points[j]);
        if (sum > worst_sum) {
            worst_sum = sum;
            worst = i;
        }
    }
    return worst;
}

Vec2 centroid(const std::vector<Vec2>& points) {
    Vec2 c;
    for (const Vec2& p : points) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= static_cast<double>(points.size());
    c.y /= static_cast<double>(points.size());
    return c;
}

}  // namespace

ConsensusPlacement consensus(const std::vector<std::vector<Vec2>>& positions) {
    ConsensusPlacement out;
    if (positions.empty()) return out;
    const size_t labels = positions.front().size();
    for (const std::vector<Vec2>& layout : positions)
        if (layout.size() != labels)
            throw ArlabelError("participant layouts disagree on the label count");

    const size_t participants = positions.size();
    if (participants < 3)
        out.notes.push_back("fewer than 3 participants; consensus keeps all points");

    for (size_t k = 0; k < labels; ++k) {
        std::vector<Vec2> points;
        points.reserve(participants);
        for (const std::vector<Vec2>& layout : positions) points.push_back(layout[k]);

        if (participants >= 3) {
            points.erase(points.begin() + static_cast<ptrdiff_t>(most_isolated(points)));
            points.erase(points.begin() + static_cast<ptrdiff_t>(most_isolated(points)));
        }
        out.anchors.push_back(centroid(points));
        out.retained.push_back(static_cast<int>(points.size()));
    }
    return out;
}

double mu_centroid(const std::vector<EvalScene>& scenes) {
    double acc = 0.0;
    long long count = 0;
    for (const EvalScene& s : scenes) {
        for (size_t k = 0; k < s.prediction.size(); ++k)
            acc += distance(s.prediction[k], s.consensus->anchors[k]);
        count += static_cast<long long>(s.prediction.size());
    }
    return count > 0 ? acc / static_cast<double>(count) : 0.0;
}

double mu_over(const std::vector<EvalScene>& scenes) {
    // Per-scene contributions collected first so a parallel caller cannot
    // change the reduction order.
    std::vector<double> per_scene(scenes.size(), 0.0);
    long long count = 0;
    for (size_t i = 0; i < scenes.size(); ++i) {
        const EvalScene& s = scenes[i];
        const LayoutView view = make_view(*s.scene, s.prediction);
        per_scene[i] = e_label_guidance(view, s.bundle->guidance) + e_label_intersection(view);
        count += static_cast<long long>(s.prediction.size());
    }
    double acc = 0.0;
    for (double v : per_scene) acc += v;
    return count > 0 ? acc / static_cast<double>(count) : 0.0;
}

MuInt mu_int(const std::vector<EvalScene>& scenes) {
    MuInt out;
    for (const EvalScene& s : scenes) {
        const LayoutView view = make_view(*s.scene, s.prediction);
        out.total += e_line_intersection(view);
    }
    out.mean = scenes.empty() ? 0.0 : out.total / static_cast<double>(scenes.size());
    return out;
}

double mu_len(const std::vector<EvalScene>& scenes, double gamma) {
    double acc = 0.0;
    for (const EvalScene& s : scenes)
        for (size_t k = 0; k < s.prediction.size(); ++k) {
            const double len = distance(s.prediction[k], s.scene->pois[k]);
            if (len == 0.0) continue;  // label sits on its POI, no leader drawn
            acc += std::abs(len - gamma);
        }
    return scenes.empty() ? 0.0 : acc / static_cast<double>(scenes.size());
}

std::string MetricReport::to_json() const {
    nlohmann::json doc;
    doc["gamma"] = gamma;
    doc["scene_count"] = scene_count;
    doc["rows"] = nlohmann::json::array();
    for (const MetricRow& r : rows)
        doc["rows"].push_back({{"method", r.method},
                               {"mode", r.mode},
                               {"mu_centroid", r.mu_centroid},
                               {"mu_over", r.mu_over},
                               {"mu_int", r.mu_int_mean},
                               {"mu_int_total", r.mu_int_total},
                               {"mu_len", r.mu_len}});
    return doc.dump(2) + "\n";
}

std::string MetricReport::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(12) << "method" << std::setw(26) << "mode" << std::right
        << std::setw(12) << "mu_centroid" << std::setw(10) << "mu_over" << std::setw(10)
        << "mu_int" << std::setw(12) << "mu_int_tot" << std::setw(10) << "mu_len" << "\n";
    out << std::string(92, '-') << "\n";
    out << std::fixed << std::setprecision(4);
    for (const MetricRow& r : rows)
        out << std::left << std::setw(12) << r.method << std::setw(26) << r.mode << std::right
            << std::setw(12) << r.mu_centroid << std::setw(10) << r.mu_over << std::setw(10)
            << r.mu_int_mean << std::setw(12) << r.mu_int_total << std::setw(10) << r.mu_len
            << "\n";
    return out.str();
}

std::string MetricReport::to_csv() const {
    std::ostringstream out;
    out << "method,mode,mu_centroid,mu_over,mu_int,mu_int_total,mu_len\n";
    out << std::setprecision(17);
    for (const MetricRow& r : rows)
        out << r.method << "," << r.mode << "," << r.mu_centroid << "," << r.mu_over << ","
            << r.mu_int_mean << "," << r.mu_int_total << "," << r.mu_len << "\n";
    return out.str();
}

}  // namespace arlabel
