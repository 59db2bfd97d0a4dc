#include "arlabel/comparison.hpp"

#include <stdexcept>

namespace arlabel {

std::vector<PreparedScene> prepare_scenes(const DatasetManifest& manifest,
                                          const AblationMode& mode,
                                          const ComparisonConfig& config) {
    std::vector<PreparedScene> prepared(manifest.scenes.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < manifest.scenes.size(); ++i) {
        try {
            const SceneEntry& entry = manifest.scenes[i];
            const LoadedScene data = load_scene_data(manifest, entry);
            BundleInputs inputs;
            inputs.image = &data.image;
            inputs.semantic = &data.semantic;
            inputs.saliency_file = data.saliency ? &*data.saliency : nullptr;

            PreparedScene& p = prepared[i];
            p.entry = &entry;
            p.bundle = build_bundle(inputs, config.priors, mode, config.edges);

            std::vector<std::vector<Vec2>> positions;
            for (const ParticipantPlacement& participant : entry.participants)
                positions.push_back(participant.positions);
            p.consensus = consensus(positions);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return prepared;
}

MetricReport run_comparison(const DatasetManifest& manifest, const ComparisonConfig& config) {
    MetricReport report;
    report.gamma = config.gamma;
    report.scene_count = static_cast<int>(manifest.scenes.size());

    for (const AblationMode& mode : config.modes) {
        const std::vector<PreparedScene> prepared = prepare_scenes(manifest, mode, config);

        for (Method method : config.methods) {
            std::vector<EvalScene> evals(prepared.size());
#pragma omp parallel for schedule(dynamic)
            for (size_t i = 0; i < prepared.size(); ++i) {
                const PreparedScene& p = prepared[i];
                EvalScene& e = evals[i];
                e.scene = &p.entry->scene;
                e.bundle = &p.bundle;
                e.consensus = &p.consensus;
                e.prediction =
                    solve(method, p.entry->scene, p.bundle, config.weights, config.solver)
                        .anchors;
            }

            MetricRow row;
            row.method = method_name(method);
            row.mode = mode.name();
            row.mu_centroid = mu_centroid(evals);
            row.mu_over = mu_over(evals);
            const MuInt mi = mu_int(evals);
            row.mu_int_mean = mi.mean;
            row.mu_int_total = mi.total;
            row.mu_len = mu_len(evals, config.gamma);
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace arlabel
