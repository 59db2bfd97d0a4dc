#include "arlabel/commands.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>

#include "arlabel/error.hpp"
#include "arlabel/weight_learn.hpp"

namespace arlabel {

namespace fs = std::filesystem;

namespace {

void set_jobs(int jobs) {
    if (jobs > 0) omp_set_num_threads(jobs);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DatasetManifest load_manifest_or_die(const fs::path& path) { return load_manifest(path); }

}  // namespace

EnergyWeights resolve_weights(const std::string& source) {
    if (source == "default" || source == "street") return EnergyWeights::streetview_preset();
    if (source == "synthetic") return EnergyWeights::synthetic_preset();
    return weights_from_json(read_text(source));
}

PriorWeights resolve_priors(const std::string& source) {
    if (source == "default" || source == "street") return PriorWeights::streetview_preset();
    if (source == "ones" || source == "none") return PriorWeights::all_ones();
    CategoryTable table;
    TendencyStats stats;
    PriorWeights weights;
    priors_from_json(read_text(source), table, stats, weights);
    return weights;
}

int cmd_learn_priors(const LearnPriorsOptions& options) {
    set_jobs(options.jobs);
    const DatasetManifest manifest = load_manifest_or_die(options.manifest);
    if (manifest.scenes.empty()) {
        std::cerr << "learn-priors: empty training split\n";
        return kExitData;
    }

    std::optional<IdRemap> remap;
    if (options.remap) remap = IdRemap::load(*options.remap);

    std::vector<SemanticMap> semantics(manifest.scenes.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < manifest.scenes.size(); ++i) {
        SemanticMap map = load_semantic_map(
            manifest.resolve(manifest.scenes[i].scene.semantic_path));
        semantics[i] = remap ? remap->apply(map) : std::move(map);
    }

    const CategoryTable table = CategoryTable::default_table();
    const TendencyStats stats = compute_tendency(tendency_inputs(manifest, semantics), table);
    const PriorWeights priors = compute_prior(stats, table);

    if (!options.out.empty()) {
        if (options.out.has_parent_path()) fs::create_directories(options.out.parent_path());
        write_text(options.out, priors_to_json(table, &stats, priors));
    }

    std::cout << "category            n_potential    n_actual    lambda         c\n";
    for (const CategoryEntry& e : table.entries) {
        const TendencyStats::Row* row = stats.find(e.id);
        std::printf("%-18s %12.1f %11.2f %8.2f%% %9.4f\n", e.name.c_str(),
                    row ? row->n_potential : 0.0, row ? row->n_actual : 0.0,
                    row ? row->lambda * 100.0 : 0.0, priors.at(e.id));
    }
    for (const std::string& note : stats.notes) std::cout << "note: " << note << "\n";
    return kExitOk;
}

int cmd_learn_weights(const LearnWeightsOptions& options) {
    set_jobs(options.jobs);
    const DatasetManifest manifest = load_manifest_or_die(options.manifest);
    if (manifest.scenes.empty()) {
        std::cerr << "learn-weights: empty training split\n";
        return kExitData;
    }

    ComparisonConfig config;
    config.priors = resolve_priors(options.priors);
    const AblationMode mode = AblationMode::parse(options.mode);
    const std::vector<PreparedScene> prepared = prepare_scenes(manifest, mode, config);

    std::vector<TrainCase> cases;
    for (const PreparedScene& p : prepared)
        cases.push_back({&p.entry->scene, &p.bundle, &p.consensus});

    WeightSearchConfig search;
    search.budget = options.budget;
    search.seed = options.seed;
    search.init = resolve_weights(options.init_weights);
    search.solver.grid_stride = options.stride;

    const WeightLearnResult result = learn_weights(cases, search);
    if (options.out.has_parent_path()) fs::create_directories(options.out.parent_path());
    write_text(options.out, weights_to_json(result.weights, &result));
    std::cout << "learned weights written to " << options.out.string() << " (objective "
              << result.objective << ", " << result.evaluations << " evaluations)\n";
    return kExitOk;
}

int cmd_place(const PlaceOptions& options) {
    set_jobs(options.jobs);
    const DatasetManifest manifest = load_manifest_or_die(options.manifest);
    const Method method = parse_method(options.method);
    const AblationMode mode = AblationMode::parse(options.mode);

    ComparisonConfig config;
    config.weights = resolve_weights(options.weights);
    config.priors = resolve_priors(options.priors);
    config.solver.grid_stride = options.stride;

    fs::create_directories(options.out_dir / "layouts");
    if (options.render) fs::create_directories(options.out_dir / "overlays");

    struct SceneResult {
        std::string layout_json;
        RgbImage overlay;
        std::string error;
        bool failed = false;
    };
    std::vector<SceneResult> results(manifest.scenes.size());

#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < manifest.scenes.size(); ++i) {
        const SceneEntry& entry = manifest.scenes[i];
        SceneResult& res = results[i];
        try {
            const LoadedScene data = load_scene_data(manifest, entry);
            BundleInputs inputs;
            inputs.image = &data.image;
            inputs.semantic = &data.semantic;
            inputs.saliency_file = data.saliency ? &*data.saliency : nullptr;
            const GuidanceBundle bundle = build_bundle(inputs, config.priors, mode, config.edges);
            const Layout layout =
                solve(method, entry.scene, bundle, config.weights, config.solver);
            res.layout_json = layout.to_json(entry.scene, &config.weights, &config.solver);
            if (options.render) res.overlay = render_overlay(entry.scene, layout, data.image);
        } catch (const ArlabelError& e) {
            res.failed = true;
            res.error = e.what();
        }
    }

    int failures = 0;
    for (size_t i = 0; i < results.size(); ++i) {
        const SceneEntry& entry = manifest.scenes[i];
        const SceneResult& res = results[i];
        if (res.failed) {
            ++failures;
            std::cerr << "place: scene " << entry.scene.id << " failed: " << res.error << "\n";
            continue;
        }
        write_text(options.out_dir / "layouts" / (entry.scene.id + ".json"), res.layout_json);
        if (options.render)
            save_image(res.overlay, options.out_dir / "overlays" / (entry.scene.id + ".png"));
    }
    std::cout << "place: " << (results.size() - failures) << "/" << results.size()
              << " scenes placed with method " << options.method << ", mode " << mode.name()
              << "\n";
    return failures == static_cast<int>(results.size()) && !results.empty() ? kExitData : kExitOk;
}

int cmd_evaluate(const EvaluateOptions& options) {
    set_jobs(options.jobs);
    const DatasetManifest manifest = load_manifest_or_die(options.manifest);

    ComparisonConfig config;
    config.methods.clear();
    for (const std::string& m : options.methods) config.methods.push_back(parse_method(m));
    config.modes.clear();
    for (const std::string& m : options.modes) config.modes.push_back(AblationMode::parse(m));
    config.weights = resolve_weights(options.weights);
    config.priors = resolve_priors(options.priors);
    config.solver.grid_stride = options.stride;
    config.gamma = options.gamma;

    const MetricReport report = run_comparison(manifest, config);

    fs::create_directories(options.out_dir);
    write_text(options.out_dir / "report.json", report.to_json());
    write_text(options.out_dir / "report.txt", report.to_text());
    write_text(options.out_dir / "report.csv", report.to_csv());
    std::cout << report.to_text();
    return kExitOk;
}

int cmd_export_maps(const ExportMapsOptions& options) {
    set_jobs(options.jobs);
    const DatasetManifest manifest = load_manifest_or_die(options.manifest);
    const AblationMode mode = AblationMode::parse(options.mode);

    ComparisonConfig config;
    config.priors = resolve_priors(options.priors);

    fs::create_directories(options.out_dir);
    std::vector<std::string> errors(manifest.scenes.size());

#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < manifest.scenes.size(); ++i) {
        const SceneEntry& entry = manifest.scenes[i];
        try {
            const LoadedScene data = load_scene_data(manifest, entry);
            BundleInputs inputs;
            inputs.image = &data.image;
            inputs.semantic = &data.semantic;
            inputs.saliency_file = data.saliency ? &*data.saliency : nullptr;

            const GrayMap saliency =
                mode.saliency == SaliencyKind::file && data.saliency
                    ? [&] {
                          GrayMap m = *data.saliency;
                          m.normalize();
                          return m;
                      }()
                    : saliency_ft(data.image);
            const GuidanceBundle bundle = build_bundle(inputs, config.priors, mode, config.edges);

#pragma omp critical
            {
                save_graymap(saliency,
                             options.out_dir / (entry.scene.id + "_saliency.png"));
                save_graymap(bundle.edges, options.out_dir / (entry.scene.id + "_edges.png"));
                save_graymap(bundle.guidance,
                             options.out_dir / (entry.scene.id + "_guidance.png"));
            }
        } catch (const ArlabelError& e) {
            errors[i] = e.what();
        }
    }
    int failures = 0;
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty()) {
            ++failures;
            std::cerr << "export-maps: scene " << manifest.scenes[i].scene.id
                      << " failed: " << errors[i] << "\n";
        }
    return failures == static_cast<int>(manifest.scenes.size()) && !manifest.scenes.empty()
               ? kExitData
               : kExitOk;
}

int cmd_generate_synthetic(const GenerateSyntheticOptions& options) {
    const DatasetManifest manifest = generate_synthetic(options.spec, options.out_dir);
    std::cout << "generated " << manifest.scenes.size() << " scenes under "
              << options.out_dir.string() << " (split " << manifest.split << ", seed "
              << options.spec.seed << ")\n";
    return kExitOk;
}

}  // namespace arlabel
