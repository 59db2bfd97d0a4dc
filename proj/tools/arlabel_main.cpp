#include <CLI11.hpp>

#include <iostream>

#include "arlabel/commands.hpp"
#include "arlabel/error.hpp"

using namespace arlabel;

int main(int argc, char** argv) {
    CLI::App app{"Semantic-aware label placement for annotated street-view imagery"};
    app.require_subcommand(1);

    LearnPriorsOptions priors_opts;
    auto* learn_priors = app.add_subcommand(
        "learn-priors", "Learn per-category importance priors from a training manifest");
    learn_priors->add_option("--manifest", priors_opts.manifest, "training manifest json")
        ->required();
    learn_priors->add_option("--out", priors_opts.out, "output priors json")->required();
    std::string remap_path;
    learn_priors->add_option("--remap", remap_path, "category id remap json (e.g. Cityscapes)");
    learn_priors->add_option("--jobs", priors_opts.jobs, "worker threads");

    LearnWeightsOptions weights_opts;
    auto* learn_weights = app.add_subcommand(
        "learn-weights", "Learn energy coefficients by coordinate descent on a training split");
    learn_weights->add_option("--manifest", weights_opts.manifest, "training manifest json")
        ->required();
    learn_weights->add_option("--out", weights_opts.out, "output weights json")->required();
    learn_weights->add_option("--mode", weights_opts.mode, "ablation mode (default: full)");
    learn_weights->add_option("--priors", weights_opts.priors,
                              "priors source: default|ones|<file>");
    learn_weights->add_option("--init", weights_opts.init_weights,
                              "initial weights: default|synthetic|<file>");
    learn_weights->add_option("--budget", weights_opts.budget, "objective evaluation budget");
    learn_weights->add_option("--seed", weights_opts.seed, "search seed");
    learn_weights->add_option("--stride", weights_opts.stride, "candidate grid stride");
    learn_weights->add_option("--jobs", weights_opts.jobs, "worker threads");

    PlaceOptions place_opts;
    auto* place = app.add_subcommand("place", "Place labels for every scene of a manifest");
    place->add_option("--manifest", place_opts.manifest, "manifest json")->required();
    place->add_option("--out", place_opts.out_dir, "output directory")->required();
    place->add_option("--method", place_opts.method,
                      "proposed|naive|height-sep|planar-sep (default: proposed)");
    place->add_option("--mode", place_opts.mode,
                      "ablation mode, e.g. full, saliency-only, file+semantic+prior");
    place->add_option("--weights", place_opts.weights, "weights source: default|synthetic|<file>");
    place->add_option("--priors", place_opts.priors, "priors source: default|ones|<file>");
    place->add_option("--stride", place_opts.stride, "candidate grid stride");
    place->add_option("--jobs", place_opts.jobs, "worker threads");
    place->add_flag("--no-render,!--render", place_opts.render, "skip overlay rendering");

    EvaluateOptions eval_opts;
    auto* evaluate =
        app.add_subcommand("evaluate", "Run the metric comparison across methods and modes");
    evaluate->add_option("--manifest", eval_opts.manifest, "manifest json")->required();
    evaluate->add_option("--out", eval_opts.out_dir, "output directory")->required();
    evaluate->add_option("--method", eval_opts.methods, "methods to compare (repeatable)")
        ->delimiter(',');
    evaluate->add_option("--mode", eval_opts.modes, "ablation modes (repeatable)")
        ->delimiter(',');
    evaluate->add_option("--weights", eval_opts.weights, "weights source: default|synthetic|<file>");
    evaluate->add_option("--priors", eval_opts.priors, "priors source: default|ones|<file>");
    evaluate->add_option("--gamma", eval_opts.gamma, "preferred leader length in pixels");
    evaluate->add_option("--stride", eval_opts.stride, "candidate grid stride");
    evaluate->add_option("--jobs", eval_opts.jobs, "worker threads");

    ExportMapsOptions export_opts;
    auto* export_maps =
        app.add_subcommand("export-maps", "Write saliency/edge/guidance maps for inspection");
    export_maps->add_option("--manifest", export_opts.manifest, "manifest json")->required();
    export_maps->add_option("--out", export_opts.out_dir, "output directory")->required();
    export_maps->add_option("--mode", export_opts.mode, "ablation mode");
    export_maps->add_option("--priors", export_opts.priors, "priors source: default|ones|<file>");
    export_maps->add_option("--jobs", export_opts.jobs, "worker threads");

    GenerateSyntheticOptions gen_opts;
    auto* generate = app.add_subcommand("generate-synthetic",
                                        "Generate a deterministic synthetic dataset");
    generate->add_option("--out", gen_opts.out_dir, "output directory")->required();
    generate->add_option("--count", gen_opts.spec.image_count, "scene count");
    generate->add_option("--width", gen_opts.spec.width, "image width");
    generate->add_option("--height", gen_opts.spec.height, "image height");
    generate->add_option("--seed", gen_opts.spec.seed, "generator seed");
    generate->add_option("--participants", gen_opts.spec.participant_count, "participant count");
    generate->add_option("--noise", gen_opts.spec.noise_scale, "placement jitter in pixels");
    generate->add_option("--labels", gen_opts.spec.labels_per_scene, "labels per scene");
    generate->add_option("--label-width", gen_opts.spec.label_width, "label width");
    generate->add_option("--label-height", gen_opts.spec.label_height, "label height");
    generate->add_option("--split", gen_opts.spec.split, "manifest split name: train|test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (learn_priors->parsed()) {
            if (!remap_path.empty()) priors_opts.remap = remap_path;
            return cmd_learn_priors(priors_opts);
        }
        if (learn_weights->parsed()) return cmd_learn_weights(weights_opts);
        if (place->parsed()) return cmd_place(place_opts);
        if (evaluate->parsed()) return cmd_evaluate(eval_opts);
        if (export_maps->parsed()) return cmd_export_maps(export_opts);
        if (generate->parsed()) return cmd_generate_synthetic(gen_opts);
    } catch (const ArlabelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
