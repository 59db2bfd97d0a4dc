// Compares the OpenMP kernels against their serial reference
// implementations on a large synthetic street scene.

#include <omp.h>

#include <cstdio>
#include <filesystem>

#include "arlabel/dataset.hpp"
#include "arlabel/guidance.hpp"
#include "arlabel/solver.hpp"
#include "arlabel/vision.hpp"

using namespace arlabel;

namespace {

template <class F>
double time_best_of(int repeats, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const double start = omp_get_wtime();
        fn();
        best = std::min(best, omp_get_wtime() - start);
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-24s %10.1f ms %10.1f ms %8.2fx\n", name, serial_s * 1e3, parallel_s * 1e3,
                serial_s / parallel_s);
}

}  // namespace

int main() {
    const auto tmp = std::filesystem::temp_directory_path() / "arlabel_bench";
    SyntheticSpec spec;
    spec.image_count = 1;
    spec.width = 1280;
    spec.height = 960;
    spec.labels_per_scene = 8;
    spec.label_width = 120;
    spec.label_height = 30;
    spec.participant_count = 3;
    spec.seed = 7;
    const DatasetManifest manifest = generate_synthetic(spec, tmp);
    const LoadedScene data = load_scene_data(manifest, manifest.scenes.front());
    const Scene& scene = manifest.scenes.front().scene;

    std::printf("image %dx%d, %d threads\n", spec.width, spec.height, omp_get_max_threads());
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const int repeats = 3;

    GrayMap saliency;
    {
        const double ts = time_best_of(repeats, [&] { saliency = saliency_ft_serial(data.image); });
        const double tp = time_best_of(repeats, [&] { saliency = saliency_ft(data.image); });
        report("saliency_ft", ts, tp);
    }

    GrayMap edges;
    {
        const double ts = time_best_of(repeats, [&] { edges = canny_serial(data.image); });
        const double tp = time_best_of(repeats, [&] { edges = canny(data.image); });
        report("canny", ts, tp);
    }

    const PriorWeights priors = PriorWeights::streetview_preset();
    GuidanceBundle bundle;
    {
        const double ts = time_best_of(
            repeats, [&] { bundle.guidance = build_guidance_serial(saliency, data.semantic, priors); });
        const double tp = time_best_of(
            repeats, [&] { bundle.guidance = build_guidance(saliency, data.semantic, priors); });
        report("build_guidance", ts, tp);
    }
    bundle.edges = edges;

    {
        const EnergyWeights weights = EnergyWeights::streetview_preset();
        const SolverConfig config;
        const std::vector<Vec2> grid = detail::candidate_grid(scene, config.grid_stride);
        detail::PlacedState placed;
        std::vector<detail::Candidate> scored;
        const double ts = time_best_of(repeats, [&] {
            scored = detail::score_candidates_serial(scene, bundle, weights, placed, 0, grid);
        });
        const double tp = time_best_of(repeats, [&] {
            scored = detail::score_candidates(scene, bundle, weights, placed, 0, grid);
        });
        std::printf("(%zu candidates)\n", grid.size());
        report("score_candidates", ts, tp);
    }
    return 0;
}
