#include "arlabel/guidance.hpp"

#include <iostream>

#include "arlabel/error.hpp"

namespace arlabel {

namespace {

GrayMap build_guidance_impl(const GrayMap& saliency, const SemanticMap& semantic,
                            const PriorWeights& priors, bool parallel) {
    if (saliency.width != semantic.width || saliency.height != semantic.height)
        throw DimensionMismatch("saliency " + std::to_string(saliency.width) + "x" +
                                std::to_string(saliency.height) + " vs semantic " +
                                std::to_string(semantic.width) + "x" +
                                std::to_string(semantic.height));

    GrayMap g(saliency.width, saliency.height);
    const double max_s = saliency.max_value();
    if (max_s <= 0.0) {
        std::cerr << "guidance: saliency map is identically zero, guidance is all zeros\n";
        return g;
    }

    const std::array<double, 256> lut = priors.lookup();
#pragma omp parallel for schedule(static) if (parallel)
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            g.at(x, y) = lut[semantic.at(x, y)] * saliency.at(x, y) / max_s;
    return g;
}

}  // namespace

GrayMap build_guidance(const GrayMap& saliency, const SemanticMap& semantic,
                       const PriorWeights& priors) {
    return build_guidance_impl(saliency, semantic, priors, true);
}

GrayMap build_guidance_serial(const GrayMap& saliency, const SemanticMap& semantic,
                              const PriorWeights& priors) {
    return build_guidance_impl(saliency, semantic, priors, false);
}

std::string AblationMode::name() const {
    std::string out = saliency == SaliencyKind::builtin_ft ? "ft" : "file";
    out += use_semantic ? "+semantic" : "+nosemantic";
    out += use_prior ? "+prior" : "+noprior";
    return out;
}

AblationMode AblationMode::parse(const std::string& text) {
    AblationMode mode;
    if (text == "full") return mode;
    if (text == "saliency-only") {
        mode.use_semantic = false;
        mode.use_prior = false;
        return mode;
    }

    size_t start = 0;
    bool saw_source = false;
    while (start <= text.size()) {
        const size_t end = text.find('+', start);
        const std::string tok =
            text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (tok == "ft") {
            mode.saliency = SaliencyKind::builtin_ft;
            saw_source = true;
        } else if (tok == "file" || tok == "file-saliency") {
            mode.saliency = SaliencyKind::file;
            saw_source = true;
        } else if (tok == "semantic" || tok == "semantic-on") {
            mode.use_semantic = true;
        } else if (tok == "nosemantic" || tok == "semantic-off") {
            mode.use_semantic = false;
        } else if (tok == "prior" || tok == "prior-on") {
            mode.use_prior = true;
        } else if (tok == "noprior" || tok == "prior-off") {
            mode.use_prior = false;
        } else {
            throw ArlabelError("unknown ablation mode token '" + tok + "' in '" + text + "'");
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (!saw_source && text.empty())
        throw ArlabelError("empty ablation mode");
    return mode;
}

GuidanceBundle build_bundle(const BundleInputs& inputs, const PriorWeights& priors,
                            const AblationMode& mode, const EdgeParams& edge_params) {
    if (!inputs.image) throw ArlabelError("build_bundle: image is required");

    GrayMap saliency;
    if (mode.saliency == SaliencyKind::file) {
        if (!inputs.saliency_file)
            throw IoError("ablation mode requests a precomputed saliency map but none was given");
        if (inputs.saliency_file->width != inputs.image->width ||
            inputs.saliency_file->height != inputs.image->height)
            throw DimensionMismatch("precomputed saliency map does not match the image");
        saliency = *inputs.saliency_file;
        saliency.normalize();
    } else {
        saliency = saliency_ft(*inputs.image);
    }

    GuidanceBundle bundle;
    if (mode.saliency_only()) {
        bundle.guidance = std::move(saliency);
        bundle.guidance.normalize();
    } else {
        if (!inputs.semantic) throw ArlabelError("build_bundle: semantic map is required");
        bundle.guidance = build_guidance(saliency, *inputs.semantic, priors);
    }
    bundle.edges = canny(*inputs.image, edge_params);
    return bundle;
}

}  // namespace arlabel
