#pragma once

#include <optional>
#include <string>

#include "arlabel/categories.hpp"
#include "arlabel/image_io.hpp"
#include "arlabel/raster.hpp"
#include "arlabel/vision.hpp"

namespace arlabel {

/// Guidance map G plus the binary edge map E; E stays a separate channel
/// (the energy model weighs them independently).
struct GuidanceBundle {
    GrayMap guidance;
    GrayMap edges;
};

/// G(i,j) = c(cat(i,j)) * S(i,j) / max(S), clamped to [0,1]. An identically
/// zero S yields an all-zero G (with a diagnostic on stderr).
GrayMap build_guidance(const GrayMap& saliency, const SemanticMap& semantic,
                       const PriorWeights& priors);
GrayMap build_guidance_serial(const GrayMap& saliency, const SemanticMap& semantic,
                              const PriorWeights& priors);

/// Pipeline toggles: saliency source, semantic channel, learned prior.
/// Disabling either the semantic channel or the prior reduces G to the
/// normalized saliency map.
struct AblationMode {
    SaliencyKind saliency = SaliencyKind::builtin_ft;
    bool use_semantic = true;
    bool use_prior = true;

    bool saliency_only() const { return !use_semantic || !use_prior; }
    std::string name() const;
    static AblationMode parse(const std::string& text);
};

struct BundleInputs {
    const RgbImage* image = nullptr;
    const GrayMap* saliency_file = nullptr;   // required for SaliencyKind::file
    const SemanticMap* semantic = nullptr;    // required unless saliency_only
};

GuidanceBundle build_bundle(const BundleInputs& inputs, const PriorWeights& priors,
                            const AblationMode& mode, const EdgeParams& edge_params = {});

}  // namespace arlabel
