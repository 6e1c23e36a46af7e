#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/model.hpp"

namespace lottie {

enum class RemovalReason { Base64Image, Audio, Camera, Data };
std::string_view to_string(RemovalReason r);

struct RemovedLayer {
    std::string container;  // `layers` or `assets[i].layers`
    std::optional<std::int64_t> index;
    RemovalReason reason;
};

struct CleanReport {
    std::vector<RemovedLayer> removed_layers;
    std::size_t removed_assets = 0;
    std::size_t stripped_expressions = 0;
    bool kept = true;
    std::string reject_reason;  // set when !kept
};

struct CleanResult {
    std::optional<Animation> animation;  // absent when rejected
    CleanReport report;
};

/// Removes image/audio/camera/data layers and non-precomp assets and strips
/// expressions. Rejects files whose remaining content would be undefined:
/// every layer removed, references into removed layers or assets, 3D layers.
CleanResult clean(Animation a);
/// Lenient parse followed by `clean`.
CleanResult clean_json(std::string_view json_text);

struct NormalizeConfig {
    int canvas = 512;
    double time_range_max = 60.0;
};

/// Match name of the Null layer injected by `normalize_spatial`.
inline constexpr std::string_view kNormalizeRootMatchName = "normalize.root";

/// Index in `a.layers` of the injected normalization parent, if any.
std::optional<std::size_t> find_normalize_root(const Animation& a);

/// Sets the canvas to C x C and wraps every parentless root layer under one
/// injected Null parent scaling by r = min(C/w, C/h) and centering. Inner
/// coordinates stay untouched.
Animation normalize_spatial(const Animation& a, const NormalizeConfig& cfg = {});

/// Maps composition time linearly onto [0, R]. Throws DegenerateDuration when
/// op == ip. The frame rate is kept.
Animation normalize_temporal(const Animation& a, const NormalizeConfig& cfg = {});

/// Temporal then spatial normalization.
Animation normalize(const Animation& a, const NormalizeConfig& cfg = {});

}  // namespace lottie
