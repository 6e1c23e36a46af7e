#include <array>

#include "lottie/command_kind.hpp"
#include "lottie/param_type.hpp"

namespace lottie {

namespace {

constexpr std::array<std::string_view, kParamTypeCount> kParamNames = {
    "BinaryFlag",  "SmallEnum",    "Count",   "Index",         "Temporal",  "SpatialCoord",
    "ScalePercent", "RotationDeg", "SkewDeg", "Opacity",       "ColorChannel",
    "EasingTangent", "Expansion",  "TrimPercent", "FontSize",  "Generic",
};

constexpr std::array<std::string_view, kCommandKindCount> kCommandNames = {
    "META",          "LAYER-0",       "LAYER-1",      "LAYER-3",      "LAYER-4",
    "LAYER-5",       "END",           "TRANSFORM",    "KEYFRAME",     "MASK",
    "EFFECT",        "EFFECT-PARAM",  "TEXTGROUP",    "TEXT-DOC",     "TEXT-STYLE",
    "TEXT-ANIMATOR", "TEXT-SELECTOR", "TEXT-PROPS",   "ASSET",        "FONT",
    "CHAR",          "CHAR-DATA",     "GRADIENT",     "DASH",         "GROUP-END",
    "SH-GROUP",      "SH-PATH",       "SH-FILL",      "SH-STROKE",    "SH-GFILL",
    "SH-GSTROKE",    "SH-RECT",       "SH-ELLIPSE",   "SH-STAR",      "SH-TRANSFORM",
    "SH-TRIM",       "SH-REPEATER",   "SH-MERGE",     "SH-ROUND",     "SH-ZIGZAG",
};

}  // namespace

std::string_view to_string(ParamType t) { return kParamNames[static_cast<std::size_t>(t)]; }

std::optional<ParamType> param_type_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kParamNames.size(); ++i)
        if (kParamNames[i] == name) return static_cast<ParamType>(i);
    return std::nullopt;
}

std::string_view to_string(CommandKind kind) {
    return kCommandNames[static_cast<std::size_t>(kind)];
}

std::optional<CommandKind> command_kind_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kCommandNames.size(); ++i)
        if (kCommandNames[i] == name) return static_cast<CommandKind>(i);
    return std::nullopt;
}

}  // namespace lottie
