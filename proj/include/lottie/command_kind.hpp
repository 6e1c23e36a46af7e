#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace lottie {

/// Structural command tokens. The order here is the order of their ids in
/// the vocabulary.
enum class CommandKind : std::uint8_t {
    Meta,
    LayerPrecomp,
    LayerSolid,
    LayerNull,
    LayerShape,
    LayerText,
    End,
    Transform,
    Keyframe,
    Mask,
    Effect,
    EffectParam,
    TextGroup,
    TextDoc,
    TextStyle,
    TextAnimator,
    TextSelector,
    TextProps,
    Asset,
    Font,
    Char,
    CharData,
    Gradient,
    Dash,
    GroupEnd,
    ShapeGroup,
    ShapePath,
    ShapeFill,
    ShapeStroke,
    ShapeGradientFill,
    ShapeGradientStroke,
    ShapeRect,
    ShapeEllipse,
    ShapeStar,
    ShapeTransform,
    ShapeTrim,
    ShapeRepeater,
    ShapeMerge,
    ShapeRoundedCorners,
    ShapeZigZag,
};

inline constexpr std::size_t kCommandKindCount =
    static_cast<std::size_t>(CommandKind::ShapeZigZag) + 1;

/// Vocabulary name, e.g. `META`, `LAYER-4`, `SH-GROUP`.
std::string_view to_string(CommandKind kind);
std::optional<CommandKind> command_kind_from_string(std::string_view name);

constexpr bool is_layer_command(CommandKind k) {
    return k >= CommandKind::LayerPrecomp && k <= CommandKind::LayerText;
}

constexpr bool is_shape_command(CommandKind k) {
    return k >= CommandKind::ShapeGroup && k <= CommandKind::ShapeZigZag;
}

}  // namespace lottie
