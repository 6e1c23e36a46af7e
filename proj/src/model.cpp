#include "lottie/model.hpp"

namespace lottie {

namespace {

template <std::size_t I = 0, class F>
std::optional<ShapeItem> find_shape_alternative(F&& match) {
    if constexpr (I == std::variant_size_v<ShapeItem>) {
        return std::nullopt;
    } else {
        using T = std::variant_alternative_t<I, ShapeItem>;
        if (match(T::kType, T::kCommand)) return ShapeItem{std::in_place_index<I>};
        return find_shape_alternative<I + 1>(std::forward<F>(match));
    }
}

}  // namespace

std::string_view shape_type(const ShapeItem& item) {
    return std::visit([](const auto& s) { return std::decay_t<decltype(s)>::kType; }, item);
}

CommandKind shape_command(const ShapeItem& item) {
    return std::visit([](const auto& s) { return std::decay_t<decltype(s)>::kCommand; }, item);
}

std::optional<ShapeItem> make_shape_item(std::string_view type) {
    return find_shape_alternative([&](std::string_view t, CommandKind) { return t == type; });
}

std::optional<ShapeItem> make_shape_item(CommandKind kind) {
    return find_shape_alternative([&](std::string_view, CommandKind k) { return k == kind; });
}

std::string_view to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::Precomp: return "precomp";
        case LayerKind::Solid: return "solid";
        case LayerKind::Image: return "image";
        case LayerKind::Null: return "null";
        case LayerKind::Shape: return "shape";
        case LayerKind::Text: return "text";
        case LayerKind::Audio: return "audio";
        case LayerKind::Camera: return "camera";
        case LayerKind::Data: return "data";
    }
    return "unknown";
}

bool is_excluded_kind(LayerKind kind) {
    return kind == LayerKind::Image || kind == LayerKind::Audio || kind == LayerKind::Camera ||
           kind == LayerKind::Data;
}

std::optional<LayerKind> layer_kind_from_int(std::int64_t ty) {
    switch (ty) {
        case 0: case 1: case 2: case 3: case 4: case 5: case 6: case 13: case 15:
            return static_cast<LayerKind>(ty);
        default:
            return std::nullopt;
    }
}

std::optional<CommandKind> layer_command(LayerKind kind) {
    switch (kind) {
        case LayerKind::Precomp: return CommandKind::LayerPrecomp;
        case LayerKind::Solid: return CommandKind::LayerSolid;
        case LayerKind::Null: return CommandKind::LayerNull;
        case LayerKind::Shape: return CommandKind::LayerShape;
        case LayerKind::Text: return CommandKind::LayerText;
        default: return std::nullopt;
    }
}

std::optional<LayerKind> layer_kind_from_command(CommandKind cmd) {
    switch (cmd) {
        case CommandKind::LayerPrecomp: return LayerKind::Precomp;
        case CommandKind::LayerSolid: return LayerKind::Solid;
        case CommandKind::LayerNull: return LayerKind::Null;
        case CommandKind::LayerShape: return LayerKind::Shape;
        case CommandKind::LayerText: return LayerKind::Text;
        default: return std::nullopt;
    }
}

LayerPayload make_payload(LayerKind kind) {
    switch (kind) {
        case LayerKind::Precomp: return PrecompPayload{};
        case LayerKind::Solid: return SolidPayload{};
        case LayerKind::Null: return NullPayload{};
        case LayerKind::Shape: return ShapePayload{};
        case LayerKind::Text: return TextPayload{};
        default: return RawPayload{};
    }
}

ParamType effect_value_type(std::optional<std::int64_t> kind) {
    switch (static_cast<EffectParamKind>(kind.value_or(0))) {
        case EffectParamKind::Angle: return ParamType::RotationDeg;
        case EffectParamKind::Color: return ParamType::ColorChannel;
        case EffectParamKind::Point: return ParamType::SpatialCoord;
        case EffectParamKind::Checkbox: return ParamType::BinaryFlag;
        case EffectParamKind::Dropdown: return ParamType::SmallEnum;
        case EffectParamKind::Layer: return ParamType::Index;
        default: return ParamType::Generic;
    }
}

Form effect_value_form(std::optional<std::int64_t> kind) {
    switch (static_cast<EffectParamKind>(kind.value_or(0))) {
        case EffectParamKind::Color:
        case EffectParamKind::Point:
            return Form::Vector;
        default:
            return Form::Scalar;
    }
}

const PrecompAsset* Animation::find_asset(std::string_view id) const {
    for (const auto& a : assets)
        if (a.id == id) return &a;
    return nullptr;
}

}  // namespace lottie
