#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace lottie {

/// Semantic category of a numeric parameter. Each category owns a disjoint
/// token region in the vocabulary.
enum class ParamType : std::uint8_t {
    BinaryFlag,
    SmallEnum,
    Count,
    Index,
    Temporal,
    SpatialCoord,
    ScalePercent,
    RotationDeg,
    SkewDeg,
    Opacity,
    ColorChannel,
    EasingTangent,
    Expansion,
    TrimPercent,
    FontSize,
    Generic,
};

inline constexpr std::size_t kParamTypeCount = 16;

inline constexpr std::array<ParamType, kParamTypeCount> kAllParamTypes = {
    ParamType::BinaryFlag,   ParamType::SmallEnum,     ParamType::Count,
    ParamType::Index,        ParamType::Temporal,      ParamType::SpatialCoord,
    ParamType::ScalePercent, ParamType::RotationDeg,   ParamType::SkewDeg,
    ParamType::Opacity,      ParamType::ColorChannel,  ParamType::EasingTangent,
    ParamType::Expansion,    ParamType::TrimPercent,   ParamType::FontSize,
    ParamType::Generic,
};

std::string_view to_string(ParamType t);
std::optional<ParamType> param_type_from_string(std::string_view name);

/// Types whose values are integers with structural meaning (counts, indices,
/// flags, enum codes). They are compared exactly and never range-trimmed.
constexpr bool is_discrete(ParamType t) {
    return t == ParamType::BinaryFlag || t == ParamType::SmallEnum ||
           t == ParamType::Count || t == ParamType::Index;
}

}  // namespace lottie
