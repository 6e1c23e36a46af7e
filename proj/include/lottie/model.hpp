#pragma once

// Typed model of a Lottie document.
//
// Every aggregate exposes `reflect(self, visitor)`, which visits its fields in
// canonical order. The JSON reader/writer, the command emitter/reader and the
// traversal helpers are all visitors over the same field tables, so a field
// added here is picked up everywhere at once.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lottie/command_kind.hpp"
#include "lottie/param_type.hpp"

namespace lottie {

using Json = nlohmann::ordered_json;
using Vec = std::vector<double>;

/// How a value-bearing property is spelled in JSON when static.
enum class Form : std::uint8_t { Scalar, Vector, Path };

/// JSON spelling of a boolean field.
enum class FlagStyle : std::uint8_t { Int, Bool };

/// Closed set of string codes stored as a SmallEnum. When `allow_custom` is
/// set, entry 0 is reserved for "not in table" and the raw string travels as
/// text.
struct CodeTable {
    std::span<const std::string_view> entries;
    bool allow_custom = false;
};

struct ListOpts {
    const char* json_wrapper = nullptr;  // list lives at `key.wrapper` in JSON
    bool always_emit = false;            // write `[]` when empty
};

struct Point {
    double x = 0;
    double y = 0;
    bool operator==(const Point&) const = default;
};

/// Cubic Bezier contour; tangents are relative to their vertex.
struct Bezier {
    std::optional<bool> closed;
    std::vector<Point> vertices;
    std::vector<Point> in_tangents;
    std::vector<Point> out_tangents;
    bool operator==(const Bezier&) const = default;
};

/// Easing handle; one component per property dimension (or one shared).
struct Tangent {
    Vec x;
    Vec y;
    bool operator==(const Tangent&) const = default;
};

template <class V>
struct Keyframe {
    double time = 0;
    std::optional<V> start;
    std::optional<V> end;
    std::optional<Tangent> ease_in;
    std::optional<Tangent> ease_out;
    std::optional<Vec> spatial_in;   // `ti`
    std::optional<Vec> spatial_out;  // `to`
    bool hold = false;
    Json extras;
    bool operator==(const Keyframe&) const = default;
};

template <class V>
using KeyframeList = std::vector<Keyframe<V>>;

/// A property that is either a static value or a keyframe track.
template <class V>
struct Animated {
    std::variant<V, KeyframeList<V>> data;
    std::optional<std::string> expression;  // `x`
    Json extras;

    bool animated() const { return std::holds_alternative<KeyframeList<V>>(data); }
    const V* static_value() const { return std::get_if<V>(&data); }
    V* static_value() { return std::get_if<V>(&data); }
    const KeyframeList<V>* keyframes() const { return std::get_if<KeyframeList<V>>(&data); }
    KeyframeList<V>* keyframes() { return std::get_if<KeyframeList<V>>(&data); }

    bool operator==(const Animated&) const = default;
};

using AnimatedValue = Animated<Vec>;
using AnimatedPath = Animated<Bezier>;

inline AnimatedValue make_static(Vec v) { return AnimatedValue{std::move(v), {}, {}}; }

/// `"s": true` position with independently animated components.
struct SplitPosition {
    AnimatedValue x;
    AnimatedValue y;
    std::optional<AnimatedValue> z;
    Json extras;
    bool operator==(const SplitPosition&) const = default;
};

using Position = std::variant<AnimatedValue, SplitPosition>;

// ---------------------------------------------------------------------------
// Transform

struct Transform {
    static constexpr CommandKind kCommand = CommandKind::Transform;

    std::optional<AnimatedValue> anchor;
    std::optional<Position> position;
    std::optional<AnimatedValue> scale;
    std::optional<AnimatedValue> rotation;
    std::optional<AnimatedValue> opacity;
    std::optional<AnimatedValue> skew;
    std::optional<AnimatedValue> skew_axis;
    std::optional<AnimatedValue> start_opacity;  // repeater only
    std::optional<AnimatedValue> end_opacity;    // repeater only
    Json extras;

    bool operator==(const Transform&) const = default;

    template <class Self, class V>
    static void reflect(Self& t, V& v) {
        v.prop("a", t.anchor, ParamType::SpatialCoord, Form::Vector);
        v.position("p", t.position);
        v.prop("s", t.scale, ParamType::ScalePercent, Form::Vector);
        v.prop("r", t.rotation, ParamType::RotationDeg, Form::Scalar);
        v.prop("o", t.opacity, ParamType::Opacity, Form::Scalar);
        v.prop("sk", t.skew, ParamType::SkewDeg, Form::Scalar);
        v.prop("sa", t.skew_axis, ParamType::SkewDeg, Form::Scalar);
        v.prop("so", t.start_opacity, ParamType::Opacity, Form::Scalar);
        v.prop("eo", t.end_opacity, ParamType::Opacity, Form::Scalar);
    }
};

// ---------------------------------------------------------------------------
// Shapes

struct ShapeNode;

inline constexpr std::array<std::string_view, 3> kDashCodes = {"d", "g", "o"};

struct Dash {
    static constexpr CommandKind kCommand = CommandKind::Dash;

    std::optional<std::string> kind;  // `n`: dash / gap / offset
    std::optional<std::string> name;
    std::optional<AnimatedValue> length;
    Json extras;
    bool operator==(const Dash&) const = default;

    template <class Self, class V>
    static void reflect(Self& d, V& v) {
        v.code("n", d.kind, CodeTable{kDashCodes, false});
        v.text("nm", d.name);
        v.prop("v", d.length, ParamType::SpatialCoord, Form::Scalar);
    }
};

struct GradientColors {
    static constexpr CommandKind kCommand = CommandKind::Gradient;

    std::optional<std::int64_t> stop_count;  // `p`
    std::optional<AnimatedValue> stops;      // `k`: flattened offset/rgb[/offset/alpha]
    Json extras;
    bool operator==(const GradientColors&) const = default;

    template <class Self, class V>
    static void reflect(Self& g, V& v) {
        v.integer("p", g.stop_count, ParamType::Count);
        v.prop("k", g.stops, ParamType::ColorChannel, Form::Vector);
    }
};

struct Group {
    static constexpr std::string_view kType = "gr";
    static constexpr CommandKind kCommand = CommandKind::ShapeGroup;
    std::vector<ShapeNode> items;
    bool operator==(const Group&) const = default;
    template <class Self, class V>
    static void reflect(Self& g, V& v) {
        v.shapes("it", g.items, true);
    }
};

struct Path {
    static constexpr std::string_view kType = "sh";
    static constexpr CommandKind kCommand = CommandKind::ShapePath;
    std::optional<std::int64_t> direction;
    std::optional<AnimatedPath> shape;
    bool operator==(const Path&) const = default;
    template <class Self, class V>
    static void reflect(Self& p, V& v) {
        v.integer("d", p.direction, ParamType::SmallEnum);
        v.prop("ks", p.shape, ParamType::SpatialCoord, Form::Path);
    }
};

struct Fill {
    static constexpr std::string_view kType = "fl";
    static constexpr CommandKind kCommand = CommandKind::ShapeFill;
    std::optional<AnimatedValue> color;
    std::optional<AnimatedValue> opacity;
    std::optional<std::int64_t> fill_rule;
    bool operator==(const Fill&) const = default;
    template <class Self, class V>
    static void reflect(Self& f, V& v) {
        v.prop("c", f.color, ParamType::ColorChannel, Form::Vector);
        v.prop("o", f.opacity, ParamType::Opacity, Form::Scalar);
        v.integer("r", f.fill_rule, ParamType::SmallEnum);
    }
};

struct Stroke {
    static constexpr std::string_view kType = "st";
    static constexpr CommandKind kCommand = CommandKind::ShapeStroke;
    std::optional<AnimatedValue> color;
    std::optional<AnimatedValue> opacity;
    std::optional<AnimatedValue> width;
    std::optional<std::int64_t> line_cap;
    std::optional<std::int64_t> line_join;
    std::optional<double> miter_limit;
    std::vector<Dash> dashes;
    bool operator==(const Stroke&) const = default;
    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        v.prop("c", s.color, ParamType::ColorChannel, Form::Vector);
        v.prop("o", s.opacity, ParamType::Opacity, Form::Scalar);
        v.prop("w", s.width, ParamType::SpatialCoord, Form::Scalar);
        v.integer("lc", s.line_cap, ParamType::SmallEnum);
        v.integer("lj", s.line_join, ParamType::SmallEnum);
        v.num("ml", s.miter_limit, ParamType::Generic);
        v.list("d", s.dashes, ListOpts{});
    }
};

/// Fields shared by gradient fills and strokes.
struct GradientBase {
    std::optional<AnimatedValue> opacity;
    std::optional<AnimatedValue> start_point;
    std::optional<AnimatedValue> end_point;
    std::optional<std::int64_t> gradient_type;  // 1 linear, 2 radial
    std::optional<AnimatedValue> highlight_length;
    std::optional<AnimatedValue> highlight_angle;
    std::optional<GradientColors> colors;
    bool operator==(const GradientBase&) const = default;
    template <class Self, class V>
    static void reflect(Self& g, V& v) {
        v.prop("o", g.opacity, ParamType::Opacity, Form::Scalar);
        v.prop("s", g.start_point, ParamType::SpatialCoord, Form::Vector);
        v.prop("e", g.end_point, ParamType::SpatialCoord, Form::Vector);
        v.integer("t", g.gradient_type, ParamType::SmallEnum);
        v.prop("h", g.highlight_length, ParamType::Generic, Form::Scalar);
        v.prop("a", g.highlight_angle, ParamType::RotationDeg, Form::Scalar);
        v.object("g", g.colors);
    }
};

struct GradientFill {
    static constexpr std::string_view kType = "gf";
    static constexpr CommandKind kCommand = CommandKind::ShapeGradientFill;
    GradientBase gradient;
    std::optional<std::int64_t> fill_rule;
    bool operator==(const GradientFill&) const = default;
    template <class Self, class V>
    static void reflect(Self& f, V& v) {
        GradientBase::reflect(f.gradient, v);
        v.integer("r", f.fill_rule, ParamType::SmallEnum);
    }
};

struct GradientStroke {
    static constexpr std::string_view kType = "gs";
    static constexpr CommandKind kCommand = CommandKind::ShapeGradientStroke;
    GradientBase gradient;
    std::optional<AnimatedValue> width;
    std::optional<std::int64_t> line_cap;
    std::optional<std::int64_t> line_join;
    std::optional<double> miter_limit;
    std::vector<Dash> dashes;
    bool operator==(const GradientStroke&) const = default;
    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        GradientBase::reflect(s.gradient, v);
        v.prop("w", s.width, ParamType::SpatialCoord, Form::Scalar);
        v.integer("lc", s.line_cap, ParamType::SmallEnum);
        v.integer("lj", s.line_join, ParamType::SmallEnum);
        v.num("ml", s.miter_limit, ParamType::Generic);
        v.list("d", s.dashes, ListOpts{});
    }
};

struct Rect {
    static constexpr std::string_view kType = "rc";
    static constexpr CommandKind kCommand = CommandKind::ShapeRect;
    std::optional<std::int64_t> direction;
    std::optional<AnimatedValue> position;
    std::optional<AnimatedValue> size;
    std::optional<AnimatedValue> roundness;
    bool operator==(const Rect&) const = default;
    template <class Self, class V>
    static void reflect(Self& r, V& v) {
        v.integer("d", r.direction, ParamType::SmallEnum);
        v.prop("p", r.position, ParamType::SpatialCoord, Form::Vector);
        v.prop("s", r.size, ParamType::SpatialCoord, Form::Vector);
        v.prop("r", r.roundness, ParamType::SpatialCoord, Form::Scalar);
    }
};

struct Ellipse {
    static constexpr std::string_view kType = "el";
    static constexpr CommandKind kCommand = CommandKind::ShapeEllipse;
    std::optional<std::int64_t> direction;
    std::optional<AnimatedValue> position;
    std::optional<AnimatedValue> size;
    bool operator==(const Ellipse&) const = default;
    template <class Self, class V>
    static void reflect(Self& e, V& v) {
        v.integer("d", e.direction, ParamType::SmallEnum);
        v.prop("p", e.position, ParamType::SpatialCoord, Form::Vector);
        v.prop("s", e.size, ParamType::SpatialCoord, Form::Vector);
    }
};

struct Star {
    static constexpr std::string_view kType = "sr";
    static constexpr CommandKind kCommand = CommandKind::ShapeStar;
    std::optional<std::int64_t> direction;
    std::optional<AnimatedValue> position;
    std::optional<AnimatedValue> outer_radius;
    std::optional<AnimatedValue> inner_radius;
    std::optional<AnimatedValue> outer_roundness;
    std::optional<AnimatedValue> inner_roundness;
    std::optional<AnimatedValue> rotation;
    std::optional<AnimatedValue> points;
    std::optional<std::int64_t> star_type;  // 1 star, 2 polygon
    bool operator==(const Star&) const = default;
    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        v.integer("d", s.direction, ParamType::SmallEnum);
        v.prop("p", s.position, ParamType::SpatialCoord, Form::Vector);
        v.prop("or", s.outer_radius, ParamType::SpatialCoord, Form::Scalar);
        v.prop("ir", s.inner_radius, ParamType::SpatialCoord, Form::Scalar);
        v.prop("os", s.outer_roundness, ParamType::Generic, Form::Scalar);
        v.prop("is", s.inner_roundness, ParamType::Generic, Form::Scalar);
        v.prop("r", s.rotation, ParamType::RotationDeg, Form::Scalar);
        v.prop("pt", s.points, ParamType::Generic, Form::Scalar);
        v.integer("sy", s.star_type, ParamType::SmallEnum);
    }
};

struct GroupTransform {
    static constexpr std::string_view kType = "tr";
    static constexpr CommandKind kCommand = CommandKind::ShapeTransform;
    Transform transform;
    bool operator==(const GroupTransform&) const = default;
    template <class Self, class V>
    static void reflect(Self& g, V& v) {
        Transform::reflect(g.transform, v);
    }
};

struct TrimPath {
    static constexpr std::string_view kType = "tm";
    static constexpr CommandKind kCommand = CommandKind::ShapeTrim;
    std::optional<AnimatedValue> start;
    std::optional<AnimatedValue> end;
    std::optional<AnimatedValue> offset;
    std::optional<std::int64_t> mode;
    bool operator==(const TrimPath&) const = default;
    template <class Self, class V>
    static void reflect(Self& t, V& v) {
        v.prop("s", t.start, ParamType::TrimPercent, Form::Scalar);
        v.prop("e", t.end, ParamType::TrimPercent, Form::Scalar);
        v.prop("o", t.offset, ParamType::RotationDeg, Form::Scalar);
        v.integer("m", t.mode, ParamType::SmallEnum);
    }
};

struct Repeater {
    static constexpr std::string_view kType = "rp";
    static constexpr CommandKind kCommand = CommandKind::ShapeRepeater;
    std::optional<AnimatedValue> copies;
    std::optional<AnimatedValue> offset;
    std::optional<std::int64_t> composite;
    std::optional<Transform> transform;
    bool operator==(const Repeater&) const = default;
    template <class Self, class V>
    static void reflect(Self& r, V& v) {
        v.prop("c", r.copies, ParamType::Generic, Form::Scalar);
        v.prop("o", r.offset, ParamType::Generic, Form::Scalar);
        v.integer("m", r.composite, ParamType::SmallEnum);
        v.object("tr", r.transform);
    }
};

struct MergePaths {
    static constexpr std::string_view kType = "mm";
    static constexpr CommandKind kCommand = CommandKind::ShapeMerge;
    std::optional<std::int64_t> mode;
    bool operator==(const MergePaths&) const = default;
    template <class Self, class V>
    static void reflect(Self& m, V& v) {
        v.integer("mm", m.mode, ParamType::SmallEnum);
    }
};

struct RoundedCorners {
    static constexpr std::string_view kType = "rd";
    static constexpr CommandKind kCommand = CommandKind::ShapeRoundedCorners;
    std::optional<AnimatedValue> radius;
    bool operator==(const RoundedCorners&) const = default;
    template <class Self, class V>
    static void reflect(Self& r, V& v) {
        v.prop("r", r.radius, ParamType::SpatialCoord, Form::Scalar);
    }
};

struct ZigZag {
    static constexpr std::string_view kType = "zz";
    static constexpr CommandKind kCommand = CommandKind::ShapeZigZag;
    std::optional<AnimatedValue> frequency;
    std::optional<AnimatedValue> amplitude;
    std::optional<AnimatedValue> point_type;
    bool operator==(const ZigZag&) const = default;
    template <class Self, class V>
    static void reflect(Self& z, V& v) {
        v.prop("r", z.frequency, ParamType::Generic, Form::Scalar);
        v.prop("s", z.amplitude, ParamType::SpatialCoord, Form::Scalar);
        v.prop("pt", z.point_type, ParamType::Generic, Form::Scalar);
    }
};

using ShapeItem = std::variant<Group, Path, Fill, Stroke, GradientFill, GradientStroke, Rect,
                               Ellipse, Star, GroupTransform, TrimPath, Repeater, MergePaths,
                               RoundedCorners, ZigZag>;

struct ShapeNode {
    std::optional<std::string> name;
    std::optional<std::string> match_name;
    std::optional<bool> hidden;
    ShapeItem item;
    Json extras;

    bool operator==(const ShapeNode&) const = default;

    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        v.text("nm", s.name);
        v.text("mn", s.match_name);
        v.flag("hd", s.hidden, FlagStyle::Bool);
        std::visit([&](auto& item) { std::decay_t<decltype(item)>::reflect(item, v); }, s.item);
    }
};

std::string_view shape_type(const ShapeItem& item);
CommandKind shape_command(const ShapeItem& item);
/// Default-constructed item for a JSON `ty` code; nullopt when unknown.
std::optional<ShapeItem> make_shape_item(std::string_view type);
std::optional<ShapeItem> make_shape_item(CommandKind kind);

// ---------------------------------------------------------------------------
// Masks and effects

inline constexpr std::array<std::string_view, 7> kMaskModes = {"n", "a", "s", "i", "l", "d", "f"};

struct Mask {
    static constexpr CommandKind kCommand = CommandKind::Mask;

    std::optional<bool> inverted;
    std::optional<std::string> mode;
    std::optional<AnimatedPath> path;
    std::optional<AnimatedValue> opacity;
    std::optional<AnimatedValue> expansion;
    std::optional<std::string> name;
    Json extras;
    bool operator==(const Mask&) const = default;

    template <class Self, class V>
    static void reflect(Self& m, V& v) {
        v.flag("inv", m.inverted, FlagStyle::Bool);
        v.code("mode", m.mode, CodeTable{kMaskModes, false});
        v.prop("pt", m.path, ParamType::SpatialCoord, Form::Path);
        v.prop("o", m.opacity, ParamType::Opacity, Form::Scalar);
        v.prop("x", m.expansion, ParamType::Expansion, Form::Scalar);
        v.text("nm", m.name);
    }
};

enum class EffectParamKind : std::int64_t {
    Slider = 0,
    Angle = 1,
    Color = 2,
    Point = 3,
    Checkbox = 4,
    Group = 5,
    NoValue = 6,
    Dropdown = 7,
    Layer = 10,
};

ParamType effect_value_type(std::optional<std::int64_t> kind);
Form effect_value_form(std::optional<std::int64_t> kind);

struct EffectParam {
    static constexpr CommandKind kCommand = CommandKind::EffectParam;

    std::optional<std::int64_t> kind;  // EffectParamKind
    std::optional<std::string> name;
    std::optional<std::string> match_name;
    std::optional<AnimatedValue> value;
    Json extras;
    bool operator==(const EffectParam&) const = default;

    template <class Self, class V>
    static void reflect(Self& p, V& v) {
        v.integer("ty", p.kind, ParamType::SmallEnum);
        v.text("nm", p.name);
        v.text("mn", p.match_name);
        v.prop("v", p.value, effect_value_type(p.kind), effect_value_form(p.kind));
    }
};

struct Effect {
    static constexpr CommandKind kCommand = CommandKind::Effect;

    std::optional<std::int64_t> kind;
    std::optional<std::string> name;
    std::optional<std::string> match_name;
    std::optional<bool> enabled;
    std::vector<EffectParam> params;
    Json extras;
    bool operator==(const Effect&) const = default;

    template <class Self, class V>
    static void reflect(Self& e, V& v) {
        v.integer("ty", e.kind, ParamType::Index);
        v.text("nm", e.name);
        v.text("mn", e.match_name);
        v.flag("en", e.enabled, FlagStyle::Int);
        v.list("ef", e.params, ListOpts{});
    }
};

// ---------------------------------------------------------------------------
// Text

struct TextDocument {
    static constexpr CommandKind kCommand = CommandKind::TextStyle;

    std::optional<double> size;
    std::optional<std::string> font;
    std::optional<std::string> text;
    std::optional<std::int64_t> justify;
    std::optional<double> tracking;
    std::optional<double> line_height;
    std::optional<double> baseline_shift;
    std::optional<Vec> fill_color;
    std::optional<Vec> stroke_color;
    std::optional<double> stroke_width;
    std::optional<bool> stroke_over_fill;
    std::optional<Vec> box_position;
    std::optional<Vec> box_size;
    std::optional<std::int64_t> caps;
    Json extras;
    bool operator==(const TextDocument&) const = default;

    template <class Self, class V>
    static void reflect(Self& d, V& v) {
        v.num("s", d.size, ParamType::FontSize);
        v.text("f", d.font);
        v.text("t", d.text);
        v.integer("j", d.justify, ParamType::SmallEnum);
        v.num("tr", d.tracking, ParamType::Generic);
        v.num("lh", d.line_height, ParamType::Generic);
        v.num("ls", d.baseline_shift, ParamType::Generic);
        v.numbers("fc", d.fill_color, ParamType::ColorChannel);
        v.numbers("sc", d.stroke_color, ParamType::ColorChannel);
        v.num("sw", d.stroke_width, ParamType::SpatialCoord);
        v.flag("of", d.stroke_over_fill, FlagStyle::Bool);
        v.numbers("ps", d.box_position, ParamType::SpatialCoord);
        v.numbers("sz", d.box_size, ParamType::SpatialCoord);
        v.integer("ca", d.caps, ParamType::SmallEnum);
    }
};

struct TextDocKeyframe {
    static constexpr CommandKind kCommand = CommandKind::TextDoc;

    double time = 0;
    std::optional<TextDocument> document;
    Json extras;
    bool operator==(const TextDocKeyframe&) const = default;

    template <class Self, class V>
    static void reflect(Self& k, V& v) {
        v.object("s", k.document);
        v.num("t", k.time, ParamType::Temporal);
    }
};

struct TextSelector {
    static constexpr CommandKind kCommand = CommandKind::TextSelector;

    std::optional<std::int64_t> type;
    std::optional<AnimatedValue> start;
    std::optional<AnimatedValue> end;
    std::optional<AnimatedValue> offset;
    std::optional<AnimatedValue> amount;
    std::optional<std::int64_t> units;     // `r`
    std::optional<std::int64_t> based_on;  // `b`
    std::optional<std::int64_t> shape;     // `sh`
    Json extras;
    bool operator==(const TextSelector&) const = default;

    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        v.integer("t", s.type, ParamType::SmallEnum);
        v.prop("s", s.start, ParamType::TrimPercent, Form::Scalar);
        v.prop("e", s.end, ParamType::TrimPercent, Form::Scalar);
        v.prop("o", s.offset, ParamType::Generic, Form::Scalar);
        v.prop("a", s.amount, ParamType::Opacity, Form::Scalar);
        v.integer("r", s.units, ParamType::SmallEnum);
        v.integer("b", s.based_on, ParamType::SmallEnum);
        v.integer("sh", s.shape, ParamType::SmallEnum);
    }
};

struct TextAnimatedProps {
    static constexpr CommandKind kCommand = CommandKind::TextProps;

    std::optional<AnimatedValue> position;
    std::optional<AnimatedValue> anchor;
    std::optional<AnimatedValue> scale;
    std::optional<AnimatedValue> rotation;
    std::optional<AnimatedValue> opacity;
    std::optional<AnimatedValue> fill_color;
    std::optional<AnimatedValue> stroke_color;
    std::optional<AnimatedValue> stroke_width;
    std::optional<AnimatedValue> tracking;
    std::optional<AnimatedValue> skew;
    std::optional<AnimatedValue> skew_axis;
    Json extras;
    bool operator==(const TextAnimatedProps&) const = default;

    template <class Self, class V>
    static void reflect(Self& a, V& v) {
        v.prop("p", a.position, ParamType::SpatialCoord, Form::Vector);
        v.prop("a", a.anchor, ParamType::SpatialCoord, Form::Vector);
        v.prop("s", a.scale, ParamType::ScalePercent, Form::Vector);
        v.prop("r", a.rotation, ParamType::RotationDeg, Form::Scalar);
        v.prop("o", a.opacity, ParamType::Opacity, Form::Scalar);
        v.prop("fc", a.fill_color, ParamType::ColorChannel, Form::Vector);
        v.prop("sc", a.stroke_color, ParamType::ColorChannel, Form::Vector);
        v.prop("sw", a.stroke_width, ParamType::SpatialCoord, Form::Scalar);
        v.prop("t", a.tracking, ParamType::Generic, Form::Scalar);
        v.prop("sk", a.skew, ParamType::SkewDeg, Form::Scalar);
        v.prop("sa", a.skew_axis, ParamType::SkewDeg, Form::Scalar);
    }
};

struct TextAnimator {
    static constexpr CommandKind kCommand = CommandKind::TextAnimator;

    std::optional<std::string> name;
    std::optional<TextSelector> selector;
    std::optional<TextAnimatedProps> props;
    Json extras;
    bool operator==(const TextAnimator&) const = default;

    template <class Self, class V>
    static void reflect(Self& a, V& v) {
        v.text("nm", a.name);
        v.object("s", a.selector);
        v.object("a", a.props);
    }
};

struct TextData {
    static constexpr CommandKind kCommand = CommandKind::TextGroup;

    std::vector<TextDocKeyframe> documents;  // `d.k`
    std::vector<TextAnimator> animators;     // `a`
    std::optional<Json> path_options;        // `p`, passthrough
    std::optional<Json> more_options;        // `m`, passthrough
    Json extras;
    bool operator==(const TextData&) const = default;

    template <class Self, class V>
    static void reflect(Self& t, V& v) {
        v.list("d", t.documents, ListOpts{"k", true});
        v.list("a", t.animators, ListOpts{});
        v.opaque("p", t.path_options);
        v.opaque("m", t.more_options);
    }
};

// ---------------------------------------------------------------------------
// Layers

enum class LayerKind : std::int64_t {
    Precomp = 0,
    Solid = 1,
    Image = 2,
    Null = 3,
    Shape = 4,
    Text = 5,
    Audio = 6,
    Camera = 13,
    Data = 15,
};

std::string_view to_string(LayerKind kind);
/// Kinds that are parsed only in lenient mode and must be removed by `clean`.
bool is_excluded_kind(LayerKind kind);
std::optional<LayerKind> layer_kind_from_int(std::int64_t ty);
std::optional<CommandKind> layer_command(LayerKind kind);
std::optional<LayerKind> layer_kind_from_command(CommandKind cmd);

struct PrecompPayload {
    std::string ref_id;
    std::optional<double> width;
    std::optional<double> height;
    std::optional<AnimatedValue> time_remap;  // values in seconds of child time
    bool operator==(const PrecompPayload&) const = default;
    template <class Self, class V>
    static void reflect(Self& p, V& v) {
        v.text("refId", p.ref_id);
        v.num("w", p.width, ParamType::SpatialCoord);
        v.num("h", p.height, ParamType::SpatialCoord);
        v.prop("tm", p.time_remap, ParamType::Temporal, Form::Scalar);
    }
};

struct SolidPayload {
    std::optional<std::string> color;  // `sc`, `#rrggbb`
    std::optional<double> width;
    std::optional<double> height;
    bool operator==(const SolidPayload&) const = default;
    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        v.text("sc", s.color);
        v.num("sw", s.width, ParamType::SpatialCoord);
        v.num("sh", s.height, ParamType::SpatialCoord);
    }
};

struct NullPayload {
    bool operator==(const NullPayload&) const = default;
    template <class Self, class V>
    static void reflect(Self&, V&) {}
};

struct ShapePayload {
    std::vector<ShapeNode> shapes;
    bool operator==(const ShapePayload&) const = default;
    template <class Self, class V>
    static void reflect(Self& s, V& v) {
        v.shapes("shapes", s.shapes, false);
    }
};

struct TextPayload {
    std::optional<TextData> data;
    bool operator==(const TextPayload&) const = default;
    template <class Self, class V>
    static void reflect(Self& t, V& v) {
        v.object("t", t.data);
    }
};

/// Image/audio/camera/data layer admitted by lenient parsing; its
/// type-specific keys stay in `Layer::extras`.
struct RawPayload {
    bool operator==(const RawPayload&) const = default;
    template <class Self, class V>
    static void reflect(Self&, V&) {}
};

using LayerPayload =
    std::variant<PrecompPayload, SolidPayload, NullPayload, ShapePayload, TextPayload, RawPayload>;

LayerPayload make_payload(LayerKind kind);

struct Layer {
    LayerKind kind = LayerKind::Null;
    std::optional<std::int64_t> index;
    std::optional<std::string> name;
    std::optional<std::string> match_name;
    std::optional<std::string> css_class;
    std::optional<std::string> layer_xml_id;
    std::optional<bool> three_d;
    std::optional<bool> hidden;
    std::optional<bool> collapse;
    std::optional<std::int64_t> parent;
    std::optional<std::int64_t> matte_mode;
    std::optional<std::int64_t> matte_parent;
    std::optional<bool> matte_target;
    std::optional<double> stretch;
    std::optional<Transform> transform;
    std::optional<bool> auto_orient;
    std::optional<bool> has_mask;
    std::vector<Mask> masks;
    std::vector<Effect> effects;
    std::optional<Json> styles;
    LayerPayload payload = NullPayload{};
    double in_point = 0;
    double out_point = 0;
    std::optional<double> start_time;
    std::optional<std::int64_t> blend_mode;
    Json extras;

    bool operator==(const Layer&) const = default;

    double start() const { return start_time.value_or(0.0); }
    double time_stretch() const { return stretch.value_or(1.0); }

    template <class Self, class V>
    static void reflect(Self& l, V& v) {
        v.flag("ddd", l.three_d, FlagStyle::Int);
        v.integer("ind", l.index, ParamType::Index);
        v.text("nm", l.name);
        v.text("mn", l.match_name);
        v.text("cl", l.css_class);
        v.text("ln", l.layer_xml_id);
        v.flag("hd", l.hidden, FlagStyle::Bool);
        v.flag("ct", l.collapse, FlagStyle::Int);
        v.integer("parent", l.parent, ParamType::Index);
        v.integer("tt", l.matte_mode, ParamType::SmallEnum);
        v.integer("tp", l.matte_parent, ParamType::Index);
        v.flag("td", l.matte_target, FlagStyle::Int);
        v.num("sr", l.stretch, ParamType::Generic);
        v.object("ks", l.transform);
        v.flag("ao", l.auto_orient, FlagStyle::Int);
        v.flag("hasMask", l.has_mask, FlagStyle::Bool);
        v.list("masksProperties", l.masks, ListOpts{});
        v.list("ef", l.effects, ListOpts{});
        v.opaque("sy", l.styles);
        std::visit([&](auto& p) { std::decay_t<decltype(p)>::reflect(p, v); }, l.payload);
        v.num("ip", l.in_point, ParamType::Temporal);
        v.num("op", l.out_point, ParamType::Temporal);
        v.num("st", l.start_time, ParamType::Temporal);
        v.integer("bm", l.blend_mode, ParamType::SmallEnum);
    }
};

// ---------------------------------------------------------------------------
// Document

struct PrecompAsset {
    static constexpr CommandKind kCommand = CommandKind::Asset;

    std::string id;
    std::optional<std::string> name;
    std::optional<double> frame_rate;
    std::vector<Layer> layers;
    Json extras;
    bool operator==(const PrecompAsset&) const = default;

    template <class Self, class V>
    static void reflect(Self& a, V& v) {
        v.text("id", a.id);
        v.text("nm", a.name);
        v.num("fr", a.frame_rate, ParamType::Generic);
        v.list("layers", a.layers, ListOpts{nullptr, true});
    }
};

struct Font {
    static constexpr CommandKind kCommand = CommandKind::Font;

    std::string name;  // `fName`
    std::optional<std::string> family;
    std::optional<std::string> style;
    std::optional<double> ascent;
    std::optional<std::string> path;
    std::optional<std::string> origin;
    Json extras;
    bool operator==(const Font&) const = default;

    template <class Self, class V>
    static void reflect(Self& f, V& v) {
        v.text("fName", f.name);
        v.text("fFamily", f.family);
        v.text("fStyle", f.style);
        v.num("ascent", f.ascent, ParamType::Generic);
        v.text("fPath", f.path);
        v.text("fOrigin", f.origin);
    }
};

struct GlyphData {
    static constexpr CommandKind kCommand = CommandKind::CharData;

    std::vector<ShapeNode> shapes;
    Json extras;
    bool operator==(const GlyphData&) const = default;

    template <class Self, class V>
    static void reflect(Self& d, V& v) {
        v.shapes("shapes", d.shapes, false);
    }
};

struct Glyph {
    static constexpr CommandKind kCommand = CommandKind::Char;

    std::string character;
    std::optional<double> size;
    std::optional<std::string> style;
    std::optional<double> width;
    std::optional<std::string> family;
    std::optional<GlyphData> data;
    Json extras;
    bool operator==(const Glyph&) const = default;

    template <class Self, class V>
    static void reflect(Self& g, V& v) {
        v.text("ch", g.character);
        v.num("size", g.size, ParamType::FontSize);
        v.text("style", g.style);
        v.num("w", g.width, ParamType::Generic);
        v.text("fFamily", g.family);
        v.object("data", g.data);
    }
};

inline constexpr std::array<std::string_view, 20> kKnownVersions = {
    "",       "4.8.0",  "5.1.1",  "5.5.2",  "5.5.7",  "5.6.10", "5.7.0",
    "5.7.1",  "5.7.4",  "5.7.6",  "5.7.8",  "5.8.1",  "5.9.0",  "5.9.6",
    "5.10.0", "5.10.2", "5.11.0", "5.12.0", "5.12.1", "5.12.2",
};

struct Animation {
    static constexpr CommandKind kCommand = CommandKind::Meta;

    std::optional<std::string> version;
    double frame_rate = 30;
    double in_point = 0;
    double out_point = 0;
    double width = 0;
    double height = 0;
    std::optional<std::string> name;
    std::optional<bool> three_d;
    std::vector<Layer> layers;
    std::vector<PrecompAsset> assets;
    std::vector<Json> raw_assets;  // image/audio/data assets, passthrough
    std::vector<Font> fonts;
    std::vector<Glyph> chars;
    std::optional<Json> markers = Json::array();
    Json extras;

    bool operator==(const Animation&) const = default;

    const PrecompAsset* find_asset(std::string_view id) const;

    template <class Self, class V>
    static void reflect(Self& a, V& v) {
        v.code("v", a.version, CodeTable{kKnownVersions, true});
        v.num("fr", a.frame_rate, ParamType::Generic);
        v.num("ip", a.in_point, ParamType::Temporal);
        v.num("op", a.out_point, ParamType::Temporal);
        v.num("w", a.width, ParamType::SpatialCoord);
        v.num("h", a.height, ParamType::SpatialCoord);
        v.text("nm", a.name);
        v.flag("ddd", a.three_d, FlagStyle::Int);
        // Root layers precede the assets so that an asset's layer list ends
        // at the next non-layer command in token order.
        v.list("layers", a.layers, ListOpts{nullptr, true});
        v.list("assets", a.assets, ListOpts{nullptr, true});
        v.list("fonts", a.fonts, ListOpts{"list", false});
        v.list("chars", a.chars, ListOpts{});
        v.opaque("markers", a.markers);
    }
};

}  // namespace lottie
