#include "lottie/json_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "lottie/error.hpp"

namespace lottie {

namespace {

std::string join(const std::string& path, std::string_view key) {
    if (path.empty()) return std::string(key);
    std::string out = path;
    out += '.';
    out += key;
    return out;
}

std::string indexed(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::SchemaViolation, path, msg);
}

double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) schema(path, "expected a number");
    return j.get<double>();
}

std::int64_t as_integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_unsigned()) {
        auto u = j.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            schema(path, "integer out of range");
        return static_cast<std::int64_t>(u);
    }
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (std::floor(d) == d && std::fabs(d) < 9.2e18) return static_cast<std::int64_t>(d);
    }
    schema(path, "expected an integer");
}

bool as_flag(const Json& j, const std::string& path) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number()) {
        double d = j.get<double>();
        if (d == 0) return false;
        if (d == 1) return true;
    }
    schema(path, "expected a 0/1 flag");
}

Vec as_vec(const Json& j, const std::string& path) {
    if (j.is_number()) return Vec{j.get<double>()};
    if (!j.is_array()) schema(path, "expected a number or number array");
    Vec out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], indexed(path, i)));
    return out;
}

std::vector<Point> as_points(const Json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected a point array");
    std::vector<Point> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = indexed(path, i);
        const Json& e = j[i];
        if (!e.is_array() || e.size() < 2) schema(p, "expected [x, y]");
        if (e.size() > 2) schema(p, "points must have two components");
        out.push_back(Point{as_number(e[0], p), as_number(e[1], p)});
    }
    return out;
}

Bezier as_bezier(const Json& j, const std::string& path) {
    if (!j.is_object()) schema(path, "expected a bezier object");
    Bezier b;
    for (const auto& [key, value] : j.items()) {
        const auto p = join(path, key);
        if (key == "c") b.closed = as_flag(value, p);
        else if (key == "v") b.vertices = as_points(value, p);
        else if (key == "i") b.in_tangents = as_points(value, p);
        else if (key == "o") b.out_tangents = as_points(value, p);
        else schema(p, "unknown bezier key");
    }
    return b;
}

Tangent as_tangent(const Json& j, const std::string& path) {
    if (!j.is_object()) schema(path, "expected an easing handle");
    Tangent t;
    bool has_x = false, has_y = false;
    for (const auto& [key, value] : j.items()) {
        const auto p = join(path, key);
        if (key == "x") t.x = as_vec(value, p), has_x = true;
        else if (key == "y") t.y = as_vec(value, p), has_y = true;
        else schema(p, "unknown easing key");
    }
    if (!has_x || !has_y) schema(path, "easing handle needs x and y");
    return t;
}

Json points_json(const std::vector<Point>& pts) {
    Json out = Json::array();
    for (const auto& p : pts) out.push_back(Json::array({p.x, p.y}));
    return out;
}

Json bezier_json(const Bezier& b) {
    Json out = Json::object();
    if (b.closed) out["c"] = *b.closed;
    out["v"] = points_json(b.vertices);
    out["i"] = points_json(b.in_tangents);
    out["o"] = points_json(b.out_tangents);
    return out;
}

Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(x);
    return out;
}

Json tangent_json(const Tangent& t) {
    return Json{{"x", vec_json(t.x)}, {"y", vec_json(t.y)}};
}

// Keyframe values: vectors are spelled as arrays, paths as a one-element array.
template <class V>
V keyframe_value(const Json& j, const std::string& path) {
    if constexpr (std::is_same_v<V, Bezier>) {
        if (j.is_array()) {
            if (j.size() != 1) schema(path, "path keyframe value must hold one shape");
            return as_bezier(j[0], indexed(path, 0));
        }
        return as_bezier(j, path);
    } else {
        return as_vec(j, path);
    }
}

template <class V>
Json keyframe_value_json(const V& v) {
    if constexpr (std::is_same_v<V, Bezier>) return Json::array({bezier_json(v)});
    else return vec_json(v);
}

template <class V>
Keyframe<V> read_keyframe(const Json& j, const std::string& path) {
    if (!j.is_object()) schema(path, "expected a keyframe object");
    Keyframe<V> k;
    bool has_t = false;
    Json extras;
    for (const auto& [key, value] : j.items()) {
        const auto p = join(path, key);
        if (key == "t") k.time = as_number(value, p), has_t = true;
        else if (key == "s") k.start = keyframe_value<V>(value, p);
        else if (key == "e") k.end = keyframe_value<V>(value, p);
        else if (key == "i") k.ease_in = as_tangent(value, p);
        else if (key == "o") k.ease_out = as_tangent(value, p);
        else if (key == "ti") k.spatial_in = as_vec(value, p);
        else if (key == "to") k.spatial_out = as_vec(value, p);
        else if (key == "h") k.hold = as_flag(value, p);
        else extras[key] = value;
    }
    if (!has_t) schema(path, "keyframe without time");
    k.extras = std::move(extras);
    return k;
}

template <class V>
Json keyframe_json(const Keyframe<V>& k) {
    Json out = Json::object();
    out["t"] = k.time;
    if (k.start) out["s"] = keyframe_value_json(*k.start);
    if (k.end) out["e"] = keyframe_value_json(*k.end);
    if (k.ease_in) out["i"] = tangent_json(*k.ease_in);
    if (k.ease_out) out["o"] = tangent_json(*k.ease_out);
    if (k.spatial_in) out["ti"] = vec_json(*k.spatial_in);
    if (k.spatial_out) out["to"] = vec_json(*k.spatial_out);
    if (k.hold) out["h"] = 1;
    if (k.extras.is_object())
        for (const auto& [key, value] : k.extras.items()) out[key] = value;
    return out;
}

bool looks_like_keyframes(const Json& k) {
    return k.is_array() && !k.empty() && k[0].is_object() && k[0].contains("t");
}

template <class V>
Animated<V> read_animated(const Json& j, const std::string& path, Form form) {
    if (!j.is_object()) schema(path, "expected an animatable property object");
    Animated<V> prop;
    const Json* k = nullptr;
    Json extras;
    for (const auto& [key, value] : j.items()) {
        if (key == "k") k = &value;
        else if (key == "a") as_flag(value, join(path, key));
        else if (key == "x") {
            if (!value.is_string()) schema(join(path, key), "expression must be a string");
            prop.expression = value.template get<std::string>();
        } else extras[key] = value;
    }
    if (!k) schema(path, "property without k");
    const auto kp = join(path, "k");
    if (looks_like_keyframes(*k)) {
        KeyframeList<V> frames;
        frames.reserve(k->size());
        for (std::size_t i = 0; i < k->size(); ++i)
            frames.push_back(read_keyframe<V>((*k)[i], indexed(kp, i)));
        prop.data = std::move(frames);
    } else if constexpr (std::is_same_v<V, Bezier>) {
        prop.data = keyframe_value<Bezier>(*k, kp);
    } else {
        (void)form;
        prop.data = as_vec(*k, kp);
    }
    prop.extras = std::move(extras);
    return prop;
}

template <class V>
Json animated_json(const Animated<V>& prop, Form form) {
    Json out = Json::object();
    out["a"] = prop.animated() ? 1 : 0;
    if (const auto* frames = prop.keyframes()) {
        Json arr = Json::array();
        for (const auto& k : *frames) arr.push_back(keyframe_json(k));
        out["k"] = std::move(arr);
    } else if constexpr (std::is_same_v<V, Bezier>) {
        out["k"] = bezier_json(*prop.static_value());
    } else {
        const Vec& v = *prop.static_value();
        if (form == Form::Scalar && v.size() == 1) out["k"] = v[0];
        else out["k"] = vec_json(v);
    }
    if (prop.expression) out["x"] = *prop.expression;
    if (prop.extras.is_object())
        for (const auto& [key, value] : prop.extras.items()) out[key] = value;
    return out;
}

// ---------------------------------------------------------------------------

class JsonReader {
  public:
    JsonReader(const Json& obj, std::string path, const ParseOptions& opts)
        : obj_(obj), path_(std::move(path)), opts_(opts) {}

    std::vector<Json> raw_assets;

    const Json* take(std::string_view key) {
        auto it = obj_.find(std::string(key));
        if (it == obj_.end()) return nullptr;
        consumed_.emplace_back(key);
        return &*it;
    }

    Json leftovers() const {
        Json out;
        for (const auto& [key, value] : obj_.items()) {
            bool used = false;
            for (const auto& c : consumed_) used = used || c == key;
            if (!used) out[key] = value;
        }
        return out;
    }

    void num(std::string_view key, double& f, ParamType) {
        const Json* j = take(key);
        if (!j) schema(join(path_, key), "missing required field");
        f = as_number(*j, join(path_, key));
    }
    void num(std::string_view key, std::optional<double>& f, ParamType) {
        if (const Json* j = take(key)) f = as_number(*j, join(path_, key));
    }
    void integer(std::string_view key, std::optional<std::int64_t>& f, ParamType) {
        if (const Json* j = take(key)) f = as_integer(*j, join(path_, key));
    }
    void flag(std::string_view key, std::optional<bool>& f, FlagStyle) {
        if (const Json* j = take(key)) f = as_flag(*j, join(path_, key));
    }
    void text(std::string_view key, std::string& f) {
        const Json* j = take(key);
        if (!j) schema(join(path_, key), "missing required field");
        f = as_text(*j, key);
    }
    void text(std::string_view key, std::optional<std::string>& f) {
        if (const Json* j = take(key)) f = as_text(*j, key);
    }
    void code(std::string_view key, std::optional<std::string>& f, const CodeTable& table) {
        const Json* j = take(key);
        if (!j) return;
        std::string s = as_text(*j, key);
        if (!table.allow_custom) {
            bool known = false;
            for (auto e : table.entries) known = known || e == s;
            if (!known) schema(join(path_, key), "unknown code '" + s + "'");
        }
        f = std::move(s);
    }
    template <class V>
    void prop(std::string_view key, std::optional<Animated<V>>& f, ParamType, Form form) {
        if (const Json* j = take(key)) f = read_animated<V>(*j, join(path_, key), form);
    }
    void position(std::string_view key, std::optional<Position>& f) {
        const Json* j = take(key);
        if (!j) return;
        const auto p = join(path_, key);
        if (j->is_object() && j->contains("s") && (*j)["s"].is_boolean() && (*j)["s"].get<bool>()) {
            SplitPosition split;
            Json extras;
            bool has_x = false, has_y = false;
            for (const auto& [k, value] : j->items()) {
                if (k == "s") continue;
                if (k == "x") split.x = read_animated<Vec>(value, join(p, k), Form::Scalar), has_x = true;
                else if (k == "y") split.y = read_animated<Vec>(value, join(p, k), Form::Scalar), has_y = true;
                else if (k == "z") split.z = read_animated<Vec>(value, join(p, k), Form::Scalar);
                else extras[k] = value;
            }
            if (!has_x || !has_y) schema(p, "split position needs x and y");
            split.extras = std::move(extras);
            f = std::move(split);
        } else {
            f = read_animated<Vec>(*j, p, Form::Vector);
        }
    }
    void numbers(std::string_view key, std::optional<Vec>& f, ParamType) {
        const Json* j = take(key);
        if (!j) return;
        if (!j->is_array()) schema(join(path_, key), "expected a number array");
        f = as_vec(*j, join(path_, key));
    }
    template <class T>
    void object(std::string_view key, std::optional<T>& f);
    template <class T>
    void list(std::string_view key, std::vector<T>& f, const ListOpts& opts);
    void shapes(std::string_view key, std::vector<ShapeNode>& f, bool terminated);
    void opaque(std::string_view key, std::optional<Json>& f) {
        if (const Json* j = take(key)) f = *j;
    }

  private:
    std::string as_text(const Json& j, std::string_view key) const {
        if (!j.is_string()) schema(join(path_, key), "expected a string");
        return j.get<std::string>();
    }

    const Json& obj_;
    std::string path_;
    const ParseOptions& opts_;
    std::vector<std::string> consumed_;
};

template <class T>
T read_node(const Json& j, const std::string& path, const ParseOptions& opts);

void read_layer_kind(const Json& j, const std::string& path, const ParseOptions& opts, Layer& l) {
    auto it = j.find("ty");
    if (it == j.end()) schema(path, "layer without ty");
    const auto ty = as_integer(*it, join(path, "ty"));
    auto kind = layer_kind_from_int(ty);
    if (!kind) schema(join(path, "ty"), "unknown layer type " + std::to_string(ty));
    if (is_excluded_kind(*kind) && !opts.admit_excluded_layers)
        throw Error(ErrorCode::UnsupportedLayerKind, join(path, "ty"),
                    "layer type " + std::to_string(ty) + " (" + std::string(to_string(*kind)) +
                        ") must be removed by clean first");
    l.kind = *kind;
    l.payload = make_payload(*kind);
}

template <class T>
T read_node(const Json& j, const std::string& path, const ParseOptions& opts) {
    if (!j.is_object()) schema(path, "expected an object");
    T node{};
    JsonReader r(j, path, opts);
    if constexpr (std::is_same_v<T, Layer>) {
        read_layer_kind(j, path, opts, node);
        r.take("ty");
    } else if constexpr (std::is_same_v<T, ShapeNode>) {
        const Json* ty = r.take("ty");
        if (!ty || !ty->is_string()) schema(path, "shape without ty");
        auto item = make_shape_item(ty->get<std::string>());
        if (!item) schema(join(path, "ty"), "unknown shape type '" + ty->get<std::string>() + "'");
        node.item = std::move(*item);
    }
    T::reflect(node, r);
    node.extras = r.leftovers();
    if constexpr (std::is_same_v<T, Animation>) node.raw_assets = std::move(r.raw_assets);
    return node;
}

template <class T>
void JsonReader::object(std::string_view key, std::optional<T>& f) {
    if (const Json* j = take(key)) f = read_node<T>(*j, join(path_, key), opts_);
}

template <class T>
void JsonReader::list(std::string_view key, std::vector<T>& f, const ListOpts& lo) {
    const Json* j = take(key);
    if (!j) return;
    auto p = join(path_, key);
    if (lo.json_wrapper) {
        if (!j->is_object()) schema(p, "expected an object wrapping the list");
        for (const auto& [k, value] : j->items())
            if (k != lo.json_wrapper) schema(join(p, k), "unexpected key beside the list");
        auto it = j->find(lo.json_wrapper);
        if (it == j->end()) return;
        j = &*it;
        p = join(p, lo.json_wrapper);
    }
    if (!j->is_array()) schema(p, "expected an array");
    f.reserve(j->size());
    for (std::size_t i = 0; i < j->size(); ++i) {
        const Json& e = (*j)[i];
        if constexpr (std::is_same_v<T, PrecompAsset>) {
            if (e.is_object() && !e.contains("layers")) {
                raw_assets.push_back(e);
                continue;
            }
        }
        f.push_back(read_node<T>(e, indexed(p, i), opts_));
    }
}

void JsonReader::shapes(std::string_view key, std::vector<ShapeNode>& f, bool) {
    const Json* j = take(key);
    if (!j) return;
    const auto p = join(path_, key);
    if (!j->is_array()) schema(p, "expected a shape array");
    f.reserve(j->size());
    for (std::size_t i = 0; i < j->size(); ++i)
        f.push_back(read_node<ShapeNode>((*j)[i], indexed(p, i), opts_));
}

// ---------------------------------------------------------------------------

class JsonWriter {
  public:
    Json out = Json::object();

    void num(std::string_view key, double f, ParamType) { out[std::string(key)] = f; }
    void num(std::string_view key, const std::optional<double>& f, ParamType) {
        if (f) out[std::string(key)] = *f;
    }
    void integer(std::string_view key, const std::optional<std::int64_t>& f, ParamType) {
        if (f) out[std::string(key)] = *f;
    }
    void flag(std::string_view key, const std::optional<bool>& f, FlagStyle style) {
        if (!f) return;
        if (style == FlagStyle::Bool) out[std::string(key)] = *f;
        else out[std::string(key)] = *f ? 1 : 0;
    }
    void text(std::string_view key, const std::string& f) { out[std::string(key)] = f; }
    void text(std::string_view key, const std::optional<std::string>& f) {
        if (f) out[std::string(key)] = *f;
    }
    void code(std::string_view key, const std::optional<std::string>& f, const CodeTable&) {
        if (f) out[std::string(key)] = *f;
    }
    template <class V>
    void prop(std::string_view key, const std::optional<Animated<V>>& f, ParamType, Form form) {
        if (f) out[std::string(key)] = animated_json(*f, form);
    }
    void position(std::string_view key, const std::optional<Position>& f) {
        if (!f) return;
        if (const auto* split = std::get_if<SplitPosition>(&*f)) {
            Json p = Json::object();
            p["s"] = true;
            p["x"] = animated_json(split->x, Form::Scalar);
            p["y"] = animated_json(split->y, Form::Scalar);
            if (split->z) p["z"] = animated_json(*split->z, Form::Scalar);
            if (split->extras.is_object())
                for (const auto& [k, value] : split->extras.items()) p[k] = value;
            out[std::string(key)] = std::move(p);
        } else {
            out[std::string(key)] = animated_json(std::get<AnimatedValue>(*f), Form::Vector);
        }
    }
    void numbers(std::string_view key, const std::optional<Vec>& f, ParamType) {
        if (f) out[std::string(key)] = vec_json(*f);
    }
    template <class T>
    void object(std::string_view key, const std::optional<T>& f);
    template <class T>
    void list(std::string_view key, const std::vector<T>& f, const ListOpts& opts);
    void shapes(std::string_view key, const std::vector<ShapeNode>& f, bool);
    void opaque(std::string_view key, const std::optional<Json>& f) {
        if (f) out[std::string(key)] = *f;
    }
};

template <class T>
Json write_node(const T& node) {
    JsonWriter w;
    if constexpr (std::is_same_v<T, Layer>)
        w.out["ty"] = static_cast<std::int64_t>(node.kind);
    else if constexpr (std::is_same_v<T, ShapeNode>)
        w.out["ty"] = std::string(shape_type(node.item));
    T::reflect(node, w);
    if constexpr (std::is_same_v<T, Animation>) {
        for (const auto& raw : node.raw_assets) w.out["assets"].push_back(raw);
    }
    if (node.extras.is_object())
        for (const auto& [k, value] : node.extras.items()) w.out[k] = value;
    return std::move(w.out);
}

template <class T>
void JsonWriter::object(std::string_view key, const std::optional<T>& f) {
    if (f) out[std::string(key)] = write_node(*f);
}

template <class T>
void JsonWriter::list(std::string_view key, const std::vector<T>& f, const ListOpts& opts) {
    if (f.empty() && !opts.always_emit) return;
    Json arr = Json::array();
    for (const auto& e : f) arr.push_back(write_node(e));
    if (opts.json_wrapper) out[std::string(key)] = Json{{opts.json_wrapper, std::move(arr)}};
    else out[std::string(key)] = std::move(arr);
}

void JsonWriter::shapes(std::string_view key, const std::vector<ShapeNode>& f, bool) {
    Json arr = Json::array();
    for (const auto& e : f) arr.push_back(write_node(e));
    out[std::string(key)] = std::move(arr);
}

void dump_into(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                out += Json(k).dump();
                out += ':';
                dump_into(v, out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                dump_into(j[i], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            break;
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) throw Error(ErrorCode::SchemaViolation, "", "non-finite number");
    if (x == 0) return std::signbit(x) ? "-0.0" : "0";
    if (std::floor(x) == x && std::fabs(x) < 9007199254740992.0)
        return std::to_string(static_cast<std::int64_t>(x));
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string dump_canonical(const Json& j) {
    std::string out;
    dump_into(j, out);
    return out;
}

Animation parse_lottie_json(const Json& root, const ParseOptions& opts) {
    if (!root.is_object()) schema("", "document root must be an object");
    Animation a = read_node<Animation>(root, "", opts);
    if (opts.validate) {
        auto issues = check_invariants(a);
        if (!issues.empty()) schema(issues.front().path, issues.front().message);
    }
    return a;
}

Animation parse_lottie(std::string_view json_text, const ParseOptions& opts) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedJson, "", e.what(), e.byte);
    }
    return parse_lottie_json(root, opts);
}

Json to_json(const Animation& a) { return write_node(a); }

std::string serialize_lottie(const Animation& a) { return dump_canonical(to_json(a)); }

}  // namespace lottie
