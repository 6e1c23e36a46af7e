#include "lottie/pipeline.hpp"

#include <algorithm>
#include <set>

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "walk.hpp"

namespace lottie {

namespace {

RemovalReason reason_for(LayerKind k) {
    switch (k) {
        case LayerKind::Audio: return RemovalReason::Audio;
        case LayerKind::Camera: return RemovalReason::Camera;
        case LayerKind::Data: return RemovalReason::Data;
        default: return RemovalReason::Base64Image;
    }
}

struct ExpressionStripper {
    std::size_t stripped = 0;
    template <class V>
    void prop(const std::string&, Animated<V>& a, ParamType, Form) {
        if (a.expression) {
            a.expression.reset();
            ++stripped;
        }
    }
};

void remove_excluded(std::vector<Layer>& layers, const std::string& container, CleanReport& report) {
    std::vector<Layer> kept;
    kept.reserve(layers.size());
    for (auto& l : layers) {
        if (is_excluded_kind(l.kind)) {
            report.removed_layers.push_back({container, l.index, reason_for(l.kind)});
        } else {
            kept.push_back(std::move(l));
        }
    }
    layers = std::move(kept);
}

CleanResult reject(CleanReport report, std::string why) {
    report.kept = false;
    report.reject_reason = std::move(why);
    return CleanResult{std::nullopt, std::move(report)};
}

// Rewrites every keyframe time and layer-local Temporal number of one layer.
struct TimeMapper {
    double scale;       // multiplies local times
    double shift;       // added to local times after scaling
    bool scale_remap;   // time-remap values are child time and scale too

    double map(double t) const { return t * scale + shift; }

    template <class V>
    void prop(const std::string&, Animated<V>& a, ParamType t, Form) {
        if (auto* frames = a.keyframes()) {
            for (auto& k : *frames) {
                k.time = map(k.time);
                if constexpr (std::is_same_v<V, Vec>) {
                    if (t == ParamType::Temporal && scale_remap) {
                        if (k.start) for (auto& x : *k.start) x *= scale;
                        if (k.end) for (auto& x : *k.end) x *= scale;
                    }
                }
            }
        } else if constexpr (std::is_same_v<V, Vec>) {
            if (t == ParamType::Temporal && scale_remap)
                for (auto& x : *a.static_value()) x *= scale;
        }
    }
    void num(const std::string& path, double& f, ParamType t) {
        // Layer ip/op/st are handled by the caller; the remaining Temporal
        // numbers are text document keyframe times.
        if (t == ParamType::Temporal && path != "ip" && path != "op") f = map(f);
    }
    void num(const std::string& path, std::optional<double>& f, ParamType t) {
        if (f && t == ParamType::Temporal && path != "st") *f = map(*f);
    }
};

void scale_asset_layer(Layer& l, double k) {
    TimeMapper m{k, 0.0, true};
    detail::walk(m, l, "");
    l.in_point *= k;
    l.out_point *= k;
    if (l.start_time) *l.start_time *= k;
}

// A precomp that started before the composition would need a negative `st`.
// Its clock offset moves into the time remap instead: existing remap and
// transform keys shift by `st`, or a linear remap over [ip, op] is created.
void fold_negative_start(Layer& l, double ip, double op, double fr) {
    const double st = *l.start_time;
    const double sr = l.time_stretch();
    auto& p = std::get<PrecompPayload>(l.payload);
    const bool had_remap = p.time_remap.has_value();
    TimeMapper shift{1.0, st / sr, false};
    detail::walk(shift, l, "");
    l.start_time = 0.0;
    if (had_remap) return;
    ip = std::max(ip, 0.0);
    if (!(op > ip)) return;
    KeyframeList<Vec> kfs(2);
    kfs[0].time = ip / sr;
    kfs[0].start = Vec{(ip - st) / sr / fr};
    kfs[0].ease_out = Tangent{{0}, {0}};
    kfs[0].ease_in = Tangent{{1}, {1}};
    kfs[1].time = op / sr;
    kfs[1].start = Vec{(op - st) / sr / fr};
    AnimatedValue tm;
    tm.data = std::move(kfs);
    p.time_remap = std::move(tm);
}

}  // namespace

std::string_view to_string(RemovalReason r) {
    switch (r) {
        case RemovalReason::Base64Image: return "Base64Image";
        case RemovalReason::Audio: return "Audio";
        case RemovalReason::Camera: return "Camera";
        case RemovalReason::Data: return "Data";
    }
    return "Unknown";
}

CleanResult clean(Animation a) {
    CleanReport report;
    const bool had_layers = !a.layers.empty();
    remove_excluded(a.layers, "layers", report);
    for (std::size_t i = 0; i < a.assets.size(); ++i) {
        remove_excluded(a.assets[i].layers, "assets[" + std::to_string(i) + "].layers", report);
    }
    report.removed_assets = a.raw_assets.size();
    a.raw_assets.clear();

    ExpressionStripper stripper;
    detail::walk(stripper, a, "");
    report.stripped_expressions = stripper.stripped;

    if (had_layers && a.layers.empty())
        return reject(std::move(report), "NonParameterizable: no parameterizable layer remains");

    auto uses_3d = [](const std::vector<Layer>& ls) {
        return std::any_of(ls.begin(), ls.end(), [](const Layer& l) { return l.three_d.value_or(false); });
    };
    bool three_d = a.three_d.value_or(false) || uses_3d(a.layers);
    for (const auto& asset : a.assets) three_d = three_d || uses_3d(asset.layers);
    if (three_d) return reject(std::move(report), "NonParameterizable: 3D layers");

    // A precomp whose asset lost all of its layers to removal renders nothing.
    for (std::size_t i = 0; i < a.assets.size(); ++i) {
        if (!a.assets[i].layers.empty()) continue;
        bool lost = std::any_of(report.removed_layers.begin(), report.removed_layers.end(),
                                [&](const RemovedLayer& r) {
                                    return r.container == "assets[" + std::to_string(i) + "].layers";
                                });
        if (lost)
            return reject(std::move(report),
                          "NonParameterizable: precomp asset '" + a.assets[i].id + "' only held removed layers");
    }

    auto issues = check_invariants(a);
    if (!issues.empty())
        return reject(std::move(report), "NonParameterizable: " + issues.front().path + ": " +
                                             issues.front().message);
    return CleanResult{std::move(a), std::move(report)};
}

CleanResult clean_json(std::string_view json_text) {
    ParseOptions opts;
    opts.admit_excluded_layers = true;
    opts.validate = false;
    return clean(parse_lottie(json_text, opts));
}

std::optional<std::size_t> find_normalize_root(const Animation& a) {
    for (std::size_t i = 0; i < a.layers.size(); ++i)
        if (a.layers[i].kind == LayerKind::Null && a.layers[i].match_name == kNormalizeRootMatchName)
            return i;
    return std::nullopt;
}

Animation normalize_spatial(const Animation& a, const NormalizeConfig& cfg) {
    if (cfg.canvas <= 0) throw Error(ErrorCode::SchemaViolation, "canvas", "canvas must be positive");
    if (find_normalize_root(a)) return a;
    Animation out = a;
    const double c = cfg.canvas;
    const double r = std::min(c / a.width, c / a.height);
    const double offx = (c - a.width * r) / 2;
    const double offy = (c - a.height * r) / 2;

    std::int64_t ind = 0;
    for (const auto& l : out.layers) ind = std::max(ind, l.index.value_or(0));
    ++ind;

    Layer root;
    root.kind = LayerKind::Null;
    root.payload = NullPayload{};
    root.index = ind;
    root.name = "normalize";
    root.match_name = std::string(kNormalizeRootMatchName);
    Transform t;
    t.anchor = make_static({0, 0});
    t.position = Position{make_static({offx, offy})};
    t.scale = make_static({100 * r, 100 * r});
    t.rotation = make_static({0});
    t.opacity = make_static({100});
    root.transform = std::move(t);
    root.in_point = a.in_point;
    root.out_point = a.out_point;
    root.start_time = 0.0;

    for (auto& l : out.layers)
        if (!l.parent) l.parent = ind;
    out.layers.push_back(std::move(root));
    out.width = c;
    out.height = c;
    return out;
}

Animation normalize_temporal(const Animation& a, const NormalizeConfig& cfg) {
    if (!(cfg.time_range_max > 0))
        throw Error(ErrorCode::SchemaViolation, "time_range", "time range must be positive");
    if (a.out_point == a.in_point)
        throw Error(ErrorCode::DegenerateDuration, "op", "op equals ip");
    Animation out = a;
    const double R = cfg.time_range_max;
    const double ip0 = a.in_point;
    const double k = R / (a.out_point - a.in_point);
    auto f = [&](double t) { return k * (t - ip0); };

    out.in_point = 0;
    out.out_point = R;
    for (auto& l : out.layers) {
        const double st = l.start();
        const double sr = l.time_stretch();
        if (l.kind == LayerKind::Precomp) {
            // The asset's clock is rescaled by k, so only the offset moves.
            TimeMapper m{k, 0.0, true};
            detail::walk(m, l, "");
            l.start_time = f(st);
            if (*l.start_time < 0) fold_negative_start(l, f(l.in_point), f(l.out_point), out.frame_rate);
        } else {
            // Fold the start offset into the keyframes: comp = st + sr * local.
            TimeMapper m{k, k * (st - ip0) / sr, false};
            detail::walk(m, l, "");
            if (l.start_time) l.start_time = 0.0;
        }
        l.in_point = std::clamp(f(l.in_point), 0.0, R);
        l.out_point = std::clamp(f(l.out_point), 0.0, R);
    }
    for (auto& asset : out.assets)
        for (auto& l : asset.layers) scale_asset_layer(l, k);
    return out;
}

Animation normalize(const Animation& a, const NormalizeConfig& cfg) {
    return normalize_spatial(normalize_temporal(a, cfg), cfg);
}

}  // namespace lottie
