#include "lottie/lint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/pipeline.hpp"

namespace lottie {

namespace {

constexpr std::array<std::string_view, kDiagCodeCount> kCodeNames = {
    "SchemaViolation", "EmptyLayers", "MissingStyle",  "TemporalVisibility", "OpacityCollapse",
    "ScaleCollapse",   "OffCanvas",   "DanglingRef",   "FontMissing",
};

struct Collector {
    std::vector<Diagnostic> out;
    void add(DiagCode c, std::string path, std::string msg) {
        out.push_back({diag_level(c), c, std::move(path), std::move(msg), diag_severity(c)});
    }
};

bool is_geometry(const ShapeItem& s) {
    return std::holds_alternative<Path>(s) || std::holds_alternative<Rect>(s) ||
           std::holds_alternative<Ellipse>(s) || std::holds_alternative<Star>(s);
}

bool is_style(const ShapeItem& s) {
    return std::holds_alternative<Fill>(s) || std::holds_alternative<Stroke>(s) ||
           std::holds_alternative<GradientFill>(s) || std::holds_alternative<GradientStroke>(s);
}

// A style applies to every geometry in its own list and in nested groups.
void check_styles(const std::vector<ShapeNode>& shapes, const std::string& path, bool styled,
                  Collector& c) {
    styled = styled || std::any_of(shapes.begin(), shapes.end(),
                                   [](const ShapeNode& n) { return is_style(n.item); });
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        if (const auto* g = std::get_if<Group>(&shapes[i].item)) {
            check_styles(g->items, p + ".it", styled, c);
        } else if (is_geometry(shapes[i].item) && !styled) {
            c.add(DiagCode::MissingStyle, p,
                  "geometry '" + std::string(shape_type(shapes[i].item)) + "' has no fill or stroke");
        }
    }
}

bool has_text_layer(const std::vector<Layer>& layers) {
    return std::any_of(layers.begin(), layers.end(),
                       [](const Layer& l) { return l.kind == LayerKind::Text; });
}

void check_layer_content(const std::vector<Layer>& layers, const std::string& container, Collector& c) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (const auto* s = std::get_if<ShapePayload>(&layers[i].payload))
            check_styles(s->shapes, container + "[" + std::to_string(i) + "].shapes", false, c);
    }
}

template <class F>
void each_value(const AnimatedValue& a, F&& f) {
    if (const auto* v = a.static_value()) {
        f(*v);
        return;
    }
    for (const auto& k : *a.keyframes()) {
        if (k.start) f(*k.start);
        if (k.end) f(*k.end);
    }
}

// Positions sampled at static values and keyframe values, in layer space.
std::vector<std::array<double, 2>> position_samples(const Position& p) {
    std::vector<std::array<double, 2>> out;
    if (const auto* a = std::get_if<AnimatedValue>(&p)) {
        each_value(*a, [&](const Vec& v) {
            if (v.size() >= 2) out.push_back({v[0], v[1]});
        });
        return out;
    }
    const auto& s = std::get<SplitPosition>(p);
    std::vector<double> xs, ys;
    each_value(s.x, [&](const Vec& v) { if (!v.empty()) xs.push_back(v[0]); });
    each_value(s.y, [&](const Vec& v) { if (!v.empty()) ys.push_back(v[0]); });
    for (double x : xs)
        for (double y : ys) out.push_back({x, y});
    return out;
}

struct RootMap {
    double ox = 0, oy = 0, sx = 1, sy = 1;
    std::array<double, 2> apply(std::array<double, 2> p) const { return {ox + sx * p[0], oy + sy * p[1]}; }
};

// Transform of the normalization root when it is a plain static offset+scale.
std::optional<RootMap> root_map(const Layer& root) {
    if (!root.transform) return std::nullopt;
    const auto& t = *root.transform;
    RootMap m;
    if (t.position) {
        const auto* p = std::get_if<AnimatedValue>(&*t.position);
        if (!p || !p->static_value() || p->static_value()->size() < 2) return std::nullopt;
        m.ox = (*p->static_value())[0];
        m.oy = (*p->static_value())[1];
    }
    if (t.scale) {
        const auto* s = t.scale->static_value();
        if (!s || s->size() < 2) return std::nullopt;
        m.sx = (*s)[0] / 100;
        m.sy = (*s)[1] / 100;
    }
    if (t.anchor) {
        const auto* a = t.anchor->static_value();
        if (!a || a->size() < 2) return std::nullopt;
        m.ox -= m.sx * (*a)[0];
        m.oy -= m.sy * (*a)[1];
    }
    if (t.rotation) {
        const auto* r = t.rotation->static_value();
        if (!r || r->empty() || (*r)[0] != 0) return std::nullopt;
    }
    return m;
}

void check_root_layers(const Animation& a, const LintConfig& cfg, Collector& c) {
    std::optional<std::int64_t> root_ind;
    std::optional<RootMap> map;
    if (auto r = find_normalize_root(a)) {
        root_ind = a.layers[*r].index;
        map = root_map(a.layers[*r]);
    }

    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        const Layer& l = a.layers[i];
        const auto path = "layers[" + std::to_string(i) + "]";

        if (l.in_point >= a.out_point || l.out_point <= a.in_point || l.out_point - l.in_point < 1) {
            c.add(DiagCode::TemporalVisibility, path,
                  "visible range [" + format_number(l.in_point) + ", " + format_number(l.out_point) +
                      ") does not show within [" + format_number(a.in_point) + ", " +
                      format_number(a.out_point) + ")");
        }
        if (!l.transform) continue;
        const auto& t = *l.transform;

        const bool visible = !l.hidden.value_or(false) && l.kind != LayerKind::Null;
        if (visible && t.opacity) {
            if (const auto* o = t.opacity->static_value(); o && !o->empty() && (*o)[0] <= cfg.opacity_collapse)
                c.add(DiagCode::OpacityCollapse, path + ".ks.o",
                      "static opacity " + format_number((*o)[0]) + " renders invisible");
        }
        if (t.scale) {
            if (const auto* s = t.scale->static_value()) {
                const bool collapsed = std::any_of(s->begin(), s->begin() + std::min<std::size_t>(2, s->size()),
                                                   [&](double x) { return std::abs(x) <= cfg.scale_collapse; });
                if (collapsed) c.add(DiagCode::ScaleCollapse, path + ".ks.s", "static scale collapses to a point");
            }
        }

        if (l.kind == LayerKind::Null || !t.position) continue;
        // Positions are in canvas space only for top-level layers.
        const bool top = !l.parent;
        const bool under_root = root_ind && l.parent == root_ind;
        if (!top && !(under_root && map)) continue;
        const double cw = a.width, ch = a.height;
        for (auto p : position_samples(*t.position)) {
            if (under_root) p = map->apply(p);
            const bool out_x = p[0] < -cw || p[0] > 2 * cw;
            const bool out_y = p[1] < -ch || p[1] > 2 * ch;
            if (out_x && out_y) {
                c.add(DiagCode::OffCanvas, path + ".ks.p",
                      "position [" + format_number(p[0]) + ", " + format_number(p[1]) + "] is far off canvas");
                break;
            }
        }
    }
}

}  // namespace

std::string_view to_string(DiagCode c) { return kCodeNames[static_cast<std::size_t>(c)]; }

std::optional<DiagCode> diag_code_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kCodeNames.size(); ++i)
        if (kCodeNames[i] == s) return static_cast<DiagCode>(i);
    return std::nullopt;
}

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

int diag_level(DiagCode c) {
    switch (c) {
        case DiagCode::SchemaViolation:
        case DiagCode::DanglingRef:
        case DiagCode::FontMissing: return 1;
        case DiagCode::EmptyLayers: return 2;
        default: return 3;
    }
}

Severity diag_severity(DiagCode c) {
    switch (c) {
        case DiagCode::OpacityCollapse:
        case DiagCode::ScaleCollapse:
        case DiagCode::OffCanvas: return Severity::Warning;
        default: return Severity::Error;
    }
}

std::vector<Diagnostic> lint(const Animation& a, const LintConfig& cfg) {
    Collector c;
    for (const auto& issue : check_invariants(a)) {
        c.add(issue.kind == Issue::Kind::Dangling ? DiagCode::DanglingRef : DiagCode::SchemaViolation,
              issue.path, issue.message);
    }
    bool text = has_text_layer(a.layers);
    for (const auto& asset : a.assets) text = text || has_text_layer(asset.layers);
    if (text && a.fonts.empty()) c.add(DiagCode::FontMissing, "fonts", "text layer without a fonts table");

    if (a.layers.empty()) c.add(DiagCode::EmptyLayers, "layers", "no layer generated");

    check_layer_content(a.layers, "layers", c);
    for (std::size_t i = 0; i < a.assets.size(); ++i)
        check_layer_content(a.assets[i].layers, "assets[" + std::to_string(i) + "].layers", c);
    check_root_layers(a, cfg, c);

    std::stable_sort(c.out.begin(), c.out.end(),
                     [](const Diagnostic& x, const Diagnostic& y) { return x.level < y.level; });
    return std::move(c.out);
}

std::vector<Diagnostic> lint_json(std::string_view json_text, const LintConfig& cfg) {
    ParseOptions opts;
    opts.admit_excluded_layers = true;
    opts.validate = false;
    try {
        return lint(parse_lottie(json_text, opts), cfg);
    } catch (const Error& e) {
        Collector c;
        c.add(DiagCode::SchemaViolation, e.path(), e.what());
        return std::move(c.out);
    }
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
        out += "L" + std::to_string(d.level) + " " + std::string(to_string(d.code)) + " " + d.path + ": " +
               d.message + "\n";
    }
    return out;
}

Json diagnostics_json(const std::vector<Diagnostic>& diags) {
    Json out = Json::array();
    for (const auto& d : diags) {
        out.push_back(Json{{"level", d.level},
                           {"code", to_string(d.code)},
                           {"path", d.path},
                           {"message", d.message},
                           {"severity", to_string(d.severity)}});
    }
    return out;
}

std::vector<HistogramRow> failure_histogram(const std::vector<std::vector<Diagnostic>>& per_file) {
    std::array<std::size_t, kDiagCodeCount> counts{};
    std::size_t failing = 0;
    for (const auto& diags : per_file) {
        if (diags.empty()) continue;
        auto rank = [](const Diagnostic& d) {
            return std::pair(d.severity == Severity::Error ? 0 : 1, d.level);
        };
        const auto it = std::min_element(diags.begin(), diags.end(),
                                         [&](const Diagnostic& x, const Diagnostic& y) { return rank(x) < rank(y); });
        ++counts[static_cast<std::size_t>(it->code)];
        ++failing;
    }
    std::vector<HistogramRow> rows;
    for (std::size_t i = 0; i < kDiagCodeCount; ++i) {
        if (counts[i] == 0) continue;
        rows.push_back({static_cast<DiagCode>(i), counts[i], 100.0 * static_cast<double>(counts[i]) /
                                                                 static_cast<double>(failing)});
    }
    return rows;
}

}  // namespace lottie
