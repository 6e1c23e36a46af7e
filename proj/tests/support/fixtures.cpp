#include "fixtures.hpp"

#include <algorithm>
#include <cstdio>

#include "lottie/pipeline.hpp"
#include "lottie/text_tokenizer.hpp"
#include "lottie/vocab.hpp"

namespace lottie::testing {

namespace {

constexpr std::array<CommandKind, 15> kShapeCommands = {
    CommandKind::ShapeGroup,    CommandKind::ShapePath,           CommandKind::ShapeFill,
    CommandKind::ShapeStroke,   CommandKind::ShapeGradientFill,   CommandKind::ShapeGradientStroke,
    CommandKind::ShapeRect,     CommandKind::ShapeEllipse,        CommandKind::ShapeStar,
    CommandKind::ShapeTransform, CommandKind::ShapeTrim,          CommandKind::ShapeRepeater,
    CommandKind::ShapeMerge,    CommandKind::ShapeRoundedCorners, CommandKind::ShapeZigZag,
};

// Items that may appear loose in a shape list (transforms close groups).
constexpr std::array<CommandKind, 13> kLooseShapes = {
    CommandKind::ShapeGroup,        CommandKind::ShapePath,           CommandKind::ShapeStroke,
    CommandKind::ShapeGradientFill, CommandKind::ShapeGradientStroke, CommandKind::ShapeRect,
    CommandKind::ShapeEllipse,      CommandKind::ShapeStar,           CommandKind::ShapeTrim,
    CommandKind::ShapeRepeater,     CommandKind::ShapeMerge,          CommandKind::ShapeRoundedCorners,
    CommandKind::ShapeZigZag,
};

const std::array<std::string, 6> kWords = {"Layer", "Icon", "Blob", "Ring", "Star", "Café"};

class Gen {
  public:
    Gen(std::uint64_t seed, const Space& s) : r(seed), sp(s) {}

    Rng r;
    Space sp;

    // Keyframe times: `m` values at least 0.75 apart inside [lo, hi].
    std::vector<double> times(double lo, double hi, int m) {
        const int slots = static_cast<int>(std::floor(hi - lo));
        std::vector<int> picks;
        while (static_cast<int>(picks.size()) < m) {
            int k = static_cast<int>(r.below(slots));
            if (std::find(picks.begin(), picks.end(), k) == picks.end()) picks.push_back(k);
        }
        std::sort(picks.begin(), picks.end());
        std::vector<double> out;
        for (int k : picks) out.push_back(lo + k + r.uni(0, 0.25));
        return out;
    }

    Vec vec(std::size_t n, double lo, double hi) {
        Vec v(n);
        for (auto& x : v) x = r.uni(lo, hi);
        return v;
    }

    Tangent tangent(std::size_t dims) {
        const std::size_t n = r.coin() ? 1 : dims;
        return Tangent{vec(n, 0, 1), vec(n, 0, 1)};
    }

    // Property over [lo, hi]^dims; animated with probability `p_anim`
    // across local times [t0, t1].
    AnimatedValue prop(std::size_t dims, double lo, double hi, double p_anim, double t0, double t1,
                       bool spatial = false) {
        if (!r.coin(p_anim) || t1 - t0 < 4) return make_static(vec(dims, lo, hi));
        const int m = 2 + static_cast<int>(r.below(3));
        const auto ts = times(t0, t1, m);
        KeyframeList<Vec> kfs;
        for (int i = 0; i < m; ++i) {
            Keyframe<Vec> k;
            k.time = ts[static_cast<std::size_t>(i)];
            k.start = vec(dims, lo, hi);
            if (i + 1 < m) {
                if (r.coin(0.15)) {
                    k.hold = true;
                } else {
                    k.ease_out = tangent(dims);
                    k.ease_in = tangent(dims);
                    if (r.coin(0.2)) k.end = vec(dims, lo, hi);
                    if (spatial && r.coin(0.5)) {
                        k.spatial_out = vec(dims, -40, 40);
                        k.spatial_in = vec(dims, -40, 40);
                    }
                }
            }
            kfs.push_back(std::move(k));
        }
        AnimatedValue a;
        a.data = std::move(kfs);
        return a;
    }

    AnimatedValue scalar(double lo, double hi, double p_anim, double t0, double t1) {
        return prop(1, lo, hi, p_anim, t0, t1);
    }

    Bezier bezier(std::size_t n) {
        Bezier b;
        if (r.coin(0.8)) b.closed = r.coin(0.7);
        const double cx = r.uni(0.2, 0.8) * sp.width, cy = r.uni(0.2, 0.8) * sp.height;
        for (std::size_t i = 0; i < n; ++i) {
            b.vertices.push_back({cx + r.uni(-100, 100), cy + r.uni(-100, 100)});
            b.in_tangents.push_back({r.uni(-40, 40), r.uni(-40, 40)});
            b.out_tangents.push_back({r.uni(-40, 40), r.uni(-40, 40)});
        }
        return b;
    }

    AnimatedPath path(double p_anim, double t0, double t1) {
        const std::size_t n = 3 + static_cast<std::size_t>(r.below(4));
        if (!r.coin(p_anim) || t1 - t0 < 4) return AnimatedPath{bezier(n), {}, {}};
        const int m = 2 + static_cast<int>(r.below(2));
        const auto ts = times(t0, t1, m);
        KeyframeList<Bezier> kfs;
        for (int i = 0; i < m; ++i) {
            Keyframe<Bezier> k;
            k.time = ts[static_cast<std::size_t>(i)];
            k.start = bezier(n);
            if (i + 1 < m) {
                k.ease_out = tangent(1);
                k.ease_in = tangent(1);
            }
            kfs.push_back(std::move(k));
        }
        AnimatedPath a;
        a.data = std::move(kfs);
        return a;
    }

    std::string name(const char* prefix) {
        return std::string(prefix) + " " + kWords[static_cast<std::size_t>(r.below(kWords.size()))] + " " +
               std::to_string(r.below(100));
    }

    Transform transform(double t0, double t1, bool with_repeater_opacity = false) {
        Transform t;
        const double w = sp.width, h = sp.height;
        t.anchor = prop(2, -50, 50, 0.1, t0, t1);
        if (r.coin(0.15)) {
            SplitPosition s;
            s.x = scalar(0, w, 0.5, t0, t1);
            s.y = scalar(0, h, 0.5, t0, t1);
            t.position = Position{std::move(s)};
        } else {
            t.position = Position{prop(r.coin(0.2) ? 3 : 2, 0, std::min(w, h), 0.4, t0, t1, true)};
            if (auto* v = std::get<AnimatedValue>(*t.position).static_value(); v && v->size() == 3) (*v)[2] = 0;
        }
        t.scale = prop(2, 50, 200, 0.3, t0, t1);
        t.rotation = scalar(-180, 360, 0.3, t0, t1);
        t.opacity = scalar(30, 100, 0.3, t0, t1);
        if (r.coin(0.2)) t.skew = scalar(-30, 30, 0.2, t0, t1);
        if (r.coin(0.2)) t.skew_axis = scalar(-90, 90, 0.2, t0, t1);
        if (with_repeater_opacity) {
            t.start_opacity = scalar(30, 100, 0.2, t0, t1);
            t.end_opacity = scalar(30, 100, 0.2, t0, t1);
        }
        return t;
    }

    std::vector<Dash> dashes(double t0, double t1) {
        std::vector<Dash> out;
        if (!r.coin(0.3)) return out;
        for (std::string_view code : {"d", "g", "o"}) {
            Dash d;
            d.kind = std::string(code);
            if (r.coin(0.5)) d.name = std::string(code == "d" ? "dash" : code == "g" ? "gap" : "offset");
            d.length = scalar(0, 30, 0.2, t0, t1);
            out.push_back(std::move(d));
        }
        return out;
    }

    GradientBase gradient(double t0, double t1) {
        GradientBase g;
        g.opacity = scalar(30, 100, 0.2, t0, t1);
        g.start_point = prop(2, 0, sp.width, 0.2, t0, t1);
        g.end_point = prop(2, 0, sp.width, 0.2, t0, t1);
        g.gradient_type = 1 + r.below(2);
        if (*g.gradient_type == 2) {
            g.highlight_length = scalar(0, 100, 0.2, t0, t1);
            g.highlight_angle = scalar(-180, 180, 0.2, t0, t1);
        }
        GradientColors c;
        const std::int64_t stops = 2 + r.below(3);
        c.stop_count = stops;
        Vec k;
        double off = 0;
        for (std::int64_t i = 0; i < stops; ++i) {
            k.push_back(off);
            off = std::min(1.0, off + r.uni(0.1, 0.5));
            for (int ch = 0; ch < 3; ++ch) k.push_back(r.uni(0, 1));
        }
        if (r.coin(0.4))
            for (std::int64_t i = 0; i < stops; ++i) {
                k.push_back(static_cast<double>(i) / static_cast<double>(stops - 1));
                k.push_back(r.uni(0.3, 1));
            }
        c.stops = make_static(k);
        g.colors = std::move(c);
        return g;
    }

    ShapeNode shape(CommandKind kind, double t0, double t1, int depth) {
        ShapeNode n;
        if (r.coin(0.6)) n.name = name("Shape");
        if (r.coin(0.2)) n.match_name = "ADBE Vector " + std::to_string(r.below(10));
        if (r.coin(0.1)) n.hidden = false;
        const double w = sp.width, h = sp.height;
        switch (kind) {
            case CommandKind::ShapeGroup: {
                Group g;
                const int count = depth > 1 ? 1 : 1 + static_cast<int>(r.below(3));
                for (int i = 0; i < count; ++i) {
                    auto k = depth > 1 ? CommandKind::ShapeEllipse
                                       : kLooseShapes[static_cast<std::size_t>(r.below(kLooseShapes.size()))];
                    g.items.push_back(shape(k, t0, t1, depth + 1));
                }
                if (r.coin(0.5)) g.items.push_back(shape(CommandKind::ShapeFill, t0, t1, depth + 1));
                g.items.push_back(shape(CommandKind::ShapeTransform, t0, t1, depth + 1));
                n.item = std::move(g);
                break;
            }
            case CommandKind::ShapePath: {
                Path p;
                if (r.coin(0.7)) p.direction = r.coin(0.8) ? 1 : 3;
                p.shape = path(0.3, t0, t1);
                n.item = std::move(p);
                break;
            }
            case CommandKind::ShapeFill: {
                Fill f;
                f.color = prop(r.coin(0.8) ? 3 : 4, 0, 1, 0.2, t0, t1);
                f.opacity = scalar(40, 100, 0.2, t0, t1);
                if (r.coin(0.7)) f.fill_rule = 1 + r.below(2);
                n.item = std::move(f);
                break;
            }
            case CommandKind::ShapeStroke: {
                Stroke s;
                s.color = prop(3, 0, 1, 0.2, t0, t1);
                s.opacity = scalar(40, 100, 0.2, t0, t1);
                s.width = scalar(1, 20, 0.2, t0, t1);
                s.line_cap = 1 + r.below(3);
                s.line_join = 1 + r.below(3);
                if (r.coin(0.6)) s.miter_limit = std::round(r.uni(1, 10));
                s.dashes = dashes(t0, t1);
                n.item = std::move(s);
                break;
            }
            case CommandKind::ShapeGradientFill: {
                GradientFill f;
                f.gradient = gradient(t0, t1);
                if (r.coin(0.6)) f.fill_rule = 1 + r.below(2);
                n.item = std::move(f);
                break;
            }
            case CommandKind::ShapeGradientStroke: {
                GradientStroke s;
                s.gradient = gradient(t0, t1);
                s.width = scalar(1, 20, 0.2, t0, t1);
                s.line_cap = 1 + r.below(3);
                s.line_join = 1 + r.below(3);
                if (r.coin(0.5)) s.miter_limit = 4;
                s.dashes = dashes(t0, t1);
                n.item = std::move(s);
                break;
            }
            case CommandKind::ShapeRect: {
                Rect x;
                if (r.coin(0.7)) x.direction = 1;
                x.position = prop(2, 0, w, 0.3, t0, t1);
                x.size = prop(2, 10, w / 2, 0.3, t0, t1);
                x.roundness = scalar(0, 30, 0.2, t0, t1);
                n.item = std::move(x);
                break;
            }
            case CommandKind::ShapeEllipse: {
                Ellipse e;
                if (r.coin(0.7)) e.direction = 1;
                e.position = prop(2, 0, w, 0.3, t0, t1);
                e.size = prop(2, 10, h / 2, 0.3, t0, t1);
                n.item = std::move(e);
                break;
            }
            case CommandKind::ShapeStar: {
                Star s;
                if (r.coin(0.7)) s.direction = 1;
                s.star_type = 1 + r.below(2);
                s.position = prop(2, 0, w, 0.3, t0, t1);
                s.outer_radius = scalar(20, 150, 0.3, t0, t1);
                if (*s.star_type == 1) {
                    s.inner_radius = scalar(5, 60, 0.2, t0, t1);
                    s.inner_roundness = scalar(0, 100, 0.1, t0, t1);
                }
                s.outer_roundness = scalar(0, 100, 0.1, t0, t1);
                s.rotation = scalar(-180, 180, 0.3, t0, t1);
                s.points = make_static({static_cast<double>(3 + r.below(6))});
                n.item = std::move(s);
                break;
            }
            case CommandKind::ShapeTransform: {
                n.item = GroupTransform{transform(t0, t1)};
                break;
            }
            case CommandKind::ShapeTrim: {
                TrimPath t;
                t.start = scalar(0, 50, 0.4, t0, t1);
                t.end = scalar(50, 100, 0.4, t0, t1);
                t.offset = scalar(-180, 180, 0.2, t0, t1);
                t.mode = 1 + r.below(2);
                n.item = std::move(t);
                break;
            }
            case CommandKind::ShapeRepeater: {
                Repeater rep;
                rep.copies = make_static({static_cast<double>(2 + r.below(6))});
                rep.offset = scalar(-3, 3, 0.2, t0, t1);
                rep.composite = 1 + r.below(2);
                rep.transform = transform(t0, t1, true);
                n.item = std::move(rep);
                break;
            }
            case CommandKind::ShapeMerge: {
                MergePaths m;
                m.mode = 1 + r.below(5);
                n.item = std::move(m);
                break;
            }
            case CommandKind::ShapeRoundedCorners: {
                RoundedCorners rc;
                rc.radius = scalar(0, 40, 0.3, t0, t1);
                n.item = std::move(rc);
                break;
            }
            case CommandKind::ShapeZigZag: {
                ZigZag z;
                z.frequency = scalar(1, 20, 0.2, t0, t1);
                z.amplitude = scalar(0, 30, 0.2, t0, t1);
                z.point_type = make_static({static_cast<double>(1 + r.below(2))});
                n.item = std::move(z);
                break;
            }
            default: break;
        }
        return n;
    }

    std::vector<ShapeNode> shape_list(double t0, double t1, std::optional<CommandKind> must) {
        std::vector<ShapeNode> out;
        const int count = 1 + static_cast<int>(r.below(3));
        if (must && *must != CommandKind::ShapeFill && *must != CommandKind::ShapeTransform)
            out.push_back(shape(*must, t0, t1, 0));
        for (int i = 0; i < count; ++i)
            out.push_back(shape(kLooseShapes[static_cast<std::size_t>(r.below(kLooseShapes.size()))], t0, t1, 0));
        if (must == CommandKind::ShapeTransform) out.push_back(shape(CommandKind::ShapeGroup, t0, t1, 0));
        if (r.coin(0.4)) out.push_back(shape(CommandKind::ShapeStroke, t0, t1, 0));
        // A top-level fill styles every geometry of the layer.
        out.push_back(shape(CommandKind::ShapeFill, t0, t1, 0));
        return out;
    }

    Mask mask(double t0, double t1) {
        Mask m;
        if (r.coin(0.6)) m.inverted = r.coin(0.3);
        m.mode = std::string(kMaskModes[static_cast<std::size_t>(r.below(kMaskModes.size()))]);
        m.path = path(0.3, t0, t1);
        m.opacity = scalar(50, 100, 0.2, t0, t1);
        if (r.coin(0.6)) m.expansion = scalar(-20, 20, 0.2, t0, t1);
        if (r.coin(0.5)) m.name = name("Mask");
        return m;
    }

    Effect effect(double t0, double t1, std::int64_t layer_ref) {
        Effect e;
        e.kind = 5;
        e.name = name("Effect");
        if (r.coin(0.5)) e.match_name = "ADBE Effect " + std::to_string(r.below(40));
        if (r.coin(0.7)) e.enabled = true;
        static constexpr std::array<EffectParamKind, 8> kKinds = {
            EffectParamKind::Slider,   EffectParamKind::Angle,   EffectParamKind::Color,
            EffectParamKind::Point,    EffectParamKind::Checkbox, EffectParamKind::Dropdown,
            EffectParamKind::Layer,    EffectParamKind::NoValue};
        const int count = 1 + static_cast<int>(r.below(4));
        for (int i = 0; i < count; ++i) {
            const auto kind = kKinds[static_cast<std::size_t>(r.below(kKinds.size()))];
            EffectParam p;
            p.kind = static_cast<std::int64_t>(kind);
            p.name = name("Param");
            if (r.coin(0.3)) p.match_name = "ADBE Param " + std::to_string(i);
            switch (kind) {
                case EffectParamKind::Slider: p.value = scalar(-100, 100, 0.3, t0, t1); break;
                case EffectParamKind::Angle: p.value = scalar(-180, 360, 0.3, t0, t1); break;
                case EffectParamKind::Color: p.value = prop(4, 0, 1, 0.2, t0, t1); break;
                case EffectParamKind::Point: p.value = prop(2, 0, sp.width, 0.2, t0, t1); break;
                case EffectParamKind::Checkbox: p.value = make_static({static_cast<double>(r.below(2))}); break;
                case EffectParamKind::Dropdown: p.value = make_static({static_cast<double>(1 + r.below(5))}); break;
                case EffectParamKind::Layer: p.value = make_static({static_cast<double>(layer_ref)}); break;
                default: break;
            }
            e.params.push_back(std::move(p));
        }
        return e;
    }

    TextDocument document(const std::string& font) {
        TextDocument d;
        d.size = std::round(r.uni(12, 96));
        d.font = font;
        static const std::array<std::string, 5> kTexts = {"Hello", "Lottie tokens", "Ünïcødé ✓", "A\rB", "42"};
        d.text = kTexts[static_cast<std::size_t>(r.below(kTexts.size()))];
        d.justify = r.below(3);
        if (r.coin(0.7)) d.tracking = std::round(r.uni(-20, 50));
        if (r.coin(0.7)) d.line_height = std::round(r.uni(10, 120));
        if (r.coin(0.3)) d.baseline_shift = 0;
        d.fill_color = vec(3, 0, 1);
        if (r.coin(0.3)) {
            d.stroke_color = vec(3, 0, 1);
            d.stroke_width = std::round(r.uni(1, 5));
            d.stroke_over_fill = r.coin();
        }
        if (r.coin(0.2)) {
            d.box_position = vec(2, 0, 200);
            d.box_size = vec(2, 50, 300);
        }
        if (r.coin(0.2)) d.caps = r.below(3);
        return d;
    }

    TextData text(double t0, double t1, const std::string& font) {
        TextData t;
        const int docs = t1 - t0 > 10 && r.coin(0.3) ? 2 : 1;
        std::vector<double> ts = docs == 2 ? times(t0, t1, 2) : std::vector<double>{t0};
        for (int i = 0; i < docs; ++i) t.documents.push_back(TextDocKeyframe{ts[static_cast<std::size_t>(i)], document(font), {}});
        if (r.coin(0.5)) {
            TextAnimator an;
            if (r.coin(0.5)) an.name = name("Animator");
            TextSelector s;
            s.type = 0;
            s.start = scalar(0, 50, 0.4, t0, t1);
            s.end = scalar(50, 100, 0.3, t0, t1);
            s.offset = scalar(-50, 50, 0.2, t0, t1);
            if (r.coin(0.5)) s.amount = scalar(0, 100, 0.2, t0, t1);
            s.units = 1 + r.below(2);
            s.based_on = 1 + r.below(4);
            s.shape = 1 + r.below(6);
            an.selector = std::move(s);
            TextAnimatedProps p;
            if (r.coin(0.5)) p.position = prop(2, -50, 50, 0.3, t0, t1);
            if (r.coin(0.3)) p.anchor = prop(2, -20, 20, 0.2, t0, t1);
            if (r.coin(0.4)) p.scale = prop(2, 50, 150, 0.3, t0, t1);
            if (r.coin(0.4)) p.rotation = scalar(-90, 90, 0.3, t0, t1);
            p.opacity = scalar(0, 100, 0.3, t0, t1);
            if (r.coin(0.3)) p.fill_color = prop(3, 0, 1, 0.2, t0, t1);
            if (r.coin(0.2)) p.stroke_color = prop(3, 0, 1, 0.2, t0, t1);
            if (r.coin(0.2)) p.stroke_width = scalar(0, 5, 0.2, t0, t1);
            if (r.coin(0.3)) p.tracking = scalar(-10, 30, 0.2, t0, t1);
            if (r.coin(0.2)) p.skew = scalar(-20, 20, 0.2, t0, t1);
            if (r.coin(0.2)) p.skew_axis = scalar(-45, 45, 0.2, t0, t1);
            an.props = std::move(p);
            t.animators.push_back(std::move(an));
        }
        if (r.coin(0.3)) t.path_options = Json::object();
        if (r.coin(0.3)) t.more_options = Json{{"a", 0}, {"g", 1}};
        return t;
    }

    std::string hex_color() {
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<unsigned>(r.below(256)),
                      static_cast<unsigned>(r.below(256)), static_cast<unsigned>(r.below(256)));
        return buf;
    }
};

struct Builder {
    Gen& g;
    Animation& a;
    std::string font;
    int asset_count = 0;

    // Layer of `kind` living in a container whose clock spans [t0, t1].
    Layer layer(LayerKind kind, std::int64_t ind, double t0, double t1, std::optional<CommandKind> must_shape,
                bool masks, bool effects, int depth) {
        Layer l;
        l.kind = kind;
        l.index = ind;
        if (g.r.coin(0.8)) l.name = g.name("Layer");
        if (g.r.coin(0.1)) l.match_name = "ADBE Layer";
        if (g.r.coin(0.05)) l.css_class = "cls" + std::to_string(ind);
        if (g.r.coin(0.05)) l.layer_xml_id = "id" + std::to_string(ind);
        if (g.r.coin(0.3)) l.three_d = false;
        if (g.r.coin(0.1)) l.hidden = false;
        if (g.r.coin(0.1)) l.collapse = false;
        if (g.r.coin(0.2)) l.stretch = 1;
        if (g.r.coin(0.1)) l.auto_orient = false;
        if (g.r.coin(0.3)) l.blend_mode = g.r.below(4);

        const double span = t1 - t0;
        l.in_point = t0 + std::floor(g.r.uni(0, span / 3));
        l.out_point = t1 - std::floor(g.r.uni(0, span / 3));
        if (g.r.coin(0.7)) l.start_time = t0;
        const double k0 = l.in_point - l.start(), k1 = l.out_point - l.start();
        l.transform = g.transform(k0, k1);

        if (masks) {
            l.has_mask = true;
            const int count = 1 + static_cast<int>(g.r.below(2));
            for (int i = 0; i < count; ++i) l.masks.push_back(g.mask(k0, k1));
        }
        if (effects) {
            const int count = 1 + static_cast<int>(g.r.below(2));
            for (int i = 0; i < count; ++i) l.effects.push_back(g.effect(k0, k1, ind));
        }

        switch (kind) {
            case LayerKind::Precomp: {
                PrecompPayload p;
                p.ref_id = add_asset(depth);
                p.width = g.sp.width;
                p.height = g.sp.height;
                if (g.r.coin(0.3)) p.time_remap = g.scalar(0, 1.5, 0.7, k0, k1);
                l.payload = std::move(p);
                break;
            }
            case LayerKind::Solid: {
                SolidPayload s;
                s.color = g.hex_color();
                s.width = std::round(g.r.uni(10, g.sp.width));
                s.height = std::round(g.r.uni(10, g.sp.height));
                l.payload = std::move(s);
                break;
            }
            case LayerKind::Null: l.payload = NullPayload{}; break;
            case LayerKind::Shape: l.payload = ShapePayload{g.shape_list(k0, k1, must_shape)}; break;
            case LayerKind::Text: {
                if (font.empty()) add_fonts();
                l.payload = TextPayload{g.text(k0, k1, font)};
                break;
            }
            default: break;
        }
        return l;
    }

    void add_fonts() {
        font = "Sans-Regular";
        Font f;
        f.name = font;
        f.family = "Sans";
        f.style = "Regular";
        f.ascent = 72;
        if (g.r.coin(0.3)) f.origin = "0";
        a.fonts.push_back(std::move(f));
        if (g.r.coin(0.3)) {
            Font b;
            b.name = "Serif-Bold";
            b.family = "Serif";
            b.style = "Bold";
            a.fonts.push_back(std::move(b));
        }
        if (g.r.coin(0.4)) {
            Glyph c;
            c.character = "H";
            c.size = 72;
            c.style = "Regular";
            c.width = 60;
            c.family = "Sans";
            GlyphData d;
            ShapeNode n;
            n.name = "H";
            Path p;
            p.shape = AnimatedPath{g.bezier(4), {}, {}};
            n.item = std::move(p);
            Group grp;
            grp.items.push_back(std::move(n));
            ShapeNode gn;
            gn.name = "H";
            gn.item = std::move(grp);
            d.shapes.push_back(std::move(gn));
            c.data = std::move(d);
            a.chars.push_back(std::move(c));
        }
    }

    std::string add_asset(int depth) {
        const std::string id = "comp_" + std::to_string(asset_count++);
        PrecompAsset asset;
        asset.id = id;
        if (g.r.coin(0.5)) asset.name = "Comp " + id;
        if (g.r.coin(0.3)) asset.frame_rate = g.sp.frame_rate;
        // Reserve the slot so nested assets keep declaration order stable.
        a.assets.push_back(asset);
        const std::size_t slot = a.assets.size() - 1;
        const double dur = g.sp.out_point - g.sp.in_point;
        const int count = 1 + static_cast<int>(g.r.below(3));
        std::vector<Layer> layers;
        for (int i = 0; i < count; ++i) {
            LayerKind kind = i == 0 && depth < 2 && g.r.coin(0.3)
                                 ? LayerKind::Precomp
                                 : std::array{LayerKind::Shape, LayerKind::Null, LayerKind::Solid,
                                              LayerKind::Shape}[static_cast<std::size_t>(g.r.below(4))];
            layers.push_back(layer(kind, i + 1, 0, dur, std::nullopt, false, false, depth + 1));
        }
        link(layers);
        a.assets[slot].layers = std::move(layers);
        return id;
    }

    // Parent and matte links to earlier layers only, so no cycles form.
    void link(std::vector<Layer>& layers) {
        for (std::size_t i = 1; i < layers.size(); ++i) {
            if (g.r.coin(0.3)) layers[i].parent = layers[static_cast<std::size_t>(g.r.below(static_cast<std::int64_t>(i)))].index;
            if (g.r.coin(0.15) && !layers[i - 1].matte_target && layers[i - 1].kind != LayerKind::Null) {
                layers[i - 1].matte_target = true;
                layers[i].matte_mode = 1 + g.r.below(4);
                if (g.r.coin(0.5)) layers[i].matte_parent = layers[i - 1].index;
            }
        }
    }
};

}  // namespace

const std::vector<CommandKind>& all_shape_commands() {
    static const std::vector<CommandKind> v(kShapeCommands.begin(), kShapeCommands.end());
    return v;
}

Animation make_fixture(std::uint64_t seed, const FixtureOptions& opts) {
    Gen g(seed, opts.space);
    Animation a;
    const auto& sp = opts.space;
    if (g.r.coin(0.1)) a.version = "6.0.0-custom";
    else a.version = std::string(kKnownVersions[1 + static_cast<std::size_t>(g.r.below(kKnownVersions.size() - 1))]);
    a.frame_rate = sp.frame_rate;
    a.in_point = sp.in_point;
    a.out_point = sp.out_point;
    a.width = sp.width;
    a.height = sp.height;
    if (g.r.coin(0.6)) a.name = g.name("Anim");
    if (g.r.coin(0.5)) a.three_d = false;

    Builder b{g, a, {}, 0};
    static constexpr std::array<LayerKind, 5> kKinds = {LayerKind::Precomp, LayerKind::Solid, LayerKind::Null,
                                                        LayerKind::Shape, LayerKind::Text};
    const int count = 1 + static_cast<int>(g.r.below(4));
    std::vector<LayerKind> kinds;
    if (opts.must_have_layer) kinds.push_back(*opts.must_have_layer);
    if (opts.must_have_shape) kinds.push_back(LayerKind::Shape);
    while (static_cast<int>(kinds.size()) < count) {
        // Shape layers dominate real corpora.
        kinds.push_back(g.r.coin(0.5) ? LayerKind::Shape : kKinds[static_cast<std::size_t>(g.r.below(5))]);
    }
    if (std::all_of(kinds.begin(), kinds.end(), [](LayerKind k) { return k == LayerKind::Null; }))
        kinds.push_back(LayerKind::Shape);
    bool shape_done = false;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        std::optional<CommandKind> must;
        if (kinds[i] == LayerKind::Shape && !shape_done) {
            must = opts.must_have_shape;
            shape_done = true;
        }
        const bool masks = opts.masks && i == 0;
        const bool effects = opts.effects && i == 0;
        a.layers.push_back(b.layer(kinds[i], static_cast<std::int64_t>(i + 1), sp.in_point, sp.out_point, must,
                                   masks || g.r.coin(0.1), effects || g.r.coin(0.1), 0));
    }
    b.link(a.layers);
    return a;
}

std::vector<Animation> fixture_corpus(std::size_t n, std::uint64_t seed, const Space& space) {
    static constexpr std::array<LayerKind, 5> kKinds = {LayerKind::Precomp, LayerKind::Solid, LayerKind::Null,
                                                        LayerKind::Shape, LayerKind::Text};
    std::vector<Animation> out;
    Rng seeds(seed);
    for (std::size_t i = 0; i < n; ++i) {
        FixtureOptions o;
        o.space = space;
        o.must_have_layer = kKinds[i % kKinds.size()];
        o.must_have_shape = kShapeCommands[i % kShapeCommands.size()];
        o.masks = i % 4 == 1;
        o.effects = i % 4 == 2;
        auto a = make_fixture(seeds.next(), o);
        // A share of the corpus carries the normalization parent.
        if (i % 5 == 3) a = normalize_spatial(a);
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Animation> source_corpus(std::size_t n, std::uint64_t seed) {
    static constexpr std::array<std::array<double, 2>, 6> kCanvases = {
        {{1920, 1080}, {512, 512}, {800, 600}, {300, 900}, {1080, 1920}, {400, 400}}};
    Rng r(seed);
    std::vector<Animation> out;
    for (std::size_t i = 0; i < n; ++i) {
        FixtureOptions o;
        const auto& c = kCanvases[i % kCanvases.size()];
        o.space.width = c[0];
        o.space.height = c[1];
        o.space.in_point = static_cast<double>(r.below(20));
        o.space.out_point = o.space.in_point + 20 + static_cast<double>(r.below(130));
        o.space.frame_rate = std::array{24.0, 25.0, 30.0, 60.0}[static_cast<std::size_t>(r.below(4))];
        o.must_have_layer = std::array{LayerKind::Precomp, LayerKind::Solid, LayerKind::Null, LayerKind::Shape,
                                       LayerKind::Text}[i % 5];
        out.push_back(make_fixture(r.next(), o));
    }
    return out;
}

Coverage coverage(const std::vector<Animation>& corpus) {
    Coverage c;
    std::function<void(const std::vector<ShapeNode>&)> shapes = [&](const std::vector<ShapeNode>& list) {
        for (const auto& n : list) {
            c.shapes.insert(shape_command(n.item));
            if (const auto* g = std::get_if<Group>(&n.item)) shapes(g->items);
        }
    };
    auto layers = [&](const std::vector<Layer>& ls) {
        for (const auto& l : ls) {
            c.layers.insert(l.kind);
            c.masks = c.masks || !l.masks.empty();
            c.effects = c.effects || !l.effects.empty();
            if (const auto* t = std::get_if<TextPayload>(&l.payload)) c.text = c.text || (t->data && !t->data->documents.empty());
            if (const auto* s = std::get_if<ShapePayload>(&l.payload)) shapes(s->shapes);
        }
    };
    for (const auto& a : corpus) {
        layers(a.layers);
        for (const auto& asset : a.assets) layers(asset.layers);
    }
    return c;
}

TokenSeq random_token_seq(std::uint64_t seed) {
    Rng r(seed);
    FixtureOptions o;
    o.masks = r.coin(0.3);
    o.effects = r.coin(0.3);
    o.must_have_layer = std::array{LayerKind::Precomp, LayerKind::Solid, LayerKind::Null, LayerKind::Shape,
                                   LayerKind::Text}[static_cast<std::size_t>(r.below(5))];
    o.must_have_shape = kShapeCommands[static_cast<std::size_t>(r.below(kShapeCommands.size()))];
    return encode(make_fixture(r.next(), o), VocabSpec::default_spec(), byte_tokenizer());
}

Animation clean_base() {
    Animation a;
    a.version = "5.12.1";
    a.frame_rate = 30;
    a.in_point = 0;
    a.out_point = 60;
    a.width = 512;
    a.height = 512;
    a.name = "clean";

    auto transform = [](Vec p) {
        Transform t;
        t.anchor = make_static({0, 0});
        t.position = Position{make_static(std::move(p))};
        t.scale = make_static({100, 100});
        t.rotation = make_static({0});
        t.opacity = make_static({100});
        return t;
    };

    Layer parent;
    parent.kind = LayerKind::Null;
    parent.index = 1;
    parent.name = "parent";
    parent.transform = transform({256, 256});
    parent.payload = NullPayload{};
    parent.in_point = 0;
    parent.out_point = 60;
    parent.start_time = 0.0;

    Layer shape;
    shape.kind = LayerKind::Shape;
    shape.index = 2;
    shape.name = "square";
    shape.parent = 1;
    shape.transform = transform({0, 0});
    Rect rect;
    rect.position = make_static({0, 0});
    rect.size = make_static({120, 120});
    rect.roundness = make_static({8});
    Fill fill;
    fill.color = make_static({0.9, 0.2, 0.1});
    fill.opacity = make_static({100});
    ShapeNode rn, fn;
    rn.item = rect;
    fn.item = fill;
    shape.payload = ShapePayload{{rn, fn}};
    shape.in_point = 0;
    shape.out_point = 60;
    shape.start_time = 0.0;

    Layer text;
    text.kind = LayerKind::Text;
    text.index = 3;
    text.name = "caption";
    text.transform = transform({256, 420});
    TextData td;
    TextDocument doc;
    doc.size = 36;
    doc.font = "Sans-Regular";
    doc.text = "Hello";
    doc.justify = 2;
    doc.fill_color = Vec{0, 0, 0};
    td.documents.push_back(TextDocKeyframe{0, doc, {}});
    text.payload = TextPayload{td};
    text.in_point = 0;
    text.out_point = 60;
    text.start_time = 0.0;

    a.layers = {text, shape, parent};
    Font f;
    f.name = "Sans-Regular";
    f.family = "Sans";
    f.style = "Regular";
    f.ascent = 72;
    a.fonts.push_back(f);
    return a;
}

// clean_base(): layers[0] text without parent, layers[1] shape under
// layers[2], a Null at the canvas centre.
const std::vector<LintMutation>& lint_mutations() {
    static const std::vector<LintMutation> m = {
        {DiagCode::SchemaViolation, [](Animation& a) { a.frame_rate = 0; }},
        {DiagCode::EmptyLayers, [](Animation& a) { a.layers.clear(); }},
        {DiagCode::MissingStyle,
         [](Animation& a) { std::get<ShapePayload>(a.layers[1].payload).shapes.pop_back(); }},
        {DiagCode::TemporalVisibility,
         [](Animation& a) {
             a.layers[1].in_point = 60;
             a.layers[1].out_point = 75;
         }},
        {DiagCode::OpacityCollapse, [](Animation& a) { a.layers[1].transform->opacity = make_static({0}); }},
        {DiagCode::ScaleCollapse, [](Animation& a) { a.layers[1].transform->scale = make_static({0, 100}); }},
        {DiagCode::OffCanvas,
         [](Animation& a) { a.layers[0].transform->position = Position{make_static({5000, -4000})}; }},
        {DiagCode::DanglingRef, [](Animation& a) { a.layers[1].parent = 77; }},
        {DiagCode::FontMissing, [](Animation& a) { a.fonts.clear(); }},
    };
    return m;
}

}  // namespace lottie::testing
