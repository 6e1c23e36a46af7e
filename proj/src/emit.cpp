#include <cmath>

#include "lottie/commands.hpp"
#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "walk.hpp"

namespace lottie {

namespace {

using detail::path_index;
using detail::path_join;

enum class Phase { Params, Texts, Children };

// Compare mode keeps content the token grammar cannot carry (expressions,
// raw layers) as extra text so that canonical_equal still sees it.
struct EmitContext {
    CommandSeq& out;
    bool compare = false;
};

template <class T>
void emit_node(EmitContext& ctx, const T& node, const std::string& path);

class Emitter {
  public:
    Emitter(EmitContext& ctx, std::size_t cmd, std::string path)
        : ctx_(ctx), cmd_(cmd), path_(std::move(path)) {}

    Phase phase = Phase::Params;

    void num(std::string_view key, double f, ParamType t) { param(t, f, key); }
    void num(std::string_view key, const std::optional<double>& f, ParamType t) { param(t, f, key); }
    void integer(std::string_view key, const std::optional<std::int64_t>& f, ParamType t) {
        param(t, f ? ParamValue(static_cast<double>(*f)) : PAD_VAL, key);
    }
    void flag(std::string_view key, const std::optional<bool>& f, FlagStyle) {
        param(ParamType::BinaryFlag, f ? ParamValue(*f ? 1.0 : 0.0) : PAD_VAL, key);
    }
    void text(std::string_view key, const std::string& f) {
        if (phase == Phase::Texts) cur().texts.push_back({key, f});
    }
    void text(std::string_view key, const std::optional<std::string>& f) {
        if (phase == Phase::Texts) cur().texts.push_back({key, f});
    }
    void code(std::string_view key, const std::optional<std::string>& f, const CodeTable& table) {
        if (phase == Phase::Params) {
            if (!f) {
                param(ParamType::SmallEnum, PAD_VAL, key, table.entries);
                return;
            }
            auto idx = code_index(*f, table);
            if (!idx) unsupported(path_join(path_, key), "code '" + *f + "' is not in the table");
            param(ParamType::SmallEnum, static_cast<double>(*idx), key, table.entries);
        } else if (phase == Phase::Texts && f && table.allow_custom && code_index(*f, table) == 0u) {
            cur().texts.push_back({key, *f});
        }
    }
    template <class V>
    void prop(std::string_view key, const std::optional<Animated<V>>& f, ParamType t, Form) {
        animated(path_join(path_, key), key, f ? &*f : nullptr, t);
    }
    void position(std::string_view key, const std::optional<Position>& f) {
        const auto p = path_join(path_, key);
        if (!f) {
            param(ParamType::BinaryFlag, PAD_VAL, key);
            return;
        }
        if (const auto* split = std::get_if<SplitPosition>(&*f)) {
            param(ParamType::BinaryFlag, 1.0, key);
            animated(path_join(p, "x"), key, &split->x, ParamType::SpatialCoord);
            animated(path_join(p, "y"), key, &split->y, ParamType::SpatialCoord);
            animated(path_join(p, "z"), key, split->z ? &*split->z : nullptr, ParamType::SpatialCoord);
        } else {
            param(ParamType::BinaryFlag, 0.0, key);
            animated(p, key, &std::get<AnimatedValue>(*f), ParamType::SpatialCoord);
        }
    }
    void numbers(std::string_view key, const std::optional<Vec>& f, ParamType t) {
        if (phase != Phase::Params) return;
        if (!f) {
            param(ParamType::Count, PAD_VAL, key);
            return;
        }
        vec_block(*f, t, key);
    }
    template <class T>
    void object(std::string_view key, const std::optional<T>& f) {
        if (phase == Phase::Children && f) emit_node(ctx_, *f, path_join(path_, key));
    }
    template <class T>
    void list(std::string_view key, const std::vector<T>& f, const ListOpts&) {
        if (phase != Phase::Children) return;
        const auto p = path_join(path_, key);
        for (std::size_t i = 0; i < f.size(); ++i) emit_node(ctx_, f[i], path_index(p, i));
    }
    void shapes(std::string_view key, const std::vector<ShapeNode>& f, bool terminated) {
        if (phase != Phase::Children) return;
        const auto p = path_join(path_, key);
        for (std::size_t i = 0; i < f.size(); ++i) emit_node(ctx_, f[i], path_index(p, i));
        if (terminated) ctx_.out.push_back(Command{CommandKind::GroupEnd, {}, {}});
    }
    void opaque(std::string_view, const std::optional<Json>&) {}

    [[noreturn]] void unsupported(const std::string& path, const std::string& msg) const {
        throw Error(ErrorCode::UnsupportedContent, path, msg);
    }

  private:
    Command& cur() { return ctx_.out[cmd_]; }

    void param(ParamType t, ParamValue v, std::string_view key,
               std::span<const std::string_view> codes = {}) {
        if (phase == Phase::Params) cur().params.push_back(Param{t, v, key, codes});
    }

    static std::optional<std::size_t> code_index(const std::string& s, const CodeTable& table) {
        for (std::size_t i = table.allow_custom ? 1 : 0; i < table.entries.size(); ++i)
            if (table.entries[i] == s) return i;
        if (table.allow_custom) return 0;
        return std::nullopt;
    }

    void vec_block(const Vec& v, ParamType t, std::string_view key) {
        param(ParamType::Count, static_cast<double>(v.size()), key);
        for (double x : v) param(t, x, key);
    }

    void bezier_block(const Bezier& b, std::string_view key, const std::string& path) {
        const auto n = b.vertices.size();
        if (b.in_tangents.size() != n || b.out_tangents.size() != n)
            unsupported(path, "vertex and tangent lists differ in length");
        param(ParamType::Count, static_cast<double>(n), key);
        param(ParamType::BinaryFlag, b.closed ? ParamValue(*b.closed ? 1.0 : 0.0) : PAD_VAL, key);
        for (std::size_t i = 0; i < n; ++i) {
            for (const Point* p : {&b.vertices[i], &b.in_tangents[i], &b.out_tangents[i]}) {
                param(ParamType::SpatialCoord, p->x, key);
                param(ParamType::SpatialCoord, p->y, key);
            }
        }
    }

    template <class V>
    void value_block(const std::optional<V>& v, ParamType t, std::string_view key,
                     const std::string& path) {
        if (!v) {
            param(ParamType::Count, PAD_VAL, key);
            return;
        }
        if constexpr (std::is_same_v<V, Bezier>) bezier_block(*v, key, path);
        else vec_block(*v, t, key);
    }

    void tangent_block(const std::optional<Tangent>& tg, std::string_view key, const std::string& path) {
        if (!tg) {
            param(ParamType::Count, PAD_VAL, key);
            return;
        }
        if (tg->x.size() != tg->y.size()) {
            if (!ctx_.compare) unsupported(path, "easing x/y dimension mismatch");
            param(ParamType::Count, static_cast<double>(tg->y.size()), key);
        }
        param(ParamType::Count, static_cast<double>(tg->x.size()), key);
        for (double x : tg->x) param(ParamType::EasingTangent, x, key);
        for (double y : tg->y) param(ParamType::EasingTangent, y, key);
    }

    template <class V>
    void animated(const std::string& path, std::string_view key, const Animated<V>* a, ParamType t) {
        if (phase == Phase::Params) {
            if (!a) {
                param(ParamType::BinaryFlag, PAD_VAL, key);
                return;
            }
            if (a->expression && !ctx_.compare) unsupported(path, "expressions cannot be tokenized");
            if (const auto* frames = a->keyframes()) {
                param(ParamType::BinaryFlag, 1.0, key);
                param(ParamType::Count, static_cast<double>(frames->size()), key);
            } else {
                param(ParamType::BinaryFlag, 0.0, key);
                value_block(std::optional<V>(*a->static_value()), t, key, path);
            }
        } else if (phase == Phase::Texts) {
            if (a && a->expression && ctx_.compare) cur().texts.push_back({"x", *a->expression});
        } else if (a) {
            if (const auto* frames = a->keyframes()) {
                for (std::size_t i = 0; i < frames->size(); ++i)
                    keyframe((*frames)[i], t, path_index(path_join(path, "k"), i));
            }
        }
    }

    template <class V>
    void keyframe(const Keyframe<V>& k, ParamType t, const std::string& path) {
        ctx_.out.push_back(Command{CommandKind::Keyframe, {}, {}});
        Emitter sub(ctx_, ctx_.out.size() - 1, path);
        sub.param(ParamType::Temporal, k.time, "t");
        sub.param(ParamType::BinaryFlag, k.hold ? 1.0 : 0.0, "h");
        sub.value_block(k.start, t, "s", path_join(path, "s"));
        sub.value_block(k.end, t, "e", path_join(path, "e"));
        sub.tangent_block(k.ease_in, "i", path_join(path, "i"));
        sub.tangent_block(k.ease_out, "o", path_join(path, "o"));
        sub.value_block(k.spatial_in, ParamType::SpatialCoord, "ti", path_join(path, "ti"));
        sub.value_block(k.spatial_out, ParamType::SpatialCoord, "to", path_join(path, "to"));
    }

    EmitContext& ctx_;
    std::size_t cmd_;
    std::string path_;
};

template <class T>
CommandKind command_for(EmitContext& ctx, const T& node, const std::string& path) {
    if constexpr (std::is_same_v<T, Layer>) {
        if (auto k = layer_command(node.kind)) return *k;
        if (!ctx.compare)
            throw Error(ErrorCode::UnsupportedContent, path,
                        std::string(to_string(node.kind)) + " layers must be removed by clean");
        return CommandKind::LayerNull;
    } else if constexpr (std::is_same_v<T, ShapeNode>) {
        return shape_command(node.item);
    } else {
        return T::kCommand;
    }
}

template <class T>
void emit_node(EmitContext& ctx, const T& node, const std::string& path) {
    const CommandKind kind = command_for(ctx, node, path);
    if constexpr (std::is_same_v<T, Animation>) {
        if (!node.raw_assets.empty() && !ctx.compare)
            throw Error(ErrorCode::UnsupportedContent, "assets",
                        "non-precomp assets must be removed by clean");
    }
    ctx.out.push_back(Command{kind, {}, {}});
    const std::size_t idx = ctx.out.size() - 1;
    Emitter e(ctx, idx, path);
    for (Phase ph : {Phase::Params, Phase::Texts, Phase::Children}) {
        e.phase = ph;
        if (ph == Phase::Texts && ctx.compare) {
            if constexpr (std::is_same_v<T, Layer>) {
                if (!layer_command(node.kind))
                    ctx.out[idx].texts.push_back({"raw", std::string(to_string(node.kind))});
            }
            if constexpr (std::is_same_v<T, Animation>) {
                for (const auto& raw : node.raw_assets)
                    ctx.out[idx].texts.push_back({"asset", dump_canonical(raw)});
            }
        }
        T::reflect(node, e);
    }
    if constexpr (std::is_same_v<T, Layer>) ctx.out.push_back(Command{CommandKind::End, {}, {}});
}

CommandSeq emit(const Animation& a, bool compare) {
    CommandSeq out;
    EmitContext ctx{out, compare};
    emit_node(ctx, a, "");
    return out;
}

bool values_close(const Param& a, const Param& b, double tol) {
    if (a.type != b.type) return false;
    if (a.value.has_value() != b.value.has_value()) return false;
    if (!a.value) return true;
    if (is_discrete(a.type)) return *a.value == *b.value;
    return std::fabs(*a.value - *b.value) <= tol + 1e-9 * std::max(1.0, std::fabs(*a.value));
}

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
}

}  // namespace

CommandSeq to_command_sequence(const Animation& a) { return emit(a, false); }

bool canonical_equal(const Animation& a, const Animation& b, double tol) {
    const CommandSeq ca = emit(a, true);
    const CommandSeq cb = emit(b, true);
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const auto& x = ca[i];
        const auto& y = cb[i];
        if (x.kind != y.kind || x.params.size() != y.params.size() || x.texts.size() != y.texts.size())
            return false;
        for (std::size_t j = 0; j < x.params.size(); ++j)
            if (!values_close(x.params[j], y.params[j], tol)) return false;
        for (std::size_t j = 0; j < x.texts.size(); ++j)
            if (x.texts[j].value != y.texts[j].value) return false;
    }
    return true;
}

std::string dump_commands(const CommandSeq& c) {
    std::string out;
    for (const auto& cmd : c) {
        if (cmd.kind == CommandKind::Meta) {
            out += "animation";
        } else {
            for (char ch : to_string(cmd.kind))
                out += static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
        }
        for (const auto& p : cmd.params) {
            if (!p.value) continue;
            out += ' ';
            out += p.key;
            out += '=';
            const auto idx = static_cast<std::size_t>(*p.value);
            if (!p.codes.empty() && idx < p.codes.size() && !p.codes[idx].empty())
                append_escaped(out, std::string(p.codes[idx]));
            else
                out += format_number(*p.value);
        }
        for (const auto& t : cmd.texts) {
            if (!t.value) continue;
            out += ' ';
            out += t.key;
            out += '=';
            append_escaped(out, *t.value);
        }
        out += '\n';
    }
    return out;
}

void collect_stats(const CommandSeq& c, CorpusStats& stats) {
    for (const auto& cmd : c)
        for (const auto& p : cmd.params)
            if (p.value) stats.add(p.type, *p.value);
}

}  // namespace lottie
