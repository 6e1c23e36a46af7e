#include <map>
#include <set>

#include "lottie/json_io.hpp"
#include "walk.hpp"

namespace lottie {

namespace {

using detail::path_index;
using detail::path_join;

struct Checker {
    std::vector<Issue>& out;

    void schema(const std::string& path, std::string msg) {
        out.push_back(Issue{Issue::Kind::Schema, path, std::move(msg)});
    }

    void check_bezier(const std::string& path, const Bezier& b) {
        if (b.in_tangents.size() != b.vertices.size() || b.out_tangents.size() != b.vertices.size())
            schema(path, "vertex and tangent lists differ in length");
    }

    void check_tangent(const std::string& path, const Tangent& t) {
        if (t.x.size() != t.y.size()) schema(path, "easing x/y dimension mismatch");
        for (double x : t.x)
            if (!(x >= 0 && x <= 1)) {
                schema(path, "easing x outside [0,1]");
                break;
            }
    }

    template <class V>
    void prop(const std::string& path, const Animated<V>& a, ParamType, Form) {
        if constexpr (std::is_same_v<V, Bezier>) {
            if (const auto* b = a.static_value()) check_bezier(path_join(path, "k"), *b);
        }
        const auto* frames = a.keyframes();
        if (!frames) return;
        const auto kp = path_join(path, "k");
        for (std::size_t i = 0; i < frames->size(); ++i) {
            const auto& k = (*frames)[i];
            const auto p = path_index(kp, i);
            if (i > 0 && !(k.time > (*frames)[i - 1].time))
                schema(path_join(p, "t"), "keyframe times must be strictly increasing");
            if (k.ease_in) check_tangent(path_join(p, "i"), *k.ease_in);
            if (k.ease_out) check_tangent(path_join(p, "o"), *k.ease_out);
            if constexpr (std::is_same_v<V, Bezier>) {
                if (k.start) check_bezier(path_join(p, "s"), *k.start);
                if (k.end) check_bezier(path_join(p, "e"), *k.end);
            }
        }
    }

    template <class N>
    bool enter(const std::string& path, const N& node) {
        if constexpr (std::is_same_v<N, ShapeNode>) {
            if (const auto* star = std::get_if<Star>(&node.item)) {
                if (star->points && star->points->static_value()) {
                    const Vec& v = *star->points->static_value();
                    if (!v.empty() && v[0] < 3) schema(path_join(path, "pt"), "star needs at least 3 points");
                }
            }
        }
        return true;
    }
};

void check_container(const Animation& a, const std::vector<Layer>& layers, const std::string& path,
                     std::vector<Issue>& out) {
    std::map<std::int64_t, std::size_t> by_index;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        if (!l.index) continue;
        if (!by_index.emplace(*l.index, i).second)
            out.push_back({Issue::Kind::Schema, path_join(path_index(path, i), "ind"),
                           "duplicate layer index " + std::to_string(*l.index)});
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        const auto lp = path_index(path, i);
        if (l.parent && !by_index.count(*l.parent))
            out.push_back({Issue::Kind::Dangling, path_join(lp, "parent"),
                           "parent " + std::to_string(*l.parent) + " does not exist"});
        if (l.matte_parent && !by_index.count(*l.matte_parent))
            out.push_back({Issue::Kind::Dangling, path_join(lp, "tp"),
                           "matte parent " + std::to_string(*l.matte_parent) + " does not exist"});
        if (const auto* pre = std::get_if<PrecompPayload>(&l.payload)) {
            if (!a.find_asset(pre->ref_id))
                out.push_back({Issue::Kind::Dangling, path_join(lp, "refId"),
                               "asset '" + pre->ref_id + "' does not exist"});
        }
        if (l.out_point < l.in_point)
            out.push_back({Issue::Kind::Schema, path_join(lp, "op"), "layer op before ip"});
    }
    // Parent chains must terminate.
    for (std::size_t i = 0; i < layers.size(); ++i) {
        std::set<std::int64_t> seen;
        const Layer* cur = &layers[i];
        while (cur->parent) {
            if (!seen.insert(cur->index.value_or(-1)).second) {
                out.push_back({Issue::Kind::Schema, path_join(path_index(path, i), "parent"),
                               "parent chain forms a cycle"});
                break;
            }
            auto it = by_index.find(*cur->parent);
            if (it == by_index.end()) break;
            cur = &layers[it->second];
        }
    }
}

}  // namespace

std::vector<Issue> check_invariants(const Animation& a) {
    std::vector<Issue> out;
    if (!(a.frame_rate > 0)) out.push_back({Issue::Kind::Schema, "fr", "frame rate must be positive"});
    if (!(a.width > 0)) out.push_back({Issue::Kind::Schema, "w", "width must be positive"});
    if (!(a.height > 0)) out.push_back({Issue::Kind::Schema, "h", "height must be positive"});
    if (!(a.out_point >= a.in_point)) out.push_back({Issue::Kind::Schema, "op", "op before ip"});

    check_container(a, a.layers, "layers", out);
    std::set<std::string> ids;
    for (std::size_t i = 0; i < a.assets.size(); ++i) {
        const auto ap = path_index("assets", i);
        if (!ids.insert(a.assets[i].id).second)
            out.push_back({Issue::Kind::Schema, path_join(ap, "id"), "duplicate asset id"});
        check_container(a, a.assets[i].layers, path_join(ap, "layers"), out);
    }

    Checker checker{out};
    detail::walk(checker, a, "");
    return out;
}

}  // namespace lottie
