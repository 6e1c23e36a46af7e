#pragma once

// Recursive traversal over the reflected model. A callback object opts into
// the hooks it needs:
//
//   cb.num(path, field, ParamType)        double or optional<double>
//   cb.integer(path, field, ParamType)
//   cb.numbers(path, optional<Vec>, ParamType)
//   cb.prop(path, Animated<V>&, ParamType, Form)
//   cb.enter(path, node) -> bool          false skips the subtree
//   cb.leave(path, node)
//
// Constness follows the node passed to `walk`.

#include <concepts>
#include <string>

#include "lottie/model.hpp"

namespace lottie::detail {

inline std::string path_join(const std::string& path, std::string_view key) {
    if (path.empty()) return std::string(key);
    std::string out = path;
    out += '.';
    out += key;
    return out;
}

inline std::string path_index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

template <class CB, class Node>
void walk(CB& cb, Node& node, const std::string& path);

template <class CB>
class Walker {
  public:
    Walker(CB& cb, std::string path) : cb_(cb), path_(std::move(path)) {}

    template <class F>
    void num(std::string_view key, F& f, ParamType t) {
        if constexpr (requires { cb_.num(path_, f, t); }) cb_.num(path_join(path_, key), f, t);
    }
    template <class F>
    void integer(std::string_view key, F& f, ParamType t) {
        if constexpr (requires { cb_.integer(path_, f, t); })
            cb_.integer(path_join(path_, key), f, t);
    }
    template <class F>
    void flag(std::string_view, F&, FlagStyle) {}
    template <class F>
    void text(std::string_view, F&) {}
    template <class F>
    void code(std::string_view, F&, const CodeTable&) {}
    template <class F>
    void opaque(std::string_view, F&) {}
    template <class F>
    void numbers(std::string_view key, F& f, ParamType t) {
        if constexpr (requires { cb_.numbers(path_, f, t); })
            cb_.numbers(path_join(path_, key), f, t);
    }
    template <class F>
    void prop(std::string_view key, F& f, ParamType t, Form form) {
        if (f) visit_prop(path_join(path_, key), *f, t, form);
    }
    template <class F>
    void position(std::string_view key, F& f) {
        if (!f) return;
        const auto p = path_join(path_, key);
        std::visit(
            [&](auto& pos) {
                using P = std::decay_t<decltype(pos)>;
                if constexpr (std::is_same_v<P, AnimatedValue>) {
                    visit_prop(p, pos, ParamType::SpatialCoord, Form::Vector);
                } else {
                    visit_prop(path_join(p, "x"), pos.x, ParamType::SpatialCoord, Form::Scalar);
                    visit_prop(path_join(p, "y"), pos.y, ParamType::SpatialCoord, Form::Scalar);
                    if (pos.z)
                        visit_prop(path_join(p, "z"), *pos.z, ParamType::SpatialCoord, Form::Scalar);
                }
            },
            *f);
    }
    template <class F>
    void object(std::string_view key, F& f) {
        if (f) walk(cb_, *f, path_join(path_, key));
    }
    template <class F>
    void list(std::string_view key, F& f, const ListOpts&) {
        const auto p = path_join(path_, key);
        for (std::size_t i = 0; i < f.size(); ++i) walk(cb_, f[i], path_index(p, i));
    }
    template <class F>
    void shapes(std::string_view key, F& f, bool) {
        const auto p = path_join(path_, key);
        for (std::size_t i = 0; i < f.size(); ++i) walk(cb_, f[i], path_index(p, i));
    }

  private:
    template <class A>
    void visit_prop(const std::string& p, A& a, ParamType t, Form form) {
        if constexpr (requires { cb_.prop(p, a, t, form); }) cb_.prop(p, a, t, form);
    }

    CB& cb_;
    std::string path_;
};

template <class CB, class Node>
void walk(CB& cb, Node& node, const std::string& path) {
    if constexpr (requires { { cb.enter(path, node) } -> std::convertible_to<bool>; }) {
        if (!cb.enter(path, node)) return;
    }
    Walker<CB> w(cb, path);
    std::remove_const_t<Node>::reflect(node, w);
    if constexpr (requires { cb.leave(path, node); }) cb.leave(path, node);
}

}  // namespace lottie::detail
