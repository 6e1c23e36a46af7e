// Minimal SVG subset importer: path (M/L/C/Z), rect, circle, ellipse, g,
// transform, solid fill and stroke. Anything else rejects the file.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "lottie/error.hpp"
#include "lottie/motion.hpp"

namespace lottie {

namespace {

[[noreturn]] void unsupported(const std::string& what) {
    throw Error(ErrorCode::UnsupportedSvgFeature, what, "unsupported SVG feature '" + what + "'");
}

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorCode::MalformedJson, "svg", msg); }

struct Element {
    std::string name;
    std::map<std::string, std::string> attrs;
    std::vector<std::unique_ptr<Element>> children;

    const std::string* attr(const std::string& k) const {
        auto it = attrs.find(k);
        return it == attrs.end() ? nullptr : &it->second;
    }
};

class XmlParser {
  public:
    explicit XmlParser(std::string_view s) : s_(s) {}

    std::unique_ptr<Element> document() {
        skip_misc();
        auto root = element();
        skip_misc();
        if (i_ != s_.size()) malformed("content after the root element");
        return root;
    }

  private:
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool starts(std::string_view p) const { return s_.substr(i_, p.size()) == p; }
    void skip_until(std::string_view end) {
        auto p = s_.find(end, i_);
        if (p == std::string_view::npos) malformed("unterminated markup");
        i_ = p + end.size();
    }
    // Prolog, comments, doctype and processing instructions.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts("<?")) skip_until("?>");
            else if (starts("<!--")) skip_until("-->");
            else if (starts("<!")) skip_until(">");
            else return;
        }
    }
    std::string name() {
        const auto b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == ':' ||
                                  s_[i_] == '-' || s_[i_] == '_' || s_[i_] == '.'))
            ++i_;
        if (b == i_) malformed("expected a name");
        return std::string(s_.substr(b, i_ - b));
    }
    static std::string unescape(std::string_view v) {
        static const std::map<std::string_view, char> kEnt = {
            {"amp", '&'}, {"lt", '<'}, {"gt", '>'}, {"quot", '"'}, {"apos", '\''}};
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != '&') {
                out += v[i];
                continue;
            }
            auto semi = v.find(';', i);
            auto it = semi == std::string_view::npos ? kEnt.end() : kEnt.find(v.substr(i + 1, semi - i - 1));
            if (it == kEnt.end()) malformed("unknown entity");
            out += it->second;
            i = semi;
        }
        return out;
    }
    std::unique_ptr<Element> element() {
        if (!starts("<")) malformed("expected an element");
        ++i_;
        auto e = std::make_unique<Element>();
        e->name = name();
        for (;;) {
            skip_ws();
            if (starts("/>")) {
                i_ += 2;
                return e;
            }
            if (starts(">")) {
                ++i_;
                break;
            }
            auto k = name();
            skip_ws();
            if (!starts("=")) malformed("expected '=' after attribute " + k);
            ++i_;
            skip_ws();
            if (i_ >= s_.size() || (s_[i_] != '"' && s_[i_] != '\'')) malformed("expected a quoted value");
            const char q = s_[i_++];
            auto end = s_.find(q, i_);
            if (end == std::string_view::npos) malformed("unterminated attribute value");
            e->attrs[k] = unescape(s_.substr(i_, end - i_));
            i_ = end + 1;
        }
        for (;;) {
            auto lt = s_.find('<', i_);
            if (lt == std::string_view::npos) malformed("unterminated element " + e->name);
            i_ = lt;  // character data is ignored
            if (starts("<!--")) {
                skip_until("-->");
            } else if (starts("<![CDATA[")) {
                skip_until("]]>");
            } else if (starts("</")) {
                i_ += 2;
                if (name() != e->name) malformed("mismatched closing tag for " + e->name);
                skip_ws();
                if (!starts(">")) malformed("expected '>'");
                ++i_;
                return e;
            } else {
                e->children.push_back(element());
            }
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

// --- attribute values ----------------------------------------------------

class NumberScanner {
  public:
    explicit NumberScanner(std::string_view s) : s_(s) {}
    void skip_sep() {
        while (i_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == ',')) ++i_;
    }
    bool done() {
        skip_sep();
        return i_ >= s_.size();
    }
    char peek() {
        skip_sep();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    char take() { return s_[i_++]; }
    bool at_number() {
        const char c = peek();
        return c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
    }
    double number() {
        skip_sep();
        if (i_ < s_.size() && s_[i_] == '+') ++i_;
        double x = 0;
        auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), x);
        if (ec != std::errc()) malformed("bad number in '" + std::string(s_) + "'");
        i_ = static_cast<std::size_t>(p - s_.data());
        return x;
    }
    std::string_view rest() const { return s_.substr(i_); }
    void advance(std::size_t n) { i_ += n; }

  private:
    std::string_view s_;
    std::size_t i_ = 0;
};

double length(const std::string& v) {
    std::string_view s = v;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() > 2 && s.substr(s.size() - 2) == "px") s.remove_suffix(2);
    if (!s.empty() && (s.back() == '%' || std::isalpha(static_cast<unsigned char>(s.back()))))
        unsupported("unit in '" + v + "'");
    NumberScanner sc(s);
    const double x = sc.number();
    if (!sc.done()) malformed("bad length '" + v + "'");
    return x;
}

using Rgb = std::array<double, 3>;

std::optional<Rgb> color(const std::string& raw) {
    std::string v;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) v += static_cast<char>(std::tolower(c));
    if (v == "none" || v == "transparent") return std::nullopt;
    if (v.rfind("url(", 0) == 0) unsupported("gradient");
    auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        malformed("bad hex color");
    };
    if (!v.empty() && v[0] == '#') {
        if (v.size() == 4) return Rgb{hex(v[1]) * 17 / 255.0, hex(v[2]) * 17 / 255.0, hex(v[3]) * 17 / 255.0};
        if (v.size() == 7)
            return Rgb{(hex(v[1]) * 16 + hex(v[2])) / 255.0, (hex(v[3]) * 16 + hex(v[4])) / 255.0,
                       (hex(v[5]) * 16 + hex(v[6])) / 255.0};
        malformed("bad hex color '" + raw + "'");
    }
    if (v.rfind("rgb(", 0) == 0 && v.back() == ')') {
        NumberScanner sc(std::string_view(v).substr(4, v.size() - 5));
        Rgb c{};
        for (auto& x : c) x = std::clamp(sc.number(), 0.0, 255.0) / 255.0;
        if (!sc.done()) unsupported("color '" + raw + "'");
        return c;
    }
    static const std::map<std::string, Rgb> kNamed = {
        {"black", {0, 0, 0}}, {"white", {1, 1, 1}},   {"red", {1, 0, 0}},     {"lime", {0, 1, 0}},
        {"blue", {0, 0, 1}},  {"yellow", {1, 1, 0}},  {"cyan", {0, 1, 1}},    {"magenta", {1, 0, 1}},
        {"gray", {128 / 255.0, 128 / 255.0, 128 / 255.0}}, {"grey", {128 / 255.0, 128 / 255.0, 128 / 255.0}},
        {"green", {0, 128 / 255.0, 0}}, {"orange", {1, 165 / 255.0, 0}},
    };
    auto it = kNamed.find(v);
    if (it == kNamed.end()) unsupported("color '" + raw + "'");
    return it->second;
}

// Affine matrix [a c e; b d f].
struct Matrix {
    double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;
    Matrix operator*(const Matrix& m) const {
        return {a * m.a + c * m.b, b * m.a + d * m.b, a * m.c + c * m.d,
                b * m.c + d * m.d, a * m.e + c * m.f + e, b * m.e + d * m.f + f};
    }
    bool identity() const { return a == 1 && b == 0 && c == 0 && d == 1 && e == 0 && f == 0; }
};

Matrix parse_transform(const std::string& v) {
    Matrix m;
    NumberScanner sc(v);
    while (!sc.done()) {
        std::string fn;
        while (std::isalpha(static_cast<unsigned char>(sc.peek()))) fn += sc.take();
        if (sc.peek() != '(') malformed("bad transform '" + v + "'");
        sc.take();
        std::vector<double> args;
        while (sc.peek() != ')') {
            if (sc.done()) malformed("unterminated transform");
            args.push_back(sc.number());
        }
        sc.take();
        Matrix t;
        auto need = [&](std::size_t lo, std::size_t hi) {
            if (args.size() < lo || args.size() > hi) malformed("bad argument count for " + fn);
        };
        if (fn == "translate") {
            need(1, 2);
            t.e = args[0];
            t.f = args.size() > 1 ? args[1] : 0;
        } else if (fn == "scale") {
            need(1, 2);
            t.a = args[0];
            t.d = args.size() > 1 ? args[1] : args[0];
        } else if (fn == "rotate") {
            if (args.size() != 1 && args.size() != 3) malformed("bad argument count for rotate");
            const double th = args[0] * std::numbers::pi / 180;
            Matrix r{std::cos(th), std::sin(th), -std::sin(th), std::cos(th), 0, 0};
            if (args.size() == 3) {
                t = Matrix{1, 0, 0, 1, args[1], args[2]} * r * Matrix{1, 0, 0, 1, -args[1], -args[2]};
            } else {
                t = r;
            }
        } else if (fn == "matrix") {
            need(6, 6);
            t = {args[0], args[1], args[2], args[3], args[4], args[5]};
        } else {
            unsupported("transform " + fn);
        }
        m = m * t;
    }
    return m;
}

std::optional<Transform> to_group_transform(const Matrix& m) {
    Transform t;
    t.anchor = make_static({0, 0});
    t.position = Position{make_static({0, 0})};
    t.scale = make_static({100, 100});
    t.rotation = make_static({0});
    t.opacity = make_static({100});
    if (m.identity()) return t;
    const double sx = std::hypot(m.a, m.b);
    if (sx == 0) unsupported("degenerate transform");
    const double th = std::atan2(m.b, m.a);
    const double sy = (m.a * m.d - m.b * m.c) / sx;
    const double tol = 1e-9 * std::max({1.0, std::fabs(m.c), std::fabs(m.d)});
    if (std::fabs(m.c + sy * std::sin(th)) > tol || std::fabs(m.d - sy * std::cos(th)) > tol) unsupported("skew");
    auto clean = [](double x) { return std::fabs(x - std::round(x)) < 1e-9 ? std::round(x) + 0.0 : x; };
    t.position = Position{make_static({clean(m.e), clean(m.f)})};
    t.scale = make_static({clean(sx * 100), clean(sy * 100)});
    t.rotation = make_static({clean(th * 180 / std::numbers::pi)});
    return t;
}

// --- styles --------------------------------------------------------------

struct Style {
    std::optional<Rgb> fill = Rgb{0, 0, 0};
    std::optional<Rgb> stroke;
    double stroke_width = 1;
    double fill_opacity = 1;
    double stroke_opacity = 1;
    double opacity = 1;  // not inherited; folded into this element's paints
    bool evenodd = false;
};

std::map<std::string, std::string> presentation(const Element& e) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : e.attrs) out[k] = v;
    if (const auto* style = e.attr("style")) {
        const std::string& s = *style;
        auto trim = [](std::string_view x) {
            while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.remove_prefix(1);
            while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.remove_suffix(1);
            return std::string(x);
        };
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t semi = s.find(';', pos);
            if (semi == std::string::npos) semi = s.size();
            const std::string_view decl(s.data() + pos, semi - pos);
            const auto colon = decl.find(':');
            if (colon != std::string_view::npos) out[trim(decl.substr(0, colon))] = trim(decl.substr(colon + 1));
            pos = semi + 1;
        }
    }
    return out;
}

Style resolve_style(const Element& e, Style inherited) {
    inherited.opacity = 1;
    const auto p = presentation(e);
    for (const auto& [k, v] : p) {
        if (k == "fill") inherited.fill = color(v);
        else if (k == "stroke") inherited.stroke = color(v);
        else if (k == "stroke-width") inherited.stroke_width = length(v);
        else if (k == "fill-opacity") inherited.fill_opacity = length(v);
        else if (k == "stroke-opacity") inherited.stroke_opacity = length(v);
        else if (k == "opacity") inherited.opacity = length(v);
        else if (k == "fill-rule") inherited.evenodd = v == "evenodd";
        else if (k == "filter") unsupported("filter");
        else if (k == "mask") unsupported("mask");
        else if (k == "clip-path") unsupported("clip-path");
    }
    return inherited;
}

ShapeNode node(ShapeItem item) {
    ShapeNode n;
    n.item = std::move(item);
    return n;
}

Vec rgb_vec(const Rgb& c) { return {c[0], c[1], c[2]}; }

void append_paints(std::vector<ShapeNode>& items, const Style& s) {
    if (s.stroke) {
        Stroke st;
        st.color = make_static(rgb_vec(*s.stroke));
        st.opacity = make_static({100 * s.stroke_opacity * s.opacity});
        st.width = make_static({s.stroke_width});
        st.line_cap = 1;
        st.line_join = 1;
        st.miter_limit = 4;
        items.push_back(node(std::move(st)));
    }
    if (s.fill) {
        Fill f;
        f.color = make_static(rgb_vec(*s.fill));
        f.opacity = make_static({100 * s.fill_opacity * s.opacity});
        f.fill_rule = s.evenodd ? 2 : 1;
        items.push_back(node(std::move(f)));
    }
}

// --- path data -----------------------------------------------------------

std::vector<Bezier> parse_path(const std::string& d) {
    std::vector<Bezier> out;
    NumberScanner sc(d);
    Point cur, start;
    Bezier* open = nullptr;
    char cmd = 0;
    auto vertex = [&](Point p, Point in) {
        open->vertices.push_back(p);
        open->in_tangents.push_back(in);
        open->out_tangents.push_back({0, 0});
    };
    while (!sc.done()) {
        if (!sc.at_number()) {
            cmd = sc.take();
            if (std::string_view("MmLlCcZz").find(cmd) == std::string_view::npos)
                unsupported(std::string("path command ") + cmd);
        } else if (cmd == 0 || cmd == 'Z' || cmd == 'z') {
            malformed("path data must start with a command");
        }
        const bool rel = std::islower(static_cast<unsigned char>(cmd));
        const Point base = rel ? cur : Point{0, 0};
        switch (std::toupper(static_cast<unsigned char>(cmd))) {
            case 'M': {
                Point p{base.x + sc.number(), base.y + sc.number()};
                out.push_back(Bezier{false, {}, {}, {}});
                open = &out.back();
                vertex(p, {0, 0});
                cur = start = p;
                cmd = rel ? 'l' : 'L';  // implicit lineto for following pairs
                break;
            }
            case 'L': {
                if (!open) malformed("lineto before moveto");
                Point p{base.x + sc.number(), base.y + sc.number()};
                vertex(p, {0, 0});
                cur = p;
                break;
            }
            case 'C': {
                if (!open) malformed("curveto before moveto");
                Point c1{base.x + sc.number(), base.y + sc.number()};
                Point c2{base.x + sc.number(), base.y + sc.number()};
                Point p{base.x + sc.number(), base.y + sc.number()};
                open->out_tangents.back() = {c1.x - cur.x, c1.y - cur.y};
                vertex(p, {c2.x - p.x, c2.y - p.y});
                cur = p;
                break;
            }
            case 'Z': {
                if (!open) malformed("closepath before moveto");
                open->closed = true;
                // A final vertex on top of the first one folds into it.
                auto& v = open->vertices;
                if (v.size() > 1 && v.back() == v.front()) {
                    open->in_tangents.front() = open->in_tangents.back();
                    v.pop_back();
                    open->in_tangents.pop_back();
                    open->out_tangents.pop_back();
                }
                cur = start;
                open = nullptr;
                break;
            }
        }
    }
    return out;
}

// --- element mapping ------------------------------------------------------

std::optional<ShapeNode> convert(const Element& e, const Style& inherited);

std::optional<ShapeNode> wrap(std::vector<ShapeNode> items, const Element& e, const std::string& fallback_name) {
    if (items.empty()) return std::nullopt;
    Matrix m;
    if (const auto* t = e.attr("transform")) m = parse_transform(*t);
    items.push_back(node(GroupTransform{*to_group_transform(m)}));
    ShapeNode g = node(Group{std::move(items)});
    const auto* id = e.attr("id");
    g.name = id ? *id : fallback_name;
    return g;
}

double attr_len(const Element& e, const std::string& k, double fallback = 0) {
    const auto* v = e.attr(k);
    return v ? length(*v) : fallback;
}

std::optional<ShapeNode> convert(const Element& e, const Style& inherited) {
    static const std::map<std::string, std::string> kRejected = {
        {"linearGradient", "gradient"}, {"radialGradient", "gradient"}, {"pattern", "pattern"},
        {"text", "text"},   {"image", "image"},   {"use", "use"},         {"line", "line"},
        {"polyline", "polyline"}, {"polygon", "polygon"}, {"clipPath", "clip-path"}, {"mask", "mask"},
        {"filter", "filter"}, {"style", "style sheet"}, {"symbol", "symbol"}, {"switch", "switch"},
        {"foreignObject", "foreignObject"}, {"animate", "animation"}, {"animateTransform", "animation"},
    };
    if (auto it = kRejected.find(e.name); it != kRejected.end()) unsupported(it->second);
    if (e.name == "title" || e.name == "desc" || e.name == "metadata") return std::nullopt;
    if (e.name == "defs") {
        for (const auto& c : e.children) convert(*c, inherited);  // rejects gradients inside
        return std::nullopt;
    }

    const Style s = resolve_style(e, inherited);
    std::vector<ShapeNode> items;
    if (e.name == "g") {
        // Later SVG siblings paint on top; Lottie lists the top item first.
        for (auto it = e.children.rbegin(); it != e.children.rend(); ++it)
            if (auto n = convert(**it, s)) items.push_back(std::move(*n));
        return wrap(std::move(items), e, "group");
    }
    if (!e.children.empty() && e.name != "path" && e.name != "rect" && e.name != "circle" && e.name != "ellipse")
        unsupported(e.name);
    if (!s.fill && !s.stroke) return std::nullopt;  // paints nothing

    if (e.name == "rect") {
        if (e.attr("ry") && (!e.attr("rx") || attr_len(e, "rx") != attr_len(e, "ry"))) unsupported("elliptical rect corners");
        const double x = attr_len(e, "x"), y = attr_len(e, "y");
        const double w = attr_len(e, "width"), h = attr_len(e, "height");
        Rect r;
        r.direction = 1;
        r.position = make_static({x + w / 2, y + h / 2});
        r.size = make_static({w, h});
        r.roundness = make_static({attr_len(e, "rx", attr_len(e, "ry"))});
        items.push_back(node(std::move(r)));
    } else if (e.name == "circle" || e.name == "ellipse") {
        const bool circle = e.name == "circle";
        const double rx = circle ? attr_len(e, "r") : attr_len(e, "rx");
        const double ry = circle ? rx : attr_len(e, "ry");
        Ellipse el;
        el.direction = 1;
        el.position = make_static({attr_len(e, "cx"), attr_len(e, "cy")});
        el.size = make_static({2 * rx, 2 * ry});
        items.push_back(node(std::move(el)));
    } else if (e.name == "path") {
        const auto* d = e.attr("d");
        if (!d) return std::nullopt;
        for (auto& b : parse_path(*d)) {
            Path p;
            p.direction = 1;
            p.shape = AnimatedPath{std::move(b), {}, {}};
            items.push_back(node(std::move(p)));
        }
        if (items.empty()) return std::nullopt;
    } else {
        unsupported(e.name);
    }
    append_paints(items, s);
    return wrap(std::move(items), e, e.name);
}

}  // namespace

Animation svg_to_static_lottie(std::string_view svg_text) {
    auto root = XmlParser(svg_text).document();
    if (root->name != "svg") malformed("root element is not <svg>");

    double minx = 0, miny = 0, w = 512, h = 512;
    if (const auto* vb = root->attr("viewBox")) {
        NumberScanner sc(*vb);
        minx = sc.number();
        miny = sc.number();
        w = sc.number();
        h = sc.number();
    } else {
        w = attr_len(*root, "width", 512);
        h = attr_len(*root, "height", 512);
    }
    if (!(w > 0 && h > 0)) malformed("SVG canvas must be positive");

    Animation a;
    a.version = "5.12.1";
    a.frame_rate = 30;
    a.in_point = 0;
    a.out_point = 60;
    a.width = w;
    a.height = h;

    const Style base = resolve_style(*root, Style{});
    std::vector<ShapeNode> nodes;
    for (auto it = root->children.rbegin(); it != root->children.rend(); ++it)
        if (auto n = convert(**it, base)) nodes.push_back(std::move(*n));

    std::int64_t ind = 1;
    for (auto& n : nodes) {
        Layer l;
        l.kind = LayerKind::Shape;
        l.index = ind++;
        l.name = n.name;
        Transform t;
        t.anchor = make_static({0, 0});
        t.position = Position{make_static({-minx, -miny})};
        t.scale = make_static({100, 100});
        t.rotation = make_static({0});
        t.opacity = make_static({100});
        l.transform = std::move(t);
        l.payload = ShapePayload{{std::move(n)}};
        l.in_point = 0;
        l.out_point = 60;
        l.start_time = 0.0;
        a.layers.push_back(std::move(l));
    }
    return a;
}

}  // namespace lottie
