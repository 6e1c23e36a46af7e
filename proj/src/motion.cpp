#include "lottie/motion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/pipeline.hpp"

namespace lottie {

namespace {

constexpr std::array<std::string_view, kChannelCount> kChannelNames = {
    "rotation", "scale", "position_x", "position_y", "opacity"};
constexpr std::array<std::string_view, kMotionKindCount> kKindNames = {
    "MoveH", "MoveV", "Zoom", "Rotate", "Fade", "Combined2", "Combined3"};

double component(const Vec& v, std::size_t c) {
    if (v.empty()) return 0;
    return v[std::min(c, v.size() - 1)];
}

// y of the cubic easing curve (0,0) (x1,y1) (x2,y2) (1,1) at x = u.
double ease(double x1, double y1, double x2, double y2, double u) {
    auto bez = [](double a, double b, double s) {
        const double m = 1 - s;
        return 3 * m * m * s * a + 3 * m * s * s * b + s * s * s;
    };
    double lo = 0, hi = 1;
    for (int i = 0; i < 60; ++i) {
        const double mid = (lo + hi) / 2;
        if (bez(x1, x2, mid) < u) lo = mid;
        else hi = mid;
    }
    return bez(y1, y2, (lo + hi) / 2);
}

// Value a keyframe holds at its own time.
const Vec* key_value(const KeyframeList<Vec>& kfs, std::size_t i) {
    if (kfs[i].start) return &*kfs[i].start;
    if (i > 0 && kfs[i - 1].end) return &*kfs[i - 1].end;
    if (i > 0) return key_value(kfs, i - 1);
    return nullptr;
}

double linear_keys(const std::vector<TemplateKey>& keys, double t) {
    if (keys.empty()) return 0;
    if (t <= keys.front().t) return keys.front().v;
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
        if (t <= keys[i + 1].t) {
            const double u = (t - keys[i].t) / (keys[i + 1].t - keys[i].t);
            return keys[i].v + u * (keys[i + 1].v - keys[i].v);
        }
    }
    return keys.back().v;
}

// --- channel access -------------------------------------------------------

// Track and component feeding a channel; scale reads both axes.
struct ChannelProp {
    const AnimatedValue* prop = nullptr;
    std::size_t comp = 0;
};

ChannelProp channel_prop(const Layer& l, Channel ch) {
    if (!l.transform) return {};
    const auto& t = *l.transform;
    auto opt = [](const std::optional<AnimatedValue>& p) { return p ? &*p : nullptr; };
    switch (ch) {
        case Channel::Rotation: return {opt(t.rotation), 0};
        case Channel::Scale: return {opt(t.scale), 0};
        case Channel::Opacity: return {opt(t.opacity), 0};
        case Channel::PositionX:
        case Channel::PositionY: {
            if (!t.position) return {};
            const std::size_t c = ch == Channel::PositionX ? 0 : 1;
            if (const auto* u = std::get_if<AnimatedValue>(&*t.position)) return {u, c};
            const auto& s = std::get<SplitPosition>(*t.position);
            return {c == 0 ? &s.x : &s.y, 0};
        }
    }
    return {};
}

double channel_value(const ChannelProp& cp, Channel ch, double t) {
    if (ch == Channel::Scale) return (evaluate(*cp.prop, t, 0) + evaluate(*cp.prop, t, 1)) / 2;
    return evaluate(*cp.prop, t, cp.comp);
}

bool animates(const Layer& l, Channel ch) {
    auto cp = channel_prop(l, ch);
    return cp.prop && cp.prop->animated();
}

double rest_value(Channel ch) { return ch == Channel::Opacity ? 1.0 : 0.0; }

Monotonicity monotonicity_of(const std::vector<double>& v) {
    bool up = false, down = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        const double eps = 1e-9 * std::max(1.0, std::fabs(v[i]));
        if (d > eps) up = true;
        if (d < -eps) down = true;
    }
    if (up && down) return Monotonicity::Mixed;
    if (up) return Monotonicity::Increasing;
    if (down) return Monotonicity::Decreasing;
    return Monotonicity::Constant;
}

double span(const std::vector<double>& v) {
    if (v.empty()) return 0;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

bool active(const ChannelSummary& s) { return s.present && span(s.samples) > kActiveSpan; }

std::string term(Channel ch, int dir) {
    switch (ch) {
        case Channel::Opacity: return dir > 0 ? "fade-in" : dir < 0 ? "fade-out" : "opacity pulse";
        case Channel::PositionY:
            return dir < 0 ? "upward motion" : dir > 0 ? "downward motion" : "vertical oscillation";
        case Channel::PositionX:
            return dir > 0 ? "rightward motion" : dir < 0 ? "leftward motion" : "horizontal oscillation";
        case Channel::Scale: return dir > 0 ? "scale-up" : dir < 0 ? "scale-down" : "scale pulse";
        case Channel::Rotation:
            return dir > 0 ? "clockwise rotation" : dir < 0 ? "counter-clockwise rotation" : "rotation wobble";
    }
    return "";
}

constexpr std::array<Channel, kChannelCount> kLabelOrder = {
    Channel::Opacity, Channel::PositionY, Channel::PositionX, Channel::Scale, Channel::Rotation};

int sign_of(double d, double ref) {
    const double eps = 1e-9 * std::max(1.0, std::fabs(ref));
    return d > eps ? 1 : d < -eps ? -1 : 0;
}

// --- injection ------------------------------------------------------------

bool transform_animated(const Transform& t) {
    auto anim = [](const std::optional<AnimatedValue>& p) { return p && p->animated(); };
    if (anim(t.anchor) || anim(t.scale) || anim(t.rotation) || anim(t.opacity) || anim(t.skew) ||
        anim(t.skew_axis))
        return true;
    if (!t.position) return false;
    if (const auto* u = std::get_if<AnimatedValue>(&*t.position)) return u->animated();
    const auto& s = std::get<SplitPosition>(*t.position);
    return s.x.animated() || s.y.animated() || (s.z && s.z->animated());
}

Vec static_or(const std::optional<AnimatedValue>& p, Vec fallback) {
    if (p && p->static_value()) return *p->static_value();
    return fallback;
}

AnimatedValue make_track(const std::vector<std::pair<double, Vec>>& keys) {
    KeyframeList<Vec> kfs;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        Keyframe<Vec> k;
        k.time = keys[i].first;
        k.start = keys[i].second;
        if (i + 1 < keys.size()) {
            k.ease_out = Tangent{{0}, {0}};
            k.ease_in = Tangent{{1}, {1}};
        }
        kfs.push_back(std::move(k));
    }
    AnimatedValue a;
    a.data = std::move(kfs);
    return a;
}

struct Clock {
    double ip, duration;
    double local(const Layer& l, double t) const {
        return (ip + t * duration - l.start()) / l.time_stretch();
    }
};

// Moves the pivot to canvas point (cx, cy) without moving content:
// p + RS(x - a) == p' + RS(x - a').
bool repivot(Layer& l, double cx, double cy) {
    if (!l.transform) l.transform = Transform{};
    auto& t = *l.transform;
    auto nonzero = [](const std::optional<AnimatedValue>& p) {
        if (!p) return false;
        const auto* v = p->static_value();
        return !v || (!v->empty() && (*v)[0] != 0);
    };
    if (nonzero(t.skew)) return false;
    if (t.position && !std::holds_alternative<AnimatedValue>(*t.position)) return false;
    Vec p = t.position ? static_or(std::get<AnimatedValue>(*t.position), {}) : Vec{0, 0};
    Vec a = static_or(t.anchor, {0, 0});
    Vec s = static_or(t.scale, {100, 100});
    Vec r = static_or(t.rotation, {0});
    if (p.size() < 2 || a.size() < 2 || s.size() < 2 || r.empty()) return false;
    if (s[0] == 0 || s[1] == 0) return false;
    const double dx = cx - p[0], dy = cy - p[1];
    const double th = -r[0] * std::numbers::pi / 180;
    const double rx = std::cos(th) * dx - std::sin(th) * dy;
    const double ry = std::sin(th) * dx + std::cos(th) * dy;
    a[0] += rx / (s[0] / 100);
    a[1] += ry / (s[1] / 100);
    p[0] = cx;
    p[1] = cy;
    t.anchor = make_static(a);
    t.position = Position{make_static(p)};
    return true;
}

void apply_channel(Layer& l, Channel ch, const std::vector<TemplateKey>& keys, double mag, const Clock& clk,
                   double extent) {
    if (!l.transform) l.transform = Transform{};
    auto& t = *l.transform;
    std::vector<std::pair<double, Vec>> track;
    switch (ch) {
        case Channel::Rotation: {
            const double base = component(static_or(t.rotation, {0}), 0);
            for (const auto& k : keys) track.push_back({clk.local(l, k.t), {base + 360 * mag * k.v}});
            t.rotation = make_track(track);
            break;
        }
        case Channel::Scale: {
            const Vec base = static_or(t.scale, {100, 100});
            for (const auto& k : keys) {
                Vec v = base;
                for (auto& x : v) x *= 1 + mag * k.v;
                track.push_back({clk.local(l, k.t), v});
            }
            t.scale = make_track(track);
            break;
        }
        case Channel::Opacity: {
            const double base = component(static_or(t.opacity, {100}), 0);
            for (const auto& k : keys) track.push_back({clk.local(l, k.t), {base * (1 - mag * (1 - k.v))}});
            t.opacity = make_track(track);
            break;
        }
        case Channel::PositionX:
        case Channel::PositionY: {
            const std::size_t c = ch == Channel::PositionX ? 0 : 1;
            if (t.position && std::holds_alternative<SplitPosition>(*t.position)) {
                auto& s = std::get<SplitPosition>(*t.position);
                auto& prop = c == 0 ? s.x : s.y;
                const double base = prop.static_value() ? component(*prop.static_value(), 0) : 0;
                for (const auto& k : keys) track.push_back({clk.local(l, k.t), {base + extent * mag * k.v}});
                prop = make_track(track);
            } else {
                // Unified positions are animated together by the caller.
            }
            break;
        }
    }
}

void apply_unified_position(Layer& l, const std::vector<TemplateKey>& xs, const std::vector<TemplateKey>& ys,
                            double mag, const Clock& clk, double w, double h) {
    if (!l.transform) l.transform = Transform{};
    auto& t = *l.transform;
    Vec base = t.position ? static_or(std::get<AnimatedValue>(*t.position), {0, 0}) : Vec{0, 0};
    if (base.size() < 2) base.resize(2, 0);
    std::vector<double> times;
    for (const auto& k : xs) times.push_back(k.t);
    for (const auto& k : ys) times.push_back(k.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<std::pair<double, Vec>> track;
    for (double tt : times) {
        Vec v = base;
        if (!xs.empty()) v[0] += w * mag * linear_keys(xs, tt);
        if (!ys.empty()) v[1] += h * mag * linear_keys(ys, tt);
        track.push_back({clk.local(l, tt), v});
    }
    t.position = Position{make_track(track)};
}

void apply_motion(Layer& l, const MotionTemplate& tmpl, double mag, const Clock& clk, double w, double h,
                  bool geometric) {
    if (geometric) {
        for (Channel ch : {Channel::Rotation, Channel::Scale})
            if (!tmpl[ch].empty()) apply_channel(l, ch, tmpl[ch], mag, clk, 0);
        const auto& xs = tmpl[Channel::PositionX];
        const auto& ys = tmpl[Channel::PositionY];
        if (!xs.empty() || !ys.empty()) {
            const bool split = l.transform && l.transform->position &&
                               std::holds_alternative<SplitPosition>(*l.transform->position);
            if (split) {
                if (!xs.empty()) apply_channel(l, Channel::PositionX, xs, mag, clk, w);
                if (!ys.empty()) apply_channel(l, Channel::PositionY, ys, mag, clk, h);
            } else {
                apply_unified_position(l, xs, ys, mag, clk, w, h);
            }
        }
    } else if (!tmpl[Channel::Opacity].empty()) {
        apply_channel(l, Channel::Opacity, tmpl[Channel::Opacity], mag, clk, 0);
    }
}

// --- randomness ----------------------------------------------------------

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double round2(double x) { return std::round(x * 100) / 100; }

// --- template text -------------------------------------------------------

std::vector<double> parse_numbers(std::string_view s, std::size_t line) {
    std::vector<double> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        double x = 0;
        auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), x);
        if (ec != std::errc() || (p != s.data() + s.size() && *p != ' '))
            throw Error(ErrorCode::SchemaViolation, "templates:" + std::to_string(line), "bad number");
        out.push_back(x);
        i = static_cast<std::size_t>(p - s.data());
    }
    return out;
}

}  // namespace

std::string_view to_string(Channel c) { return kChannelNames[static_cast<std::size_t>(c)]; }

std::optional<Channel> channel_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kChannelCount; ++i)
        if (kChannelNames[i] == s) return static_cast<Channel>(i);
    return std::nullopt;
}

std::string_view to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Constant: return "constant";
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::Decreasing: return "decreasing";
        case Monotonicity::Mixed: return "mixed";
    }
    return "";
}

std::string_view to_string(MotionKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<MotionKind> motion_kind_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kMotionKindCount; ++i)
        if (kKindNames[i] == s) return static_cast<MotionKind>(i);
    return std::nullopt;
}

double evaluate(const AnimatedValue& prop, double t, std::size_t c) {
    if (const auto* v = prop.static_value()) return component(*v, c);
    const auto& kfs = *prop.keyframes();
    if (kfs.empty()) return 0;
    auto at = [&](std::size_t i) {
        const Vec* v = key_value(kfs, i);
        return v ? component(*v, c) : 0.0;
    };
    if (t <= kfs.front().time) return at(0);
    for (std::size_t i = 0; i + 1 < kfs.size(); ++i) {
        const auto& k = kfs[i];
        if (t >= kfs[i + 1].time) continue;
        const double from = at(i);
        if (k.hold) return from;
        double to = from;
        if (k.end) to = component(*k.end, c);
        else if (kfs[i + 1].start) to = component(*kfs[i + 1].start, c);
        double u = (t - k.time) / (kfs[i + 1].time - k.time);
        if (k.ease_out && k.ease_in && !k.ease_out->x.empty() && !k.ease_in->x.empty()) {
            u = ease(component(k.ease_out->x, c), component(k.ease_out->y, c), component(k.ease_in->x, c),
                     component(k.ease_in->y, c), u);
        }
        return from + u * (to - from);
    }
    const Vec* last = key_value(kfs, kfs.size() - 1);
    if (last) return component(*last, c);
    const auto& prev = kfs[kfs.size() - 2];
    return prev.end ? component(*prev.end, c) : 0.0;
}

MotionSignature extract_signature(const Animation& a, std::size_t samples) {
    samples = std::max<std::size_t>(samples, 2);
    MotionSignature sig;
    const auto root = find_normalize_root(a);
    for (std::size_t ci = 0; ci < kChannelCount; ++ci) {
        const auto ch = static_cast<Channel>(ci);
        const Layer* carrier = nullptr;
        if (root && animates(a.layers[*root], ch)) carrier = &a.layers[*root];
        for (std::size_t i = 0; !carrier && i < a.layers.size(); ++i)
            if (animates(a.layers[i], ch)) carrier = &a.layers[i];
        if (!carrier) continue;

        const auto cp = channel_prop(*carrier, ch);
        auto& s = sig.channels[ci];
        s.present = true;
        s.keyframes = cp.prop->keyframes()->size();
        std::vector<double> raw(samples);
        for (std::size_t j = 0; j < samples; ++j) {
            const double t = a.in_point + (a.out_point - a.in_point) * static_cast<double>(j) /
                                              static_cast<double>(samples - 1);
            raw[j] = channel_value(cp, ch, (t - carrier->start()) / carrier->time_stretch());
        }
        const double v0 = raw.front();
        s.delta = raw.back() - v0;
        s.direction = sign_of(s.delta, v0);
        s.monotonicity = monotonicity_of(raw);
        double denom = 1;
        switch (ch) {
            case Channel::Rotation: denom = 360; break;
            case Channel::Scale: denom = std::fabs(v0) > 1e-9 ? v0 : 100; break;
            case Channel::PositionX: denom = a.width; break;
            case Channel::PositionY: denom = a.height; break;
            case Channel::Opacity: break;
        }
        s.samples.resize(samples);
        if (ch == Channel::Opacity) {
            const double peak = *std::max_element(raw.begin(), raw.end());
            for (std::size_t j = 0; j < samples; ++j) s.samples[j] = peak > 1e-9 ? raw[j] / peak : 0.0;
        } else {
            for (std::size_t j = 0; j < samples; ++j) s.samples[j] = (raw[j] - v0) / denom;
        }
    }
    return sig;
}

std::optional<MotionKind> classify(const MotionSignature& sig) {
    static constexpr std::array<MotionKind, kChannelCount> kBasic = {
        MotionKind::Rotate, MotionKind::Zoom, MotionKind::MoveH, MotionKind::MoveV, MotionKind::Fade};
    std::vector<MotionKind> kinds;
    for (std::size_t ci = 0; ci < kChannelCount; ++ci)
        if (active(sig.channels[ci])) kinds.push_back(kBasic[ci]);
    if (kinds.empty()) return std::nullopt;
    if (kinds.size() == 1) return kinds.front();
    return kinds.size() == 2 ? MotionKind::Combined2 : MotionKind::Combined3;
}

std::string describe(const MotionSignature& sig) {
    std::string out;
    for (Channel ch : kLabelOrder) {
        const auto& s = sig[ch];
        if (!active(s)) continue;
        if (!out.empty()) out += " + ";
        out += term(ch, s.direction);
    }
    return out.empty() ? "static" : out;
}

double signature_distance(const MotionSignature& a, const MotionSignature& b) {
    double sq = 0, penalty = 0;
    std::size_t count = 0;
    for (std::size_t ci = 0; ci < kChannelCount; ++ci) {
        const auto& x = a.channels[ci];
        const auto& y = b.channels[ci];
        const double rest = rest_value(static_cast<Channel>(ci));
        const std::size_t n = std::max(x.samples.size(), y.samples.size());
        for (std::size_t j = 0; j < n; ++j) {
            const double xv = j < x.samples.size() ? x.samples[j] : rest;
            const double yv = j < y.samples.size() ? y.samples[j] : rest;
            sq += (xv - yv) * (xv - yv);
        }
        count = std::max(count, n);
        // A channel that moves in one signature and not the other is a
        // different kind of motion; a sign or shape change within a channel
        // is a variant of the same kind.
        if (x.present != y.present) {
            penalty += kPresencePenalty;
        } else if (x.present && (x.direction != y.direction || x.monotonicity != y.monotonicity)) {
            penalty += kShapePenalty;
        }
    }
    // Scaled by the per-channel sample count so the continuous part reads as
    // an RMS difference whatever K is.
    return std::sqrt(sq / static_cast<double>(std::max<std::size_t>(count, 1))) + penalty;
}

MotionTemplate template_from_signature(const MotionSignature& sig) {
    MotionTemplate t;
    t.label = describe(sig);
    for (std::size_t ci = 0; ci < kChannelCount; ++ci) {
        const auto& s = sig.channels[ci];
        if (!s.present || s.samples.empty()) continue;
        const std::size_t n = s.samples.size();
        auto time = [&](std::size_t j) { return n == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(n - 1); };
        auto& keys = t.channels[ci];
        keys.push_back({time(0), s.samples[0]});
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const auto& prev = keys.back();
            const double predicted =
                prev.v + (s.samples[j + 1] - prev.v) * (time(j) - prev.t) / (time(j + 1) - prev.t);
            if (std::fabs(predicted - s.samples[j]) > 1e-9) keys.push_back({time(j), s.samples[j]});
        }
        if (n > 1) keys.push_back({time(n - 1), s.samples[n - 1]});
    }
    return t;
}

Clustering cluster_signatures(const std::vector<MotionSignature>& sigs, std::size_t k) {
    if (sigs.empty()) throw Error(ErrorCode::KTooLarge, "k", "no signatures to cluster");
    if (k == 0) throw Error(ErrorCode::KTooLarge, "k", "k must be at least 1");
    const std::size_t n = sigs.size();
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < i && !seen; ++j) seen = sigs[j] == sigs[i];
        if (!seen) ++distinct;
    }
    if (k > distinct)
        throw Error(ErrorCode::KTooLarge, "k",
                    "k=" + std::to_string(k) + " exceeds " + std::to_string(distinct) + " distinct signatures");

    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = signature_distance(sigs[i], sigs[j]);

    std::vector<std::size_t> med;
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    auto is_med = [&](std::size_t i) { return std::find(med.begin(), med.end(), i) != med.end(); };
    auto add = [&](std::size_t m) {
        med.push_back(m);
        for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], d[m][j]);
    };
    {
        std::size_t best = 0;
        double best_sum = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += d[i][j];
            if (s < best_sum) best_sum = s, best = i;
        }
        add(best);
    }
    while (med.size() < k) {
        std::size_t best = n;
        double best_gain = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_med(i) || nearest[i] == 0) continue;
            double gain = 0;
            for (std::size_t j = 0; j < n; ++j) gain += std::max(0.0, nearest[j] - d[i][j]);
            if (gain > best_gain) best_gain = gain, best = i;
        }
        add(best);
    }

    auto cost_of = [&](const std::vector<std::size_t>& m) {
        double c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (auto x : m) best = std::min(best, d[x][j]);
            c += best;
        }
        return c;
    };
    double cost = cost_of(med);
    for (bool improved = true; improved;) {
        improved = false;
        std::vector<std::size_t> best_set;
        double best_cost = cost;
        for (std::size_t mi = 0; mi < med.size(); ++mi) {
            for (std::size_t o = 0; o < n; ++o) {
                if (is_med(o)) continue;
                auto trial = med;
                trial[mi] = o;
                const double c = cost_of(trial);
                if (c < best_cost - 1e-12) best_cost = c, best_set = trial;
            }
        }
        if (!best_set.empty()) {
            med = std::move(best_set);
            cost = best_cost;
            improved = true;
        }
    }

    std::sort(med.begin(), med.end());
    Clustering out;
    out.medoids = med;
    out.assignment.resize(n);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t best = 0;
        for (std::size_t m = 1; m < k; ++m)
            if (d[med[m]][j] < d[med[best]][j]) best = m;
        out.assignment[j] = best;
        ++sizes[best];
    }
    for (std::size_t m = 0; m < k; ++m) {
        auto t = template_from_signature(sigs[med[m]]);
        t.cluster_size = sizes[m];
        out.templates.push_back(std::move(t));
    }
    return out;
}

Animation inject_motion(const Animation& a, const MotionTemplate& tmpl, const InjectParams& params) {
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        if (a.layers[i].transform && transform_animated(*a.layers[i].transform))
            throw Error(ErrorCode::AlreadyAnimated, "layers[" + std::to_string(i) + "].ks",
                        "root layer transform is already keyframed");
    }
    for (std::size_t ci = 0; ci < kChannelCount; ++ci) {
        const auto& keys = tmpl.channels[ci];
        for (std::size_t j = 0; j < keys.size(); ++j) {
            if (keys[j].t < 0 || keys[j].t > 1 || (j > 0 && keys[j].t <= keys[j - 1].t))
                throw Error(ErrorCode::SchemaViolation, std::string(kChannelNames[ci]),
                            "template times must increase within [0,1]");
        }
    }
    const double duration = params.duration.value_or(a.out_point - a.in_point);
    if (!(duration > 0)) throw Error(ErrorCode::DegenerateDuration, "duration", "motion duration must be positive");

    Animation out = a;
    const Clock clk{a.in_point, duration};
    const bool turns = !tmpl[Channel::Rotation].empty() || !tmpl[Channel::Scale].empty();
    const double cx = a.width / 2, cy = a.height / 2;

    if (auto root = find_normalize_root(out)) {
        Layer& r = out.layers[*root];
        if (turns) repivot(r, cx, cy);
        apply_motion(r, tmpl, params.magnitude, clk, a.width, a.height, true);
    } else {
        for (auto& l : out.layers) {
            if (l.parent) continue;
            if (turns) repivot(l, cx, cy);
            apply_motion(l, tmpl, params.magnitude, clk, a.width, a.height, true);
        }
    }
    // Opacity does not pass down the parent chain, so every visible layer fades.
    for (auto& l : out.layers)
        if (l.kind != LayerKind::Null)
            apply_motion(l, tmpl, params.magnitude, clk, a.width, a.height, false);
    return out;
}

MotionTemplate basic_motion_template(MotionKind kind, const SynthParams& params) {
    std::mt19937_64 rng(params.seed);
    auto direction = [&] { return params.direction.value_or(rng() % 2 == 0 ? 1 : -1); };
    MotionTemplate t;
    switch (kind) {
        case MotionKind::MoveH:
        case MotionKind::MoveV: {
            const int dir = direction();
            const double frac = params.magnitude.value_or(round2(0.1 + 0.3 * unit(rng)));
            t[kind == MotionKind::MoveH ? Channel::PositionX : Channel::PositionY] = {{0, 0}, {1, dir * frac}};
            t.label = term(kind == MotionKind::MoveH ? Channel::PositionX : Channel::PositionY, dir);
            break;
        }
        case MotionKind::Zoom: {
            const int dir = direction();
            const double factor = params.magnitude.value_or(
                dir > 0 ? round2(1.25 + 0.75 * unit(rng)) : round2(0.5 + 0.3 * unit(rng)));
            t[Channel::Scale] = {{0, 0}, {1, factor - 1}};
            t.label = term(Channel::Scale, factor > 1 ? 1 : factor < 1 ? -1 : 0);
            break;
        }
        case MotionKind::Rotate: {
            static constexpr std::array<double, 3> kAngles = {90, 180, 360};
            const int dir = direction();
            const double deg = params.magnitude.value_or(kAngles[rng() % kAngles.size()]);
            t[Channel::Rotation] = {{0, 0}, {1, dir * deg / 360}};
            t.label = term(Channel::Rotation, dir);
            break;
        }
        case MotionKind::Fade: {
            const int dir = direction();
            t[Channel::Opacity] = dir > 0 ? std::vector<TemplateKey>{{0, 0}, {1, 1}}
                                          : std::vector<TemplateKey>{{0, 1}, {1, 0}};
            t.label = term(Channel::Opacity, dir);
            break;
        }
        case MotionKind::Combined2:
        case MotionKind::Combined3: {
            std::array<MotionKind, 5> pool = {MotionKind::MoveH, MotionKind::MoveV, MotionKind::Zoom,
                                              MotionKind::Rotate, MotionKind::Fade};
            for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[rng() % (i + 1)]);
            const std::size_t count = kind == MotionKind::Combined2 ? 2 : 3;
            std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
            std::vector<std::string> terms;
            for (std::size_t i = 0; i < count; ++i) {
                SynthParams sub;
                sub.seed = rng();
                sub.direction = params.direction;
                auto part = basic_motion_template(pool[i], sub);
                for (std::size_t ci = 0; ci < kChannelCount; ++ci)
                    if (!part.channels[ci].empty()) t.channels[ci] = part.channels[ci];
                terms.push_back(part.label);
            }
            for (const auto& s : terms) t.label += (t.label.empty() ? "" : " + ") + s;
            break;
        }
    }
    return t;
}

Animation synth_basic_motion(const Animation& a, MotionKind kind, const SynthParams& params) {
    InjectParams ip;
    ip.duration = params.duration;
    return inject_motion(a, basic_motion_template(kind, params), ip);
}

std::string templates_to_text(const std::vector<MotionTemplate>& ts) {
    std::string out = "motion-templates 1\n";
    for (const auto& t : ts) {
        out += "template " + std::to_string(t.cluster_size) + " " + t.label + "\n";
        for (std::size_t ci = 0; ci < kChannelCount; ++ci) {
            if (t.channels[ci].empty()) continue;
            out += kChannelNames[ci];
            for (const auto& k : t.channels[ci]) out += " " + format_number(k.t) + " " + format_number(k.v);
            out += "\n";
        }
        out += "end\n";
    }
    return out;
}

std::vector<MotionTemplate> parse_templates(std::string_view text) {
    std::vector<MotionTemplate> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    auto fail = [&](const std::string& msg) {
        return Error(ErrorCode::SchemaViolation, "templates:" + std::to_string(n), msg);
    };
    bool header = false, open = false;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "motion-templates 1") throw fail("expected 'motion-templates 1'");
            header = true;
            continue;
        }
        if (line.rfind("template ", 0) == 0) {
            if (open) throw fail("template without end");
            const auto rest = std::string_view(line).substr(9);
            const auto sp = rest.find(' ');
            std::size_t size = 0;
            auto num = rest.substr(0, sp);
            auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), size);
            if (ec != std::errc() || p != num.data() + num.size()) throw fail("bad cluster size");
            MotionTemplate t;
            t.cluster_size = size;
            t.label = sp == std::string_view::npos ? "" : std::string(rest.substr(sp + 1));
            out.push_back(std::move(t));
            open = true;
        } else if (line == "end") {
            if (!open) throw fail("end without template");
            open = false;
        } else {
            if (!open) throw fail("channel outside a template");
            const auto sp = line.find(' ');
            auto ch = channel_from_string(std::string_view(line).substr(0, sp));
            if (!ch) throw fail("unknown channel '" + line.substr(0, sp) + "'");
            auto nums = sp == std::string::npos ? std::vector<double>{}
                                                : parse_numbers(std::string_view(line).substr(sp + 1), n);
            if (nums.empty() || nums.size() % 2 != 0) throw fail("channel needs (t, v) pairs");
            auto& keys = out.back()[*ch];
            if (!keys.empty()) throw fail("duplicate channel");
            for (std::size_t i = 0; i < nums.size(); i += 2) {
                if (nums[i] < 0 || nums[i] > 1 || (!keys.empty() && nums[i] <= keys.back().t))
                    throw fail("times must increase within [0,1]");
                keys.push_back({nums[i], nums[i + 1]});
            }
        }
    }
    if (!header) throw fail("empty template file");
    if (open) throw fail("missing end");
    return out;
}

std::vector<MotionTemplate> load_templates(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, file, "cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_templates(ss.str());
}

void save_templates(const std::vector<MotionTemplate>& ts, const std::string& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, file, "cannot write");
    out << templates_to_text(ts);
    if (!out) throw Error(ErrorCode::Io, file, "write failed");
}

}  // namespace lottie
