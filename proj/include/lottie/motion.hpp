#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/model.hpp"

namespace lottie {

enum class Channel { Rotation, Scale, PositionX, PositionY, Opacity };
inline constexpr std::size_t kChannelCount = 5;
std::string_view to_string(Channel c);
std::optional<Channel> channel_from_string(std::string_view s);

enum class Monotonicity { Constant, Increasing, Decreasing, Mixed };
std::string_view to_string(Monotonicity m);

/// Trajectory summary of one transform channel. Samples are in normalized
/// units: rotation in turns, scale and position as relative change (position
/// over the canvas size), opacity as a fraction of its peak.
struct ChannelSummary {
    bool present = false;
    double delta = 0;  // raw units, end minus start
    int direction = 0;
    Monotonicity monotonicity = Monotonicity::Constant;
    std::size_t keyframes = 0;
    std::vector<double> samples;

    bool operator==(const ChannelSummary&) const = default;
};

struct MotionSignature {
    std::array<ChannelSummary, kChannelCount> channels;

    const ChannelSummary& operator[](Channel c) const { return channels[static_cast<std::size_t>(c)]; }
    ChannelSummary& operator[](Channel c) { return channels[static_cast<std::size_t>(c)]; }
    bool operator==(const MotionSignature&) const = default;
};

inline constexpr std::size_t kSignatureSamples = 16;

/// Reads the normalization root when it is animated, otherwise per channel
/// the first root layer that animates it. Samples span [ip, op].
MotionSignature extract_signature(const Animation& a, std::size_t samples = kSignatureSamples);

/// Piecewise value of a keyframe track at local time `t`, with bezier easing
/// and hold keyframes honored. Component `c` of vector values.
double evaluate(const AnimatedValue& prop, double t, std::size_t c = 0);

enum class MotionKind { MoveH, MoveV, Zoom, Rotate, Fade, Combined2, Combined3 };
inline constexpr std::size_t kMotionKindCount = 7;
std::string_view to_string(MotionKind k);
std::optional<MotionKind> motion_kind_from_string(std::string_view s);

/// A channel counts as moving when its samples span more than this.
inline constexpr double kActiveSpan = 1e-3;

/// nullopt for a motionless signature.
std::optional<MotionKind> classify(const MotionSignature& sig);
/// Human-readable label such as "fade-in + upward motion + scale-down".
std::string describe(const MotionSignature& sig);

/// Categorical penalties of `signature_distance`.
inline constexpr double kPresencePenalty = 2.0;
inline constexpr double kShapePenalty = 0.5;

/// Signature distance: L2 over the concatenated channel samples (absent
/// channels read as their rest value) divided by sqrt(K), plus
/// kPresencePenalty per channel present in only one signature and
/// kShapePenalty per shared channel whose direction or monotonicity differs.
double signature_distance(const MotionSignature& a, const MotionSignature& b);

struct TemplateKey {
    double t = 0;  // normalized time in [0,1]
    double v = 0;  // normalized value, same units as signature samples
    bool operator==(const TemplateKey&) const = default;
};

struct MotionTemplate {
    std::string label;
    std::array<std::vector<TemplateKey>, kChannelCount> channels;  // empty: untouched
    std::size_t cluster_size = 1;

    const std::vector<TemplateKey>& operator[](Channel c) const { return channels[static_cast<std::size_t>(c)]; }
    std::vector<TemplateKey>& operator[](Channel c) { return channels[static_cast<std::size_t>(c)]; }
    bool operator==(const MotionTemplate&) const = default;
};

/// Template of one signature; collinear interior samples are dropped.
MotionTemplate template_from_signature(const MotionSignature& sig);

struct Clustering {
    std::vector<MotionTemplate> templates;  // ordered by medoid index
    std::vector<std::size_t> medoids;
    std::vector<std::size_t> assignment;  // template index per signature
};

/// k-medoids (greedy build then swap). Throws KTooLarge when k exceeds the
/// number of distinct signatures.
Clustering cluster_signatures(const std::vector<MotionSignature>& sigs, std::size_t k);

struct InjectParams {
    std::optional<double> duration;  // frames; defaults to op - ip
    double magnitude = 1;
};

/// Instantiates the template on the normalization root (re-pivoted to the
/// canvas centre) or else on every root layer. Throws AlreadyAnimated when a
/// root layer transform is keyframed.
Animation inject_motion(const Animation& a, const MotionTemplate& tmpl, const InjectParams& params = {});

struct SynthParams {
    std::uint64_t seed = 0;
    std::optional<double> duration;
    std::optional<int> direction;     // +1 / -1, drawn when unset
    std::optional<double> magnitude;  // canvas fraction, scale factor, degrees; drawn when unset
};

/// Basic motion as a template. Bounds: translation 10..40% of the canvas,
/// zoom to 125..200% or 50..80%, rotation of 90, 180 or 360 degrees, full
/// range fades. Combined kinds draw 2 or 3 distinct basic channels.
MotionTemplate basic_motion_template(MotionKind kind, const SynthParams& params);
Animation synth_basic_motion(const Animation& a, MotionKind kind, const SynthParams& params = {});

/// Text format, first line `motion-templates 1`, then per template:
///   template <cluster_size> <label>
///   <channel> <t> <v> <t> <v> ...
///   end
std::string templates_to_text(const std::vector<MotionTemplate>& ts);
std::vector<MotionTemplate> parse_templates(std::string_view text);
std::vector<MotionTemplate> load_templates(const std::string& file);
void save_templates(const std::vector<MotionTemplate>& ts, const std::string& file);

/// Static Lottie from the supported SVG subset.
Animation svg_to_static_lottie(std::string_view svg_text);

}  // namespace lottie
