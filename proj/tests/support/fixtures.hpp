#pragma once

// Seeded generators shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lottie/lint.hpp"
#include "lottie/model.hpp"
#include "lottie/tokenizer.hpp"

namespace lottie::testing {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    double uni(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(g_() % static_cast<std::uint64_t>(n)); }
    bool coin(double p = 0.5) { return uni(0, 1) < p; }
    std::uint64_t next() { return g_(); }

  private:
    std::mt19937_64 g_;
};

/// Canvas and time range the generated values live in.
struct Space {
    double width = 512;
    double height = 512;
    double in_point = 0;
    double out_point = 60;
    double frame_rate = 30;
};

struct FixtureOptions {
    Space space;
    /// Forces one layer of this kind (Precomp/Solid/Null/Shape/Text).
    std::optional<LayerKind> must_have_layer;
    /// Forces one shape item of this command kind inside a shape layer.
    std::optional<CommandKind> must_have_shape;
    bool masks = false;
    bool effects = false;
};

/// Valid, lint-clean animation. Values stay inside the default vocabulary
/// ranges when `space` is the default 512x512, 0..60 space.
Animation make_fixture(std::uint64_t seed, const FixtureOptions& opts = {});

/// `n` fixtures that together hold all five layer kinds, every shape kind,
/// masks, effects and text.
std::vector<Animation> fixture_corpus(std::size_t n = 200, std::uint64_t seed = 1, const Space& space = {});

/// Source-like fixtures on assorted canvases and time ranges.
std::vector<Animation> source_corpus(std::size_t n, std::uint64_t seed);

struct Coverage {
    std::set<LayerKind> layers;
    std::set<CommandKind> shapes;
    bool masks = false;
    bool effects = false;
    bool text = false;
};
Coverage coverage(const std::vector<Animation>& corpus);

/// Encoded random fixture: a token sequence known to decode.
TokenSeq random_token_seq(std::uint64_t seed);

/// Small hand-built lint-clean animation with shape, null and text layers,
/// used as the base of the lint mutation suite.
Animation clean_base();

/// One edit of clean_base() per lint code that should raise exactly that code.
struct LintMutation {
    DiagCode code;
    std::function<void(Animation&)> apply;
};
const std::vector<LintMutation>& lint_mutations();

/// The 15 shape command kinds.
const std::vector<CommandKind>& all_shape_commands();

}  // namespace lottie::testing
