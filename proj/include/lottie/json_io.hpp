#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lottie/model.hpp"

namespace lottie {

struct ParseOptions {
    /// Admit image/audio/camera/data layers as raw stubs (input to `clean`).
    bool admit_excluded_layers = false;
    /// Run `check_invariants` and throw on the first issue.
    bool validate = true;
};

Animation parse_lottie(std::string_view json_text, const ParseOptions& opts = {});
Animation parse_lottie_json(const Json& root, const ParseOptions& opts = {});

/// Canonical text: deterministic key order, defaulted fields omitted,
/// shortest round-trip number formatting, no whitespace.
std::string serialize_lottie(const Animation& a);
Json to_json(const Animation& a);

/// Compact dump with the canonical number formatting used by `serialize_lottie`.
std::string dump_canonical(const Json& j);
/// Shortest text that parses back to exactly `x`; integral values print
/// without a fraction.
std::string format_number(double x);

struct Issue {
    enum class Kind { Schema, Dangling };
    Kind kind;
    std::string path;
    std::string message;
};

/// Structural invariants of the model: positive canvas and frame rate,
/// ordered time range, unique layer indices, resolvable parent/matte/asset
/// references without cycles, strictly increasing keyframe times, easing
/// handles with x in [0,1], matching Bezier list lengths, star point count.
std::vector<Issue> check_invariants(const Animation& a);

}  // namespace lottie
