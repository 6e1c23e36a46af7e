#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/model.hpp"
#include "lottie/vocab.hpp"

namespace lottie {

struct Param {
    ParamType type{};
    ParamValue value;
    std::string_view key;                      // field name, for dumps
    std::span<const std::string_view> codes;   // code table when the value is a code
};

struct TextGroup {
    std::string_view key;
    std::optional<std::string> value;  // nullopt: field absent
};

struct Command {
    CommandKind kind{};
    std::vector<Param> params;
    std::vector<TextGroup> texts;
};

/// META first, then the document in canonical order. Layers are closed by
/// END and shape groups by GROUP-END; every other child list is delimited
/// by the command kinds that may start it.
using CommandSeq = std::vector<Command>;

/// Throws UnsupportedContent for content the token grammar cannot carry:
/// expressions, raw (image/audio/camera/data) layers and non-precomp assets.
/// Unknown keys and opaque passthrough fields (`sy`, markers, text path
/// options) are not represented and are dropped.
CommandSeq to_command_sequence(const Animation& a);

/// Throws MissingMeta, UnbalancedNesting or ArityMismatch on malformed input
/// and SchemaViolation when the result breaks model invariants.
Animation from_command_sequence(const CommandSeq& c);

/// Structural equality up to `tol` on continuous parameters; discrete
/// parameters, names and text compare exactly. Unknown keys and opaque
/// passthrough fields are ignored.
bool canonical_equal(const Animation& a, const Animation& b, double tol);

/// One line per command, e.g. `animation v="5.12.1" fr=25 ip=0 ...`.
std::string dump_commands(const CommandSeq& c);

/// Adds every present parameter value to `stats`.
void collect_stats(const CommandSeq& c, CorpusStats& stats);

}  // namespace lottie
