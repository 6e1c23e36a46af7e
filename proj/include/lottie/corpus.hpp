#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/model.hpp"
#include "lottie/text_tokenizer.hpp"
#include "lottie/vocab.hpp"

namespace lottie {

/// Composition nesting: 1 for a root with no precomps, +1 per precomp level.
std::size_t composition_depth(const Animation& a);

/// Per-file measurements; `error` is set when the file does not parse.
struct FileStats {
    std::string file;
    std::optional<std::string> error;
    std::map<std::string, std::size_t> layer_kinds;  // every layer, assets included
    std::size_t root_layers = 0;
    std::size_t depth = 0;
    double duration_seconds = 0;
    /// Present when the file cleans, normalizes and encodes.
    std::optional<std::size_t> command_tokens;
    std::size_t raw_tokens_minified = 0;
};

FileStats file_stats(std::string_view json_text, const VocabSpec& v, const TextTokenizer& tt);

inline constexpr std::array<double, 4> kDurationEdges = {1, 3, 5, 10};  // seconds

struct StatsReport {
    std::size_t files = 0;
    std::size_t failed = 0;
    std::size_t layers = 0;
    std::map<std::string, std::size_t> layer_kinds;
    std::map<std::size_t, std::size_t> depth_histogram;  // depth -> files
    std::array<std::size_t, kDurationEdges.size() + 1> duration_histogram{};
    double layer_count_mean = 0;
    std::size_t layer_count_max = 0;
    std::size_t encoded_files = 0;
    std::size_t command_tokens = 0;
    std::size_t raw_tokens_minified = 0;
    double mean_compression = 0;  // per-file minified raw / command tokens

    double kind_percent(std::string_view kind) const;
    /// Tab-separated `section key value` lines.
    std::string to_text() const;
};

StatsReport aggregate_stats(const std::vector<FileStats>& files);
/// Files are read in lexicographic order; parse failures are counted.
StatsReport corpus_stats(const std::vector<std::string>& files, const VocabSpec& v, const TextTokenizer& tt);

}  // namespace lottie
