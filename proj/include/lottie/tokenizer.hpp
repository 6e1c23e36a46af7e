#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lottie/commands.hpp"
#include "lottie/text_tokenizer.hpp"
#include "lottie/vocab.hpp"

namespace lottie {

struct TokenSeq {
    std::vector<TokenId> ids;
    std::string vocab_version;
    std::string tokenizer_id;
    bool operator==(const TokenSeq&) const = default;
};

TokenSeq encode_commands(const CommandSeq& c, const VocabSpec& v, const TextTokenizer& tt,
                         QuantizeCounters* counters = nullptr);
TokenSeq encode(const Animation& a, const VocabSpec& v, const TextTokenizer& tt,
                QuantizeCounters* counters = nullptr);

/// Errors carry the index of the earliest offending token: TokenOutOfRange,
/// UnbalancedNesting, ArityMismatch, MissingMeta. VersionMismatch when the
/// sequence was produced under another vocabulary or text tokenizer.
Animation decode(const TokenSeq& t, const VocabSpec& v, const TextTokenizer& tt);

// Token files. Text: `#lottie-tok v<version> tt=<tokenizer>` then one line of
// space-separated ids per sample. Binary: "LTOK", u32-length-prefixed version
// and tokenizer strings, then per sample a u32 count and u32 ids (LE).
std::string write_token_text(const std::vector<TokenSeq>& samples);
std::vector<TokenSeq> read_token_text(std::string_view text);
std::string write_token_binary(const std::vector<TokenSeq>& samples);
std::vector<TokenSeq> read_token_binary(std::string_view bytes);
/// Detects the format from the first bytes.
std::vector<TokenSeq> read_token_file(const std::string& path);

struct EfficiencyReport {
    std::size_t raw_tokens = 0;           // text tokens of the JSON as given
    std::size_t raw_tokens_minified = 0;  // text tokens of the compact JSON
    std::size_t structured_text_tokens = 0;
    std::size_t command_tokens = 0;
    double compression = 0;               // raw / command tokens
    double compression_minified = 0;      // minified raw / command tokens
};

EfficiencyReport token_stats(std::string_view raw_json, const TokenSeq& t, const TextTokenizer& tt);

}  // namespace lottie
