#pragma once

// Flat text/integer entry points for scripting hosts. Each call is stateless:
// the vocabulary file is loaded per call (an empty path selects the default
// vocabulary). Failures raise lottie::Error with the library's error codes.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/lint.hpp"

namespace lottie::api {

/// Same ids as `lottie_tok tokenize` for the same file, vocabulary and text tokenizer.
std::vector<std::int64_t> encode_file(std::string_view json_text, const std::string& vocab_path = "",
                                      std::string_view text_tokenizer_id = "builtin");

std::string decode_tokens(const std::vector<std::int64_t>& ids, const std::string& vocab_path = "",
                          std::string_view text_tokenizer_id = "builtin");

/// Clean then normalize; throws Rejected when cleaning discards the file.
std::string clean_normalize(std::string_view json_text, double canvas = 512, double time_range = 60);

std::vector<Diagnostic> lint_json(std::string_view json_text);

}  // namespace lottie::api
