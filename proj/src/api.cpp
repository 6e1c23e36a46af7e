#include "lottie/api.hpp"

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/pipeline.hpp"
#include "lottie/tokenizer.hpp"

namespace lottie::api {

namespace {

VocabSpec load_vocab(const std::string& path) {
    return path.empty() ? VocabSpec::default_spec() : VocabSpec::load(path);
}

}  // namespace

std::vector<std::int64_t> encode_file(std::string_view json_text, const std::string& vocab_path,
                                      std::string_view text_tokenizer_id) {
    const auto vocab = load_vocab(vocab_path);
    const auto tt = make_text_tokenizer(text_tokenizer_id);
    return encode(parse_lottie(json_text), vocab, *tt).ids;
}

std::string decode_tokens(const std::vector<std::int64_t>& ids, const std::string& vocab_path,
                          std::string_view text_tokenizer_id) {
    const auto vocab = load_vocab(vocab_path);
    const auto tt = make_text_tokenizer(text_tokenizer_id);
    return serialize_lottie(decode(TokenSeq{ids, vocab.version(), tt->id()}, vocab, *tt));
}

std::string clean_normalize(std::string_view json_text, double canvas, double time_range) {
    auto r = clean_json(json_text);
    if (!r.animation) throw Error(ErrorCode::Rejected, "", r.report.reject_reason);
    NormalizeConfig cfg;
    cfg.canvas = canvas;
    cfg.time_range_max = time_range;
    return serialize_lottie(normalize(*r.animation, cfg));
}

std::vector<Diagnostic> lint_json(std::string_view json_text) { return lottie::lint_json(json_text); }

}  // namespace lottie::api
