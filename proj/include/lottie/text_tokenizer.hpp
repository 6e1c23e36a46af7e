#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lottie {

/// Text side of the token stream. Ids are local to the tokenizer
/// (0..vocab_size()-1); the encoder shifts them into the vocabulary's text
/// region. Implementations must satisfy decode(encode(s)) == s and be safe to
/// call concurrently.
class TextTokenizer {
  public:
    virtual ~TextTokenizer() = default;
    /// Stable identifier recorded in token files, e.g. `byte`.
    virtual std::string id() const = 0;
    virtual std::size_t vocab_size() const = 0;
    virtual std::vector<std::uint32_t> encode(std::string_view text) const = 0;
    /// Throws TokenOutOfRange on ids the tokenizer does not know.
    virtual std::string decode(std::span<const std::uint32_t> ids) const = 0;
};

/// One id per byte value.
class ByteTokenizer final : public TextTokenizer {
  public:
    std::string id() const override { return "byte"; }
    std::size_t vocab_size() const override { return 256; }
    std::vector<std::uint32_t> encode(std::string_view text) const override;
    std::string decode(std::span<const std::uint32_t> ids) const override;
};

/// Replays a static id <-> byte-sequence table (one `id<TAB>hex-bytes` entry
/// per line) with greedy longest-match encoding. The table must contain every
/// single byte so that any input is encodable.
class TableTokenizer final : public TextTokenizer {
  public:
    static TableTokenizer parse(std::string_view table_text);
    static TableTokenizer load(const std::string& file);

    std::string id() const override { return id_; }
    std::size_t vocab_size() const override { return pieces_.size(); }
    std::vector<std::uint32_t> encode(std::string_view text) const override;
    std::string decode(std::span<const std::uint32_t> ids) const override;

  private:
    std::string id_;
    std::vector<std::string> pieces_;
    std::unordered_map<std::string, std::uint32_t> lookup_;
    std::size_t max_piece_ = 1;
};

const ByteTokenizer& byte_tokenizer();

/// `builtin` / `byte` or `external:FILE`.
std::shared_ptr<const TextTokenizer> make_text_tokenizer(std::string_view spec);

}  // namespace lottie
