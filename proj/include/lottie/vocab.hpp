#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/command_kind.hpp"
#include "lottie/param_type.hpp"

namespace lottie {

/// A parameter value; nullopt is PAD_VAL (absent optional field).
using ParamValue = std::optional<double>;
inline constexpr ParamValue PAD_VAL = std::nullopt;

using TokenId = std::int64_t;

/// Value range of one parameter type before packing.
struct RangeSpec {
    double min = 0;
    double max = 0;
    double scale = 1;  // tokens per unit
    bool operator==(const RangeSpec&) const = default;
};

/// Packed token region of one parameter type. `offset` is the id of the
/// value zero; ids [first(), last()] hold values, `pad` sits just below.
struct TypeRegion {
    ParamType type{};
    TokenId offset = 0;
    double scale = 1;
    double min = 0;
    double max = 0;
    TokenId pad = 0;

    TokenId first() const { return pad + 1; }
    TokenId last() const;
    bool contains(TokenId tok) const { return tok >= pad && tok <= last(); }
    bool operator==(const TypeRegion&) const = default;
};

/// Grid index of `x * scale`: floor, except values within rounding noise of
/// a grid point snap to it so that exact multiples of 1/scale survive.
std::int64_t grid_floor(double x, double scale);

struct QuantizeCounters {
    std::array<std::uint64_t, kParamTypeCount> clamped{};
    std::uint64_t total() const;
};

class VocabSpec {
  public:
    static constexpr std::size_t kDefaultTextSize = 256;

    /// Packs commands first, then one region per type in enum order, then
    /// the text region.
    static VocabSpec pack(const std::array<RangeSpec, kParamTypeCount>& ranges,
                          std::size_t text_size, std::string version);
    static const VocabSpec& default_spec();

    static VocabSpec parse(std::string_view text);
    static VocabSpec load(const std::string& file);
    std::string to_text() const;
    void save(const std::string& file) const;

    const std::string& version() const { return version_; }
    const TypeRegion& region(ParamType t) const;
    const std::array<TypeRegion, kParamTypeCount>& regions() const { return regions_; }
    TokenId command_id(CommandKind k) const { return static_cast<TokenId>(k); }
    std::optional<CommandKind> command_at(TokenId tok) const;
    /// Type whose region (pad included) holds `tok`.
    std::optional<ParamType> type_at(TokenId tok) const;
    TokenId text_base() const { return text_base_; }
    std::size_t text_size() const { return text_size_; }
    bool is_text(TokenId tok) const {
        return tok >= text_base_ && tok < text_base_ + static_cast<TokenId>(text_size_);
    }
    /// Total number of ids.
    TokenId size() const { return text_base_ + static_cast<TokenId>(text_size_); }

    bool operator==(const VocabSpec&) const = default;

  private:
    std::string version_;
    std::array<TypeRegion, kParamTypeCount> regions_{};
    TokenId text_base_ = 0;
    std::size_t text_size_ = 0;
};

const std::array<RangeSpec, kParamTypeCount>& default_ranges();

/// Out-of-range values are clamped and counted in `counters` when given.
TokenId quantize(ParamValue x, ParamType t, const VocabSpec& v,
                 QuantizeCounters* counters = nullptr);
/// Throws TokenOutOfRange when `tok` is outside the type's region.
ParamValue dequantize(TokenId tok, ParamType t, const VocabSpec& v,
                      std::optional<std::size_t> position = std::nullopt);

struct CorpusStats {
    std::array<std::vector<double>, kParamTypeCount> values;

    void add(ParamType t, double x) { values[static_cast<std::size_t>(t)].push_back(x); }
    void merge(const CorpusStats& other);
    std::size_t count() const;
};

struct BuildConfig {
    double q_lo = 0.001;
    double q_hi = 0.999;
    std::size_t text_size = VocabSpec::kDefaultTextSize;
    /// Types without observations keep their default range; when false they
    /// raise EmptyStats instead.
    bool default_missing = true;
};

/// Type-7 (linear interpolation) quantile of an unsorted sample.
double quantile(std::vector<double> xs, double q);

VocabSpec build_vocab(const CorpusStats& stats, const BuildConfig& cfg = {});

}  // namespace lottie
