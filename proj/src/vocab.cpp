#include "lottie/vocab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"

namespace lottie {

namespace {

constexpr std::array<RangeSpec, kParamTypeCount> kDefaultRanges = {{
    {0, 1, 1},        // BinaryFlag
    {0, 31, 1},       // SmallEnum
    {0, 1023, 1},     // Count
    {0, 1023, 1},     // Index
    {0, 60, 4},       // Temporal
    {-512, 1024, 1},  // SpatialCoord
    {0, 400, 1},      // ScalePercent
    {-360, 720, 1},   // RotationDeg
    {-180, 180, 1},   // SkewDeg
    {0, 100, 1},      // Opacity
    {0, 1, 255},      // ColorChannel
    {0, 1, 100},      // EasingTangent
    {-512, 512, 1},   // Expansion
    {0, 100, 1},      // TrimPercent
    {0, 512, 1},      // FontSize
    {-1000, 1000, 1}, // Generic
}};

std::size_t type_index(ParamType t) {
    auto i = static_cast<std::size_t>(t);
    if (i >= kParamTypeCount)
        throw Error(ErrorCode::UnknownParamType, "", "parameter type " + std::to_string(i));
    return i;
}

double parse_double(std::string_view s, int line) {
    double x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorCode::SchemaViolation, "vocab:" + std::to_string(line),
                    "bad number '" + std::string(s) + "'");
    return x;
}

std::int64_t parse_int(std::string_view s, int line) {
    std::int64_t x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(ErrorCode::SchemaViolation, "vocab:" + std::to_string(line),
                    "bad integer '" + std::string(s) + "'");
    return x;
}

std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::int64_t grid_floor(double x, double scale) {
    const double y = x * scale;
    const double r = std::round(y);
    if (std::fabs(y - r) <= 1e-9 * std::max(1.0, std::fabs(y))) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(y));
}

TokenId TypeRegion::last() const { return offset + grid_floor(max, scale); }

std::uint64_t QuantizeCounters::total() const {
    std::uint64_t n = 0;
    for (auto c : clamped) n += c;
    return n;
}

const std::array<RangeSpec, kParamTypeCount>& default_ranges() { return kDefaultRanges; }

VocabSpec VocabSpec::pack(const std::array<RangeSpec, kParamTypeCount>& ranges,
                          std::size_t text_size, std::string version) {
    VocabSpec v;
    v.version_ = std::move(version);
    TokenId cursor = static_cast<TokenId>(kCommandKindCount);
    for (std::size_t i = 0; i < kParamTypeCount; ++i) {
        const auto& r = ranges[i];
        if (!(r.scale > 0) || !(r.max >= r.min))
            throw Error(ErrorCode::SchemaViolation, std::string(to_string(kAllParamTypes[i])),
                        "invalid range");
        TypeRegion reg;
        reg.type = kAllParamTypes[i];
        reg.scale = r.scale;
        reg.min = r.min;
        reg.max = r.max;
        reg.pad = cursor;
        reg.offset = cursor + 1 - grid_floor(r.min, r.scale);
        v.regions_[i] = reg;
        cursor = reg.last() + 1;
    }
    v.text_base_ = cursor;
    v.text_size_ = text_size;
    return v;
}

const VocabSpec& VocabSpec::default_spec() {
    static const VocabSpec spec = pack(kDefaultRanges, kDefaultTextSize, "1");
    return spec;
}

const TypeRegion& VocabSpec::region(ParamType t) const { return regions_[type_index(t)]; }

std::optional<CommandKind> VocabSpec::command_at(TokenId tok) const {
    if (tok < 0 || tok >= static_cast<TokenId>(kCommandKindCount)) return std::nullopt;
    return static_cast<CommandKind>(tok);
}

std::optional<ParamType> VocabSpec::type_at(TokenId tok) const {
    // Regions are packed in ascending order.
    auto it = std::upper_bound(regions_.begin(), regions_.end(), tok,
                               [](TokenId t, const TypeRegion& r) { return t < r.pad; });
    if (it == regions_.begin()) return std::nullopt;
    --it;
    if (it->contains(tok)) return it->type;
    return std::nullopt;
}

std::string VocabSpec::to_text() const {
    std::ostringstream out;
    out << "version " << version_ << "\n";
    for (std::size_t i = 0; i < kCommandKindCount; ++i)
        out << "CMD " << to_string(static_cast<CommandKind>(i)) << " " << i << "\n";
    for (const auto& r : regions_)
        out << "TYPE " << to_string(r.type) << " " << r.offset << " " << format_number(r.scale) << " "
            << format_number(r.min) << " " << format_number(r.max) << " " << r.pad << "\n";
    out << "TEXT " << text_base_ << " " << text_size_ << "\n";
    return out.str();
}

VocabSpec VocabSpec::parse(std::string_view text) {
    std::array<RangeSpec, kParamTypeCount> ranges{};
    std::array<std::optional<TypeRegion>, kParamTypeCount> declared{};
    std::optional<std::string> version;
    std::optional<std::pair<TokenId, std::size_t>> text_region;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::string> f;
        for (std::string w; ls >> w;) f.push_back(w);
        const auto where = "vocab:" + std::to_string(lineno);
        if (f[0] == "version" && f.size() == 2) {
            version = f[1];
        } else if (f[0] == "CMD" && f.size() == 3) {
            auto k = command_kind_from_string(f[1]);
            if (!k || static_cast<TokenId>(*k) != parse_int(f[2], lineno))
                throw Error(ErrorCode::SchemaViolation, where, "command table mismatch: " + line);
        } else if (f[0] == "TYPE" && f.size() == 7) {
            auto t = param_type_from_string(f[1]);
            if (!t) throw Error(ErrorCode::UnknownParamType, where, f[1]);
            TypeRegion r;
            r.type = *t;
            r.offset = parse_int(f[2], lineno);
            r.scale = parse_double(f[3], lineno);
            r.min = parse_double(f[4], lineno);
            r.max = parse_double(f[5], lineno);
            r.pad = parse_int(f[6], lineno);
            declared[static_cast<std::size_t>(*t)] = r;
            ranges[static_cast<std::size_t>(*t)] = RangeSpec{r.min, r.max, r.scale};
        } else if (f[0] == "TEXT" && f.size() == 3) {
            text_region = {parse_int(f[1], lineno),
                           static_cast<std::size_t>(parse_int(f[2], lineno))};
        } else {
            throw Error(ErrorCode::SchemaViolation, where, "unrecognised line: " + line);
        }
    }
    if (!version) throw Error(ErrorCode::SchemaViolation, "vocab", "missing version line");
    if (!text_region) throw Error(ErrorCode::SchemaViolation, "vocab", "missing TEXT line");
    for (std::size_t i = 0; i < kParamTypeCount; ++i)
        if (!declared[i])
            throw Error(ErrorCode::SchemaViolation, "vocab",
                        "missing TYPE " + std::string(to_string(kAllParamTypes[i])));
    // Offsets and pads are derived data; a file that disagrees with the
    // packing rule was edited by hand or written by something else.
    VocabSpec v = pack(ranges, text_region->second, *version);
    for (std::size_t i = 0; i < kParamTypeCount; ++i)
        if (!(v.regions_[i] == *declared[i]))
            throw Error(ErrorCode::SchemaViolation, "vocab",
                        "TYPE " + std::string(to_string(kAllParamTypes[i])) +
                            " offsets disagree with packing");
    if (v.text_base_ != text_region->first)
        throw Error(ErrorCode::SchemaViolation, "vocab", "TEXT base disagrees with packing");
    return v;
}

VocabSpec VocabSpec::load(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, file, "cannot open vocabulary file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void VocabSpec::save(const std::string& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, file, "cannot write vocabulary file");
    out << to_text();
}

TokenId quantize(ParamValue x, ParamType t, const VocabSpec& v, QuantizeCounters* counters) {
    const TypeRegion& r = v.region(t);
    if (!x) return r.pad;
    double val = *x;
    if (!std::isfinite(val))
        throw Error(ErrorCode::SchemaViolation, "", "non-finite value for " + std::string(to_string(t)));
    if (val < r.min || val > r.max) {
        val = std::clamp(val, r.min, r.max);
        if (counters) ++counters->clamped[static_cast<std::size_t>(t)];
    }
    const TokenId tok = grid_floor(val, r.scale) + r.offset;
    return std::clamp(tok, r.first(), r.last());
}

ParamValue dequantize(TokenId tok, ParamType t, const VocabSpec& v,
                      std::optional<std::size_t> position) {
    const TypeRegion& r = v.region(t);
    if (tok == r.pad) return PAD_VAL;
    if (tok < r.first() || tok > r.last())
        throw Error(ErrorCode::TokenOutOfRange, std::string(to_string(t)),
                    "token " + std::to_string(tok) + " outside the " + std::string(to_string(t)) +
                        " region",
                    position);
    return static_cast<double>(tok - r.offset) / r.scale;
}

void CorpusStats::merge(const CorpusStats& other) {
    for (std::size_t i = 0; i < kParamTypeCount; ++i)
        values[i].insert(values[i].end(), other.values[i].begin(), other.values[i].end());
}

std::size_t CorpusStats::count() const {
    std::size_t n = 0;
    for (const auto& v : values) n += v.size();
    return n;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw Error(ErrorCode::EmptyStats, "", "quantile of an empty sample");
    std::sort(xs.begin(), xs.end());
    q = std::clamp(q, 0.0, 1.0);
    const double h = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

VocabSpec build_vocab(const CorpusStats& stats, const BuildConfig& cfg) {
    if (!(cfg.q_lo >= 0 && cfg.q_lo <= cfg.q_hi && cfg.q_hi <= 1))
        throw Error(ErrorCode::SchemaViolation, "", "quantiles must satisfy 0 <= q_lo <= q_hi <= 1");
    auto ranges = kDefaultRanges;
    for (std::size_t i = 0; i < kParamTypeCount; ++i) {
        const ParamType t = kAllParamTypes[i];
        const auto& obs = stats.values[i];
        if (obs.empty()) {
            if (!cfg.default_missing)
                throw Error(ErrorCode::EmptyStats, std::string(to_string(t)), "no observations");
            continue;
        }
        auto& r = ranges[i];
        if (is_discrete(t)) {
            auto [mn, mx] = std::minmax_element(obs.begin(), obs.end());
            r.min = std::min(r.min, std::floor(*mn));
            r.max = std::max(r.max, std::ceil(*mx));
            continue;
        }
        const double lo = quantile(obs, cfg.q_lo);
        const double hi = quantile(obs, cfg.q_hi);
        std::int64_t lo_idx = grid_floor(lo, r.scale);
        std::int64_t hi_idx = grid_floor(hi, r.scale);
        if (static_cast<double>(hi_idx) < hi * r.scale &&
            std::fabs(hi * r.scale - static_cast<double>(hi_idx)) > 1e-9 * std::max(1.0, std::fabs(hi)))
            ++hi_idx;
        r.min = static_cast<double>(lo_idx) / r.scale;
        r.max = static_cast<double>(hi_idx) / r.scale;
    }
    if (ranges == kDefaultRanges && cfg.text_size == VocabSpec::kDefaultTextSize)
        return VocabSpec::default_spec();
    VocabSpec provisional = VocabSpec::pack(ranges, cfg.text_size, "1");
    return VocabSpec::pack(ranges, cfg.text_size, "1-" + fnv1a_hex(provisional.to_text()));
}

}  // namespace lottie
