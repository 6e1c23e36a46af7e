#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/tokenizer.hpp"

namespace lottie {

namespace {

enum class Phase { Params, Texts, Children };

// Reads from an in-memory CommandSeq. Positions are command indices.
class CommandSource {
  public:
    explicit CommandSource(const CommandSeq& c) : c_(c) {}

    std::optional<CommandKind> peek() const {
        if (next_ >= c_.size()) return std::nullopt;
        return c_[next_].kind;
    }
    CommandKind begin(std::optional<CommandKind> expected) {
        if (next_ >= c_.size())
            throw Error(ErrorCode::UnbalancedNesting, "", "unexpected end of command sequence", next_);
        const auto k = c_[next_].kind;
        if (expected && k != *expected)
            throw Error(ErrorCode::UnbalancedNesting, "",
                        "expected " + std::string(to_string(*expected)) + ", got " +
                            std::string(to_string(k)),
                        next_);
        cur_ = &c_[next_];
        pos_ = next_++;
        param_i_ = text_i_ = 0;
        return k;
    }
    ParamValue param(ParamType t) {
        if (param_i_ >= cur_->params.size())
            throw Error(ErrorCode::ArityMismatch, "", missing("parameter", t), pos_);
        const auto& p = cur_->params[param_i_++];
        if (p.type != t)
            throw Error(ErrorCode::ArityMismatch, "",
                        std::string(to_string(cur_->kind)) + " parameter " +
                            std::to_string(param_i_ - 1) + " has type " +
                            std::string(to_string(p.type)) + ", expected " +
                            std::string(to_string(t)),
                        pos_);
        return p.value;
    }
    std::optional<std::string> text() {
        if (text_i_ >= cur_->texts.size())
            throw Error(ErrorCode::ArityMismatch, "", missing("text group", std::nullopt), pos_);
        return cur_->texts[text_i_++].value;
    }
    void finish() {
        if (param_i_ != cur_->params.size() || text_i_ != cur_->texts.size())
            throw Error(ErrorCode::ArityMismatch, "",
                        std::string(to_string(cur_->kind)) + " carries " +
                            std::to_string(cur_->params.size()) + " parameters and " +
                            std::to_string(cur_->texts.size()) + " text groups, schema consumed " +
                            std::to_string(param_i_) + " and " + std::to_string(text_i_),
                        pos_);
    }
    std::size_t position() const { return pos_; }
    std::size_t next_position() const { return next_; }

  private:
    std::string missing(const char* what, std::optional<ParamType> t) const {
        std::string s = std::string(to_string(cur_->kind)) + " is missing a " + what;
        if (t) s += " of type " + std::string(to_string(*t));
        return s;
    }

    const CommandSeq& c_;
    std::size_t next_ = 0;
    std::size_t pos_ = 0;
    const Command* cur_ = nullptr;
    std::size_t param_i_ = 0, text_i_ = 0;
};

// Reads directly from token ids. Positions are token indices.
class TokenSource {
  public:
    TokenSource(const std::vector<TokenId>& ids, const VocabSpec& v, const TextTokenizer& tt)
        : ids_(ids), v_(v), tt_(tt) {}

    std::optional<CommandKind> peek() const {
        if (next_ >= ids_.size()) return std::nullopt;
        auto k = v_.command_at(ids_[next_]);
        if (!k)
            throw Error(ErrorCode::TokenOutOfRange, "command",
                        "token " + std::to_string(ids_[next_]) + " where a command was expected",
                        next_);
        return k;
    }
    CommandKind begin(std::optional<CommandKind> expected) {
        if (next_ >= ids_.size())
            throw Error(ErrorCode::UnbalancedNesting, "", "unexpected end of token sequence", next_);
        const auto k = *peek();
        if (expected && k != *expected)
            throw Error(ErrorCode::UnbalancedNesting, "",
                        "expected " + std::string(to_string(*expected)) + ", got " +
                            std::string(to_string(k)),
                        next_);
        pos_ = next_++;
        return k;
    }
    ParamValue param(ParamType t) {
        if (next_ >= ids_.size())
            throw Error(ErrorCode::UnbalancedNesting, "", "sequence ends inside a command", next_);
        pos_ = next_++;
        return dequantize(ids_[pos_], t, v_, pos_);
    }
    std::optional<std::string> text() {
        const auto count = param(ParamType::Count);
        if (!count) return std::nullopt;
        const auto n = static_cast<std::size_t>(*count);
        const std::size_t start = next_;
        std::vector<std::uint32_t> local;
        local.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (next_ >= ids_.size())
                throw Error(ErrorCode::UnbalancedNesting, "", "sequence ends inside a text group", next_);
            const TokenId tok = ids_[next_];
            if (!v_.is_text(tok) || tok - v_.text_base() >= static_cast<TokenId>(tt_.vocab_size()))
                throw Error(ErrorCode::TokenOutOfRange, "text",
                            "token " + std::to_string(tok) + " outside the text region", next_);
            local.push_back(static_cast<std::uint32_t>(tok - v_.text_base()));
            pos_ = next_++;
        }
        try {
            return tt_.decode(local);
        } catch (const Error& e) {
            throw Error(e.code(), "text", e.what(), start + e.position().value_or(0));
        }
    }
    void finish() {}
    std::size_t position() const { return pos_; }
    std::size_t next_position() const { return next_; }

  private:
    const std::vector<TokenId>& ids_;
    const VocabSpec& v_;
    const TextTokenizer& tt_;
    std::size_t next_ = 0;
    std::size_t pos_ = 0;
};

template <class Src, class T>
void read_node(Src& src, T& node, CommandKind kind);

template <class Src>
class Reader {
  public:
    explicit Reader(Src& src) : src_(src) {}

    Phase phase = Phase::Params;

    void num(std::string_view key, double& f, ParamType t) {
        if (phase == Phase::Params) f = required(src_.param(t), key);
    }
    void num(std::string_view, std::optional<double>& f, ParamType t) {
        if (phase == Phase::Params) f = src_.param(t);
    }
    void integer(std::string_view, std::optional<std::int64_t>& f, ParamType t) {
        if (phase != Phase::Params) return;
        auto v = src_.param(t);
        f = v ? std::optional<std::int64_t>(std::llround(*v)) : std::nullopt;
    }
    void flag(std::string_view, std::optional<bool>& f, FlagStyle) {
        if (phase != Phase::Params) return;
        auto v = src_.param(ParamType::BinaryFlag);
        f = v ? std::optional<bool>(*v != 0) : std::nullopt;
    }
    void text(std::string_view key, std::string& f) {
        if (phase == Phase::Texts) {
            auto s = src_.text();
            if (!s) arity(std::string(key) + " is required");
            f = std::move(*s);
        }
    }
    void text(std::string_view, std::optional<std::string>& f) {
        if (phase == Phase::Texts) f = src_.text();
    }
    void code(std::string_view key, std::optional<std::string>& f, const CodeTable& table) {
        if (phase == Phase::Params) {
            auto v = src_.param(ParamType::SmallEnum);
            if (!v) {
                f.reset();
                return;
            }
            const auto idx = static_cast<std::size_t>(*v);
            if (idx >= table.entries.size())
                throw Error(ErrorCode::TokenOutOfRange, std::string(key),
                            "code " + std::to_string(idx) + " outside its table", src_.position());
            if (table.allow_custom && idx == 0) {
                f = std::string();
                custom_pending_ = true;
            } else {
                f = std::string(table.entries[idx]);
            }
        } else if (phase == Phase::Texts && custom_pending_ && f) {
            custom_pending_ = false;
            auto s = src_.text();
            if (!s) arity(std::string(key) + " custom value is required");
            for (std::size_t i = 1; i < table.entries.size(); ++i)
                if (table.entries[i] == *s)
                    throw Error(ErrorCode::ArityMismatch, std::string(key),
                                "custom value duplicates table entry", src_.position());
            f = std::move(*s);
        }
    }
    template <class V>
    void prop(std::string_view key, std::optional<Animated<V>>& f, ParamType t, Form) {
        animated(key, f, t);
    }
    void position(std::string_view key, std::optional<Position>& f) {
        if (phase == Phase::Params) {
            auto split = src_.param(ParamType::BinaryFlag);
            if (!split) {
                f.reset();
            } else if (*split == 0) {
                std::optional<AnimatedValue> p;
                animated(key, p, ParamType::SpatialCoord);
                f = std::move(required_prop(p, key));
            } else {
                std::optional<AnimatedValue> x, y, z;
                animated(key, x, ParamType::SpatialCoord);
                animated(key, y, ParamType::SpatialCoord);
                animated(key, z, ParamType::SpatialCoord);
                SplitPosition sp;
                sp.x = std::move(required_prop(x, key));
                sp.y = std::move(required_prop(y, key));
                sp.z = std::move(z);
                f = std::move(sp);
            }
        } else if (phase == Phase::Children && f) {
            if (auto* p = std::get_if<AnimatedValue>(&*f)) {
                read_keyframes(*p, ParamType::SpatialCoord);
            } else {
                auto& sp = std::get<SplitPosition>(*f);
                read_keyframes(sp.x, ParamType::SpatialCoord);
                read_keyframes(sp.y, ParamType::SpatialCoord);
                if (sp.z) read_keyframes(*sp.z, ParamType::SpatialCoord);
            }
        }
    }
    void numbers(std::string_view, std::optional<Vec>& f, ParamType t) {
        if (phase == Phase::Params) f = vec_block(t);
    }
    template <class T>
    void object(std::string_view, std::optional<T>& f) {
        if (phase != Phase::Children) return;
        if (src_.peek() == T::kCommand) {
            src_.begin(T::kCommand);
            f.emplace();
            read_node(src_, *f, T::kCommand);
        }
    }
    template <class T>
    void list(std::string_view, std::vector<T>& f, const ListOpts&) {
        if (phase != Phase::Children) return;
        for (;;) {
            auto k = src_.peek();
            if (!k) break;
            if constexpr (std::is_same_v<T, Layer>) {
                if (!is_layer_command(*k)) break;
            } else {
                if (*k != T::kCommand) break;
            }
            src_.begin(*k);
            f.emplace_back();
            read_node(src_, f.back(), *k);
        }
    }
    void shapes(std::string_view, std::vector<ShapeNode>& f, bool terminated) {
        if (phase != Phase::Children) return;
        for (;;) {
            auto k = src_.peek();
            if (!k || !is_shape_command(*k)) break;
            src_.begin(*k);
            f.emplace_back();
            read_node(src_, f.back(), *k);
        }
        if (terminated) src_.begin(CommandKind::GroupEnd);
    }
    void opaque(std::string_view, std::optional<Json>&) {}

  private:
    [[noreturn]] void arity(const std::string& msg) const {
        throw Error(ErrorCode::ArityMismatch, "", msg, src_.position());
    }
    double required(ParamValue v, std::string_view key) const {
        if (!v) arity(std::string(key) + " is required");
        return *v;
    }
    template <class A>
    A& required_prop(std::optional<A>& a, std::string_view key) const {
        if (!a) arity(std::string(key) + " is required");
        return *a;
    }
    std::size_t count(std::string_view key) {
        return static_cast<std::size_t>(required(src_.param(ParamType::Count), key));
    }

    std::optional<Vec> vec_block(ParamType t) {
        auto n = src_.param(ParamType::Count);
        if (!n) return std::nullopt;
        Vec v(static_cast<std::size_t>(*n));
        for (auto& x : v) x = required(src_.param(t), "value");
        return v;
    }
    std::optional<Bezier> bezier_block() {
        auto n = src_.param(ParamType::Count);
        if (!n) return std::nullopt;
        Bezier b;
        auto closed = src_.param(ParamType::BinaryFlag);
        if (closed) b.closed = *closed != 0;
        const auto count = static_cast<std::size_t>(*n);
        b.vertices.resize(count);
        b.in_tangents.resize(count);
        b.out_tangents.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            for (Point* p : {&b.vertices[i], &b.in_tangents[i], &b.out_tangents[i]}) {
                p->x = required(src_.param(ParamType::SpatialCoord), "vertex");
                p->y = required(src_.param(ParamType::SpatialCoord), "vertex");
            }
        }
        return b;
    }
    template <class V>
    std::optional<V> value_block(ParamType t) {
        if constexpr (std::is_same_v<V, Bezier>) return bezier_block();
        else return vec_block(t);
    }
    std::optional<Tangent> tangent_block() {
        auto n = src_.param(ParamType::Count);
        if (!n) return std::nullopt;
        Tangent tg;
        tg.x.resize(static_cast<std::size_t>(*n));
        tg.y.resize(tg.x.size());
        for (auto& x : tg.x) x = required(src_.param(ParamType::EasingTangent), "easing");
        for (auto& y : tg.y) y = required(src_.param(ParamType::EasingTangent), "easing");
        return tg;
    }

    template <class V>
    void animated(std::string_view key, std::optional<Animated<V>>& f, ParamType t) {
        if (phase == Phase::Params) {
            auto header = src_.param(ParamType::BinaryFlag);
            if (!header) {
                f.reset();
            } else if (*header == 0) {
                auto v = value_block<V>(t);
                if (!v) arity(std::string(key) + " static value is required");
                f = Animated<V>{std::move(*v), std::nullopt, Json()};
            } else {
                f = Animated<V>{KeyframeList<V>(count(key)), std::nullopt, Json()};
            }
        } else if (phase == Phase::Children && f) {
            read_keyframes(*f, t);
        }
    }

    template <class V>
    void read_keyframes(Animated<V>& a, ParamType t) {
        auto* frames = a.keyframes();
        if (!frames) return;
        for (auto& k : *frames) {
            src_.begin(CommandKind::Keyframe);
            k.time = required(src_.param(ParamType::Temporal), "t");
            k.hold = required(src_.param(ParamType::BinaryFlag), "h") != 0;
            k.start = value_block<V>(t);
            k.end = value_block<V>(t);
            k.ease_in = tangent_block();
            k.ease_out = tangent_block();
            k.spatial_in = vec_block(ParamType::SpatialCoord);
            k.spatial_out = vec_block(ParamType::SpatialCoord);
            src_.finish();
        }
    }

    Src& src_;
    bool custom_pending_ = false;
};

template <class Src, class T>
void read_node(Src& src, T& node, CommandKind kind) {
    if constexpr (std::is_same_v<T, Layer>) {
        node.kind = *layer_kind_from_command(kind);
        node.payload = make_payload(node.kind);
    } else if constexpr (std::is_same_v<T, ShapeNode>) {
        node.item = *make_shape_item(kind);
    }
    Reader<Src> r(src);
    r.phase = Phase::Params;
    T::reflect(node, r);
    r.phase = Phase::Texts;
    T::reflect(node, r);
    src.finish();
    r.phase = Phase::Children;
    T::reflect(node, r);
    if constexpr (std::is_same_v<T, Layer>) src.begin(CommandKind::End);
}

template <class Src>
Animation read_animation(Src& src) {
    std::optional<CommandKind> first;
    try {
        first = src.peek();
    } catch (const Error& e) {
        throw Error(ErrorCode::MissingMeta, "", "sequence does not start with META", 0);
    }
    if (first != CommandKind::Meta)
        throw Error(ErrorCode::MissingMeta, "", "sequence does not start with META", 0);
    src.begin(CommandKind::Meta);
    Animation a;
    read_node(src, a, CommandKind::Meta);
    if (auto extra = src.peek())
        throw Error(ErrorCode::UnbalancedNesting, "",
                    "unexpected " + std::string(to_string(*extra)) + " after the document",
                    src.next_position());
    auto issues = check_invariants(a);
    if (!issues.empty())
        throw Error(ErrorCode::SchemaViolation, issues.front().path, issues.front().message);
    return a;
}

void put_u32(std::string& out, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

struct ByteReader {
    std::string_view in;
    std::size_t pos = 0;
    std::uint32_t u32() {
        if (pos + 4 > in.size()) throw Error(ErrorCode::MalformedJson, "tokens", "truncated binary token file");
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
        pos += 4;
        return x;
    }
    std::string str() {
        const auto n = u32();
        if (pos + n > in.size()) throw Error(ErrorCode::MalformedJson, "tokens", "truncated binary token file");
        std::string s(in.substr(pos, n));
        pos += n;
        return s;
    }
};

}  // namespace

Animation from_command_sequence(const CommandSeq& c) {
    CommandSource src(c);
    return read_animation(src);
}

TokenSeq encode_commands(const CommandSeq& c, const VocabSpec& v, const TextTokenizer& tt,
                         QuantizeCounters* counters) {
    if (tt.vocab_size() > v.text_size())
        throw Error(ErrorCode::VersionMismatch, "",
                    "text tokenizer '" + tt.id() + "' needs " + std::to_string(tt.vocab_size()) +
                        " ids, the vocabulary reserves " + std::to_string(v.text_size()));
    TokenSeq out;
    out.vocab_version = v.version();
    out.tokenizer_id = tt.id();
    const auto count_max = v.region(ParamType::Count).max;
    for (const auto& cmd : c) {
        out.ids.push_back(v.command_id(cmd.kind));
        for (const auto& p : cmd.params) out.ids.push_back(quantize(p.value, p.type, v, counters));
        for (const auto& t : cmd.texts) {
            if (!t.value) {
                out.ids.push_back(quantize(PAD_VAL, ParamType::Count, v));
                continue;
            }
            const auto local = tt.encode(*t.value);
            if (static_cast<double>(local.size()) > count_max)
                throw Error(ErrorCode::TextTooLong, std::string(t.key),
                            std::to_string(local.size()) + " text tokens exceed the count limit");
            out.ids.push_back(quantize(static_cast<double>(local.size()), ParamType::Count, v));
            for (auto id : local) out.ids.push_back(v.text_base() + id);
        }
    }
    return out;
}

TokenSeq encode(const Animation& a, const VocabSpec& v, const TextTokenizer& tt,
                QuantizeCounters* counters) {
    return encode_commands(to_command_sequence(a), v, tt, counters);
}

Animation decode(const TokenSeq& t, const VocabSpec& v, const TextTokenizer& tt) {
    if (t.vocab_version != v.version())
        throw Error(ErrorCode::VersionMismatch, "",
                    "tokens use vocabulary '" + t.vocab_version + "', loaded '" + v.version() + "'");
    if (t.tokenizer_id != tt.id())
        throw Error(ErrorCode::VersionMismatch, "",
                    "tokens use text tokenizer '" + t.tokenizer_id + "', loaded '" + tt.id() + "'");
    TokenSource src(t.ids, v, tt);
    return read_animation(src);
}

std::string write_token_text(const std::vector<TokenSeq>& samples) {
    std::string out;
    if (samples.empty()) return out;
    out += "#lottie-tok v" + samples.front().vocab_version + " tt=" + samples.front().tokenizer_id + "\n";
    for (const auto& s : samples) {
        if (s.vocab_version != samples.front().vocab_version || s.tokenizer_id != samples.front().tokenizer_id)
            throw Error(ErrorCode::VersionMismatch, "", "samples in one file must share provenance");
        for (std::size_t i = 0; i < s.ids.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(s.ids[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<TokenSeq> read_token_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("#lottie-tok v", 0) != 0)
        throw Error(ErrorCode::MalformedJson, "tokens", "missing #lottie-tok header");
    const auto sp = line.find(" tt=");
    if (sp == std::string::npos) throw Error(ErrorCode::MalformedJson, "tokens", "header lacks tt=");
    const std::string version = line.substr(13, sp - 13);
    const std::string tokenizer = line.substr(sp + 4);
    std::vector<TokenSeq> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        TokenSeq s{{}, version, tokenizer};
        std::istringstream ls(line);
        std::string w;
        while (ls >> w) {
            try {
                std::size_t used = 0;
                s.ids.push_back(std::stoll(w, &used));
                if (used != w.size()) throw std::invalid_argument(w);
            } catch (const std::exception&) {
                throw Error(ErrorCode::MalformedJson, "tokens", "bad token id '" + w + "'");
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string write_token_binary(const std::vector<TokenSeq>& samples) {
    std::string out = "LTOK";
    const std::string version = samples.empty() ? "" : samples.front().vocab_version;
    const std::string tokenizer = samples.empty() ? "" : samples.front().tokenizer_id;
    put_u32(out, static_cast<std::uint32_t>(version.size()));
    out += version;
    put_u32(out, static_cast<std::uint32_t>(tokenizer.size()));
    out += tokenizer;
    for (const auto& s : samples) {
        if (s.vocab_version != version || s.tokenizer_id != tokenizer)
            throw Error(ErrorCode::VersionMismatch, "", "samples in one file must share provenance");
        put_u32(out, static_cast<std::uint32_t>(s.ids.size()));
        for (auto id : s.ids) put_u32(out, static_cast<std::uint32_t>(id));
    }
    return out;
}

std::vector<TokenSeq> read_token_binary(std::string_view bytes) {
    if (bytes.substr(0, 4) != "LTOK") throw Error(ErrorCode::MalformedJson, "tokens", "missing LTOK magic");
    ByteReader r{bytes, 4};
    const std::string version = r.str();
    const std::string tokenizer = r.str();
    std::vector<TokenSeq> out;
    while (r.pos < bytes.size()) {
        TokenSeq s{{}, version, tokenizer};
        const auto n = r.u32();
        s.ids.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) s.ids.push_back(r.u32());
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<TokenSeq> read_token_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, path, "cannot open token file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    if (data.rfind("LTOK", 0) == 0) return read_token_binary(data);
    return read_token_text(data);
}

EfficiencyReport token_stats(std::string_view raw_json, const TokenSeq& t, const TextTokenizer& tt) {
    EfficiencyReport r;
    r.raw_tokens = tt.encode(raw_json).size();
    const Json parsed = Json::parse(raw_json);
    r.raw_tokens_minified = tt.encode(parsed.dump()).size();
    const auto dump = dump_commands(to_command_sequence(parse_lottie_json(parsed)));
    r.structured_text_tokens = tt.encode(dump).size();
    r.command_tokens = t.ids.size();
    if (r.command_tokens) {
        r.compression = static_cast<double>(r.raw_tokens) / static_cast<double>(r.command_tokens);
        r.compression_minified =
            static_cast<double>(r.raw_tokens_minified) / static_cast<double>(r.command_tokens);
    }
    return r;
}

}  // namespace lottie
