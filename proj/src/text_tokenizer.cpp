#include "lottie/text_tokenizer.hpp"

#include <fstream>
#include <sstream>

#include "lottie/error.hpp"

namespace lottie {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::vector<std::uint32_t> ByteTokenizer::encode(std::string_view text) const {
    std::vector<std::uint32_t> out;
    out.reserve(text.size());
    for (unsigned char c : text) out.push_back(c);
    return out;
}

std::string ByteTokenizer::decode(std::span<const std::uint32_t> ids) const {
    std::string out;
    out.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] > 255)
            throw Error(ErrorCode::TokenOutOfRange, "text", "byte id " + std::to_string(ids[i]), i);
        out.push_back(static_cast<char>(ids[i]));
    }
    return out;
}

const ByteTokenizer& byte_tokenizer() {
    static const ByteTokenizer tok;
    return tok;
}

TableTokenizer TableTokenizer::parse(std::string_view table_text) {
    TableTokenizer t;
    std::istringstream in{std::string(table_text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto where = "table:" + std::to_string(lineno);
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw Error(ErrorCode::SchemaViolation, where, "expected id<TAB>hex");
        std::uint32_t id = 0;
        try {
            id = static_cast<std::uint32_t>(std::stoul(line.substr(0, tab)));
        } catch (const std::exception&) {
            throw Error(ErrorCode::SchemaViolation, where, "bad id");
        }
        std::string hex = line.substr(tab + 1);
        if (hex.empty() || hex.size() % 2) throw Error(ErrorCode::SchemaViolation, where, "bad hex bytes");
        std::string piece;
        for (std::size_t i = 0; i < hex.size(); i += 2) {
            int hi = hex_digit(hex[i]), lo = hex_digit(hex[i + 1]);
            if (hi < 0 || lo < 0) throw Error(ErrorCode::SchemaViolation, where, "bad hex bytes");
            piece.push_back(static_cast<char>(hi * 16 + lo));
        }
        if (id >= t.pieces_.size()) t.pieces_.resize(id + 1);
        if (!t.pieces_[id].empty()) throw Error(ErrorCode::SchemaViolation, where, "duplicate id");
        if (!t.lookup_.emplace(piece, id).second)
            throw Error(ErrorCode::SchemaViolation, where, "duplicate byte sequence");
        t.max_piece_ = std::max(t.max_piece_, piece.size());
        t.pieces_[id] = std::move(piece);
    }
    for (std::size_t i = 0; i < t.pieces_.size(); ++i)
        if (t.pieces_[i].empty())
            throw Error(ErrorCode::SchemaViolation, "table", "id " + std::to_string(i) + " missing");
    for (int b = 0; b < 256; ++b)
        if (!t.lookup_.count(std::string(1, static_cast<char>(b))))
            throw Error(ErrorCode::SchemaViolation, "table",
                        "single byte " + std::to_string(b) + " has no id");
    std::uint64_t h = fnv1a(table_text);
    char buf[24];
    std::snprintf(buf, sizeof buf, "ext-%016llx", static_cast<unsigned long long>(h));
    t.id_ = buf;
    return t;
}

TableTokenizer TableTokenizer::load(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, file, "cannot open tokenizer table");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::vector<std::uint32_t> TableTokenizer::encode(std::string_view text) const {
    std::vector<std::uint32_t> out;
    std::size_t pos = 0;
    std::string key;
    while (pos < text.size()) {
        std::size_t len = std::min(max_piece_, text.size() - pos);
        for (; len > 0; --len) {
            key.assign(text.substr(pos, len));
            auto it = lookup_.find(key);
            if (it != lookup_.end()) {
                out.push_back(it->second);
                break;
            }
        }
        pos += len;  // len >= 1: every single byte is in the table
    }
    return out;
}

std::string TableTokenizer::decode(std::span<const std::uint32_t> ids) const {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] >= pieces_.size())
            throw Error(ErrorCode::TokenOutOfRange, "text", "table id " + std::to_string(ids[i]), i);
        out += pieces_[ids[i]];
    }
    return out;
}

std::shared_ptr<const TextTokenizer> make_text_tokenizer(std::string_view spec) {
    if (spec == "builtin" || spec == "byte")
        return std::shared_ptr<const TextTokenizer>(&byte_tokenizer(), [](const TextTokenizer*) {});
    constexpr std::string_view prefix = "external:";
    if (spec.substr(0, prefix.size()) == prefix)
        return std::make_shared<TableTokenizer>(TableTokenizer::load(std::string(spec.substr(prefix.size()))));
    throw Error(ErrorCode::SchemaViolation, "", "unknown text tokenizer '" + std::string(spec) + "'");
}

}  // namespace lottie
