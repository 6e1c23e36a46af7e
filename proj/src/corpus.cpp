#include "lottie/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/pipeline.hpp"
#include "lottie/tokenizer.hpp"

namespace lottie {

namespace {

std::size_t depth_of(const Animation& a, const std::vector<Layer>& layers, std::set<std::string>& open) {
    std::size_t deepest = 0;
    for (const auto& l : layers) {
        const auto* p = std::get_if<PrecompPayload>(&l.payload);
        if (!p || open.count(p->ref_id)) continue;
        const auto* asset = a.find_asset(p->ref_id);
        if (!asset) continue;
        open.insert(p->ref_id);
        deepest = std::max(deepest, depth_of(a, asset->layers, open));
        open.erase(p->ref_id);
    }
    return 1 + deepest;
}

void count_kinds(const std::vector<Layer>& layers, std::map<std::string, std::size_t>& out) {
    for (const auto& l : layers) ++out[std::string(to_string(l.kind))];
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

}  // namespace

std::size_t composition_depth(const Animation& a) {
    std::set<std::string> open;
    return depth_of(a, a.layers, open);
}

FileStats file_stats(std::string_view json_text, const VocabSpec& v, const TextTokenizer& tt) {
    FileStats fs;
    Animation a;
    try {
        ParseOptions opts;
        opts.admit_excluded_layers = true;
        opts.validate = false;
        a = parse_lottie(json_text, opts);
    } catch (const Error& e) {
        fs.error = e.what();
        return fs;
    }
    count_kinds(a.layers, fs.layer_kinds);
    for (const auto& asset : a.assets) count_kinds(asset.layers, fs.layer_kinds);
    fs.root_layers = a.layers.size();
    fs.depth = composition_depth(a);
    fs.duration_seconds = a.frame_rate > 0 ? (a.out_point - a.in_point) / a.frame_rate : 0;
    try {
        auto cleaned = clean(a);
        if (cleaned.animation) {
            const auto seq = encode(normalize(*cleaned.animation), v, tt);
            fs.command_tokens = seq.ids.size();
            fs.raw_tokens_minified = token_stats(json_text, seq, tt).raw_tokens_minified;
        }
    } catch (const Error&) {
        // Not encodable: expressions or degenerate timing. Counted as not encoded.
    }
    return fs;
}

double StatsReport::kind_percent(std::string_view kind) const {
    if (layers == 0) return 0;
    auto it = layer_kinds.find(std::string(kind));
    return it == layer_kinds.end() ? 0 : 100.0 * static_cast<double>(it->second) / static_cast<double>(layers);
}

std::string StatsReport::to_text() const {
    std::string out;
    auto line = [&](std::string_view section, const std::string& key, const std::string& value) {
        out += std::string(section) + "\t" + key + "\t" + value + "\n";
    };
    line("files", "total", std::to_string(files));
    line("files", "failed", std::to_string(failed));
    line("layers", "total", std::to_string(layers));
    line("layers", "mean_per_file", fmt(layer_count_mean));
    line("layers", "max_per_file", std::to_string(layer_count_max));
    for (const auto& [k, n] : layer_kinds) line("layer_kind", k, std::to_string(n) + "\t" + fmt(kind_percent(k)));
    for (const auto& [d, n] : depth_histogram) line("depth", std::to_string(d), std::to_string(n));
    for (std::size_t i = 0; i < duration_histogram.size(); ++i) {
        std::string key = i == 0 ? "<" + fmt(kDurationEdges[0])
                          : i == kDurationEdges.size()
                              ? ">=" + fmt(kDurationEdges.back())
                              : fmt(kDurationEdges[i - 1]) + "-" + fmt(kDurationEdges[i]);
        line("duration_s", key, std::to_string(duration_histogram[i]));
    }
    line("tokens", "encoded_files", std::to_string(encoded_files));
    line("tokens", "command_tokens", std::to_string(command_tokens));
    line("tokens", "raw_tokens_minified", std::to_string(raw_tokens_minified));
    line("tokens", "mean_compression", fmt(mean_compression));
    return out;
}

StatsReport aggregate_stats(const std::vector<FileStats>& files) {
    StatsReport r;
    std::size_t parsed = 0, layer_sum = 0;
    double compression_sum = 0;
    for (const auto& f : files) {
        ++r.files;
        if (f.error) {
            ++r.failed;
            continue;
        }
        ++parsed;
        for (const auto& [k, n] : f.layer_kinds) {
            r.layer_kinds[k] += n;
            r.layers += n;
        }
        layer_sum += f.root_layers;
        r.layer_count_max = std::max(r.layer_count_max, f.root_layers);
        ++r.depth_histogram[f.depth];
        const auto bin = static_cast<std::size_t>(
            std::upper_bound(kDurationEdges.begin(), kDurationEdges.end(), f.duration_seconds) - kDurationEdges.begin());
        ++r.duration_histogram[bin];
        if (f.command_tokens && *f.command_tokens > 0) {
            ++r.encoded_files;
            r.command_tokens += *f.command_tokens;
            r.raw_tokens_minified += f.raw_tokens_minified;
            compression_sum += static_cast<double>(f.raw_tokens_minified) / static_cast<double>(*f.command_tokens);
        }
    }
    if (parsed) r.layer_count_mean = static_cast<double>(layer_sum) / static_cast<double>(parsed);
    if (r.encoded_files) r.mean_compression = compression_sum / static_cast<double>(r.encoded_files);
    return r;
}

StatsReport corpus_stats(const std::vector<std::string>& files, const VocabSpec& v, const TextTokenizer& tt) {
    auto sorted = files;
    std::sort(sorted.begin(), sorted.end());
    std::vector<FileStats> all;
    for (const auto& path : sorted) {
        std::ifstream in(path, std::ios::binary);
        FileStats fs;
        if (!in) {
            fs.error = "cannot open";
        } else {
            std::stringstream ss;
            ss << in.rdbuf();
            fs = file_stats(ss.str(), v, tt);
        }
        fs.file = path;
        all.push_back(std::move(fs));
    }
    return aggregate_stats(all);
}

}  // namespace lottie
