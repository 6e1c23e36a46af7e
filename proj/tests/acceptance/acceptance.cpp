// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lottie/commands.hpp"
#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/lint.hpp"
#include "lottie/motion.hpp"
#include "lottie/pipeline.hpp"
#include "lottie/text_tokenizer.hpp"
#include "lottie/tokenizer.hpp"
#include "lottie/vocab.hpp"

using namespace lottie;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const VocabSpec& V() { return VocabSpec::default_spec(); }
const TextTokenizer& TT() { return byte_tokenizer(); }

Outcome token_round_trip() {
    std::vector<TokenSeq> seqs;
    for (std::uint64_t s = 0; s < 1000; ++s) seqs.push_back(testing::random_token_seq(s));
    const auto t0 = Clock::now();
    std::size_t ok = 0;
    for (const auto& t : seqs) {
        try {
            ok += encode(decode(t, V(), TT()), V(), TT()) == t;
        } catch (const Error&) {
        }
    }
    const double dt = seconds_since(t0);
    return {ok == seqs.size() && dt < 10, fmt("%zu/%zu fixed points in %.2f s (limit 10 s)", ok, seqs.size(), dt)};
}

Outcome animation_round_trip() {
    const auto corpus = testing::fixture_corpus(200, 1);
    const auto cov = testing::coverage(corpus);
    const bool covered = cov.layers.size() == 5 && cov.shapes.size() == testing::all_shape_commands().size() &&
                         cov.masks && cov.effects && cov.text;
    const auto t0 = Clock::now();
    std::size_t ok = 0;
    for (const auto& a : corpus) {
        try {
            // through JSON text, as a file would travel
            Animation in = parse_lottie(serialize_lottie(a));
            ok += canonical_equal(decode(encode(in, V(), TT()), V(), TT()), a, 1.0);
        } catch (const Error&) {
        }
    }
    const double dt = seconds_since(t0);
    return {covered && ok == corpus.size() && dt < 30,
            fmt("%zu/%zu canonical-equal at tol 1.0 in %.2f s (limit 30 s); coverage %zu layer kinds, %zu shape "
                "kinds, masks %d, effects %d, text %d",
                ok, corpus.size(), dt, cov.layers.size(), cov.shapes.size(), cov.masks, cov.effects, cov.text)};
}

Outcome quantization_bound() {
    testing::Rng rng(2024);
    std::size_t bad = 0;
    double worst = 0;
    for (int i = 0; i < 100000; ++i) {
        const ParamType t = kAllParamTypes[static_cast<std::size_t>(rng.below(kParamTypeCount))];
        const auto& r = V().region(t);
        const double x = rng.uni(r.min, r.max);
        const double err = std::fabs(*dequantize(quantize(x, t, V()), t, V()) - x);
        worst = std::max(worst, err * r.scale);
        bad += err > 1.0 / r.scale;
    }
    std::size_t grid = 0, grid_bad = 0;
    for (ParamType t : kAllParamTypes) {
        const auto& r = V().region(t);
        const auto steps = static_cast<std::int64_t>(std::llround((r.max - r.min) * r.scale));
        for (std::int64_t j = 0; j <= steps; ++j) {
            const double x = r.min + static_cast<double>(j) / r.scale;
            ++grid;
            grid_bad += *dequantize(quantize(x, t, V()), t, V()) != x;
        }
    }
    return {bad == 0 && grid_bad == 0,
            fmt("%zu/100000 random pairs over bound (worst %.3f steps); %zu/%zu grid points inexact", bad, worst,
                grid_bad, grid)};
}

Outcome disjointness() {
    std::vector<int> owners(static_cast<std::size_t>(V().size()), 0);
    for (std::size_t k = 0; k < kCommandKindCount; ++k) ++owners[k];
    for (const auto& r : V().regions())
        for (TokenId id = r.pad; id <= r.last(); ++id) ++owners[static_cast<std::size_t>(id)];
    for (TokenId id = V().text_base(); id < V().size(); ++id) ++owners[static_cast<std::size_t>(id)];
    std::size_t overlap = 0, gaps = 0;
    for (int n : owners) {
        overlap += n > 1;
        gaps += n == 0;
    }
    return {overlap == 0 && gaps == 0,
            fmt("%lld ids: %zu claimed twice, %zu unclaimed", static_cast<long long>(V().size()), overlap, gaps)};
}

// Exporters write about three decimals; the generator does not.
void round_numbers(Json& j) {
    if (j.is_number_float()) {
        j = std::round(j.get<double>() * 1000) / 1000;
    } else if (j.is_structured()) {
        for (auto& child : j) round_numbers(child);
    }
}

Outcome compression() {
    std::size_t cmd = 0, raw = 0, files = 0;
    double worst = 1e9;
    auto add = [&](const Animation& a) {
        Json j = to_json(a);
        round_numbers(j);
        const std::string minified = j.dump();
        const TokenSeq t = encode(parse_lottie(minified), V(), TT());
        const std::size_t bytes = TT().encode(minified).size();
        cmd += t.ids.size();
        raw += bytes;
        worst = std::min(worst, static_cast<double>(bytes) / static_cast<double>(t.ids.size()));
        ++files;
    };
    for (const auto& a : testing::fixture_corpus(200, 1)) add(a);
    for (const auto& a : testing::source_corpus(100, 5)) add(normalize(a));
    const double ratio = static_cast<double>(raw) / static_cast<double>(cmd);
    return {3 * cmd <= raw, fmt("%zu files, numbers at 3 decimals: %zu command tokens vs %zu minified bytes, "
                                "ratio %.2fx (need >= 3x; worst file %.2fx)",
                                files, cmd, raw, ratio, worst)};
}

bool times_in_range(const Animation& a, double lo, double hi) {
    CorpusStats stats;
    collect_stats(to_command_sequence(a), stats);
    for (double t : stats.values[static_cast<std::size_t>(ParamType::Temporal)])
        if (t < lo - 1e-9 || t > hi + 1e-9) return false;
    return true;
}

Outcome normalization() {
    std::size_t n = 0, canvas_bad = 0, time_bad = 0, idem_bad = 0;
    auto sources = testing::source_corpus(200, 9);
    for (const auto& a : testing::fixture_corpus(200, 1)) sources.push_back(a);
    for (const auto& src : sources) {
        ++n;
        Animation out = normalize(src);
        canvas_bad += !(out.width == 512 && out.height == 512);
        time_bad += !times_in_range(out, 0, 60);
        idem_bad += !(normalize(out) == out);
    }
    Animation wide = testing::clean_base();
    wide.width = 1920;
    wide.height = 1080;
    Animation w = normalize_spatial(wide);
    const auto& p = *std::get<AnimatedValue>(*w.layers[*find_normalize_root(w)].transform->position).static_value();
    const bool offset_ok = std::fabs(p[0]) < 1e-9 && std::fabs(p[1] - 112) < 1e-9;
    return {canvas_bad == 0 && time_bad == 0 && idem_bad == 0 && offset_ok,
            fmt("%zu files: %zu off-canvas, %zu with times outside [0,60], %zu not idempotent; 1920x1080 offset "
                "(%g, %g)",
                n, canvas_bad, time_bad, idem_bad, p[0], p[1])};
}

Outcome lint_mutations() {
    std::size_t exact = 0;
    std::string missed;
    for (const auto& m : testing::lint_mutations()) {
        Animation a = testing::clean_base();
        m.apply(a);
        auto d = lint(a);
        if (d.size() == 1 && d[0].code == m.code) {
            ++exact;
        } else {
            missed += " " + std::string(to_string(m.code));
        }
    }
    std::size_t clean_errors = 0;
    const auto corpus = testing::fixture_corpus(200, 1);
    for (const auto& a : corpus) clean_errors += has_errors(lint(a));
    clean_errors += has_errors(lint(testing::clean_base()));
    return {exact == kDiagCodeCount && clean_errors == 0,
            fmt("%zu/%zu codes raised alone by their mutation%s; %zu of %zu clean files with errors", exact,
                kDiagCodeCount, missed.empty() ? "" : (" (missed:" + missed + ")").c_str(), clean_errors,
                corpus.size() + 1)};
}

std::vector<Animation> static_bases() {
    std::vector<Animation> out;
    for (auto [w, h] : {std::pair{512.0, 512.0}, {1920.0, 1080.0}, {300.0, 900.0}}) {
        Animation a = testing::clean_base();
        a.width = w;
        a.height = h;
        out.push_back(normalize(a));
    }
    out.push_back(normalize(svg_to_static_lottie(
        R"s(<svg viewBox="0 0 100 100"><rect x="10" y="10" width="30" height="30" fill="#f00"/><circle cx="70" cy="70" r="20" fill="blue"/></svg>)s")));
    return out;
}

Outcome motion_loop() {
    std::size_t runs = 0, classified = 0, lint_bad = 0, nondeterministic = 0;
    std::string wrong;
    for (const auto& base : static_bases()) {
        for (std::size_t k = 0; k < kMotionKindCount; ++k) {
            const auto kind = static_cast<MotionKind>(k);
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                SynthParams p;
                p.seed = seed;
                Animation out = synth_basic_motion(base, kind, p);
                ++runs;
                if (classify(extract_signature(out)) == kind) {
                    ++classified;
                } else if (wrong.find(to_string(kind)) == std::string::npos) {
                    wrong += " " + std::string(to_string(kind));
                }
                lint_bad += has_errors(lint(out));
                nondeterministic += serialize_lottie(out) != serialize_lottie(synth_basic_motion(base, kind, p));
            }
        }
    }
    return {classified == runs && lint_bad == 0 && nondeterministic == 0,
            fmt("%zu/%zu synthesized files classify to their kind%s; %zu with lint errors; %zu non-deterministic",
                classified, runs, wrong.empty() ? "" : (" (wrong:" + wrong + ")").c_str(), lint_bad,
                nondeterministic)};
}

Outcome cluster_recovery() {
    std::vector<MotionSignature> sigs;
    std::vector<int> family;
    for (const auto& base : static_bases()) {
        for (std::uint64_t s = 0; s < 8; ++s) {
            SynthParams p;
            p.seed = s;
            sigs.push_back(extract_signature(synth_basic_motion(base, MotionKind::Rotate, p)));
            family.push_back(0);
            sigs.push_back(extract_signature(synth_basic_motion(base, MotionKind::Fade, p)));
            family.push_back(1);
        }
    }
    Clustering c = cluster_signatures(sigs, 2);
    // purity: each cluster counts its majority family
    std::map<std::size_t, std::array<std::size_t, 2>> counts;
    for (std::size_t i = 0; i < sigs.size(); ++i) ++counts[c.assignment[i]][static_cast<std::size_t>(family[i])];
    std::size_t majority = 0;
    for (const auto& [cl, n] : counts) majority += std::max(n[0], n[1]);
    const double purity = static_cast<double>(majority) / static_cast<double>(sigs.size());
    return {purity == 1.0 && counts.size() == 2,
            fmt("%zu signatures (rotation vs fade), k=2: purity %.3f over %zu clusters", sigs.size(), purity,
                counts.size())};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"token round trip", token_round_trip},
        {"animation round trip", animation_round_trip},
        {"quantization bound", quantization_bound},
        {"vocabulary disjointness", disjointness},
        {"compression", compression},
        {"normalization", normalization},
        {"lint mutations", lint_mutations},
        {"motion closed loop", motion_loop},
        {"cluster recovery", cluster_recovery},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed ? 1 : 0;
}
