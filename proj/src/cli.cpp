#include "lottie/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "lottie/commands.hpp"
#include "lottie/corpus.hpp"
#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/lint.hpp"
#include "lottie/motion.hpp"
#include "lottie/pipeline.hpp"
#include "lottie/tokenizer.hpp"

namespace fs = std::filesystem;

namespace lottie {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// What one worker produced for one input. Files are written afterwards, in
// input order, by the calling thread.
struct Outcome {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> files;  // path, bytes
    std::string note;
    std::string error;
    std::string report;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, path, "cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, path, "cannot write");
    out << bytes;
    if (!out) throw Error(ErrorCode::Io, path, "write failed");
}

std::vector<std::string> expand(const std::vector<std::string>& inputs, const std::vector<std::string>& exts) {
    std::vector<std::string> out;
    for (const auto& in : inputs) {
        std::error_code ec;
        if (!fs::is_directory(in, ec)) {
            out.push_back(in);
            continue;
        }
        std::vector<std::string> found;
        for (const auto& e : fs::directory_iterator(in)) {
            if (!e.is_regular_file()) continue;
            const auto ext = e.path().extension().string();
            if (std::find(exts.begin(), exts.end(), ext) != exts.end()) found.push_back(e.path().string());
        }
        std::sort(found.begin(), found.end());
        out.insert(out.end(), found.begin(), found.end());
    }
    if (out.empty()) throw UsageError("no input files");
    return out;
}

std::string output_path(const std::string& input, const std::string& out_dir, const std::string& suffix) {
    const fs::path p(input);
    const fs::path dir = out_dir.empty() ? p.parent_path() : fs::path(out_dir);
    return (dir / (p.stem().string() + suffix)).string();
}

template <class F>
std::vector<Outcome> run_parallel(const std::vector<std::string>& inputs, F fn) {
    std::vector<Outcome> results(inputs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();) {
            try {
                results[i] = fn(i);
            } catch (const Error& e) {
                results[i].ok = false;
                results[i].error = std::string(to_string(e.code())) + "\t" + e.what();
            } catch (const std::exception& e) {
                results[i].ok = false;
                results[i].error = std::string("Io\t") + e.what();
            }
        }
    };
    const std::size_t n = std::min(worker_count(), inputs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return results;
}

// Writes outputs, prints one tab-separated line per input and a summary.
int finish(const std::string& command, const std::vector<std::string>& inputs, std::vector<Outcome>& results,
           std::ostream& out, bool report_failures_as_errors = true) {
    std::size_t failed = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        auto& r = results[i];
        if (r.ok) {
            try {
                for (const auto& [path, bytes] : r.files) write_file(path, bytes);
            } catch (const Error& e) {
                r.ok = false;
                r.error = std::string(to_string(e.code())) + "\t" + e.what();
            }
        }
        out << r.report;
        if (r.ok) {
            out << "ok\t" << inputs[i];
            for (const auto& f : r.files) out << "\t" << f.first;
            if (!r.note.empty()) out << "\t" << r.note;
            out << "\n";
        } else {
            ++failed;
            out << "fail\t" << inputs[i] << "\t" << r.error << "\n";
        }
    }
    out << "summary\t" << command << "\t" << inputs.size() - failed << "\t" << failed << "\n";
    return failed && report_failures_as_errors ? 1 : 0;
}

std::string model_json(const Animation& a) { return serialize_lottie(a) + "\n"; }

std::uint64_t name_hash(const std::string& path) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : fs::path(path).filename().string()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void ensure_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, dir, "cannot create directory");
}

VocabSpec vocab_from(const std::string& path) {
    return path.empty() ? VocabSpec::default_spec() : VocabSpec::load(path);
}

}  // namespace

std::size_t worker_count() {
    if (const char* env = std::getenv("LOTTIE_TOK_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lottie JSON to command/token toolkit", "lottie_tok"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string out_dir;
    auto io = [&](CLI::App* s, const char* out_help = "output directory (default: next to each input)") {
        s->add_option("inputs", inputs, "input files or directories")->required();
        s->add_option("-o,--out", out_dir, out_help);
    };

    auto* c_clean = app.add_subcommand("clean", "remove unsupported content; reject unparameterizable files");
    io(c_clean);

    NormalizeConfig norm;
    auto* c_norm = app.add_subcommand("normalize", "fit the canvas and time range");
    io(c_norm);
    c_norm->add_option("--canvas", norm.canvas, "square canvas size")->capture_default_str();
    c_norm->add_option("--time-range", norm.time_range_max, "frames mapped onto [0, R]")->capture_default_str();

    std::string vocab_path, tt_spec = "builtin", format = "ids";
    auto* c_tok = app.add_subcommand("tokenize", "encode JSON files as token ids");
    io(c_tok);
    c_tok->add_option("--vocab", vocab_path, "vocabulary file (default: built-in)");
    c_tok->add_option("--text-tokenizer", tt_spec, "builtin | external:FILE")->capture_default_str();
    c_tok->add_option("--format", format, "ids | bin")->check(CLI::IsMember({"ids", "bin"}))->capture_default_str();

    auto* c_detok = app.add_subcommand("detokenize", "decode token files back to JSON");
    io(c_detok);
    c_detok->add_option("--vocab", vocab_path, "vocabulary file (default: built-in)");
    c_detok->add_option("--text-tokenizer", tt_spec, "builtin | external:FILE")->capture_default_str();

    std::string template_file, basic_kind;
    SynthParams synth;
    std::optional<double> magnitude;
    auto* c_aug = app.add_subcommand("augment", "inject motion into static files");
    io(c_aug);
    auto* o_tmpl = c_aug->add_option("--template", template_file, "motion template file");
    auto* o_basic = c_aug->add_option("--basic", basic_kind, "MoveH | MoveV | Zoom | Rotate | Fade | Combined2 | Combined3");
    o_tmpl->excludes(o_basic);
    c_aug->add_option("--seed", synth.seed, "random seed")->capture_default_str();
    c_aug->add_option("--duration", synth.duration, "motion length in frames (default: op - ip)");
    c_aug->add_option("--direction", synth.direction, "+1 or -1 (default: drawn from the seed)");
    c_aug->add_option("--magnitude", magnitude, "basic: canvas fraction, scale factor or degrees; template: multiplier");

    auto* c_svg = app.add_subcommand("svg-import", "convert static SVG files to Lottie");
    io(c_svg);

    bool lint_as_json = false;
    auto* c_lint = app.add_subcommand("lint", "report renderability diagnostics");
    c_lint->add_option("inputs", inputs, "input files or directories")->required();
    c_lint->add_flag("--json", lint_as_json, "structured JSON report");

    BuildConfig build;
    std::string vocab_out = "vocab.txt";
    auto* c_vocab = app.add_subcommand("vocab-build", "derive a vocabulary from corpus statistics");
    c_vocab->add_option("inputs", inputs, "input files or directories")->required();
    c_vocab->add_option("-o,--out", vocab_out, "vocabulary file to write")->capture_default_str();
    c_vocab->add_option("--q-lo", build.q_lo, "lower quantile")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c_vocab->add_option("--q-hi", build.q_hi, "upper quantile")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c_vocab->add_option("--text-size", build.text_size, "text region size")->capture_default_str();

    auto* c_stats = app.add_subcommand("stats", "corpus statistics");
    c_stats->add_option("inputs", inputs, "input files or directories")->required();
    c_stats->add_option("--vocab", vocab_path, "vocabulary file (default: built-in)");
    c_stats->add_option("--text-tokenizer", tt_spec, "builtin | external:FILE")->capture_default_str();

    std::size_t k = 8;
    std::string templates_out = "templates.txt";
    auto* c_mt = app.add_subcommand("motion-templates", "cluster motion signatures into templates");
    c_mt->add_option("inputs", inputs, "input files or directories")->required();
    c_mt->add_option("-k", k, "number of templates")->check(CLI::PositiveNumber)->capture_default_str();
    c_mt->add_option("-o,--out", templates_out, "template file to write")->capture_default_str();

    std::vector<std::string> argv_store{"lottie_tok"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "lottie_tok: " << e.what() << "\n";
        return 2;
    }

    const std::vector<std::string> json_ext = {".json"};
    try {
        if (c_clean->parsed()) {
            const auto files = expand(inputs, json_ext);
            ensure_dir(out_dir);
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                auto r = clean_json(read_file(f));
                Outcome o;
                if (!r.animation) throw Error(ErrorCode::Rejected, "", r.report.reject_reason);
                o.files.push_back({output_path(f, out_dir, ".clean.json"), model_json(*r.animation)});
                o.note = "removed_layers=" + std::to_string(r.report.removed_layers.size()) +
                         "\tremoved_assets=" + std::to_string(r.report.removed_assets) +
                         "\tstripped_expressions=" + std::to_string(r.report.stripped_expressions);
                return o;
            });
            return finish("clean", files, results, out);
        }
        if (c_norm->parsed()) {
            if (!(norm.canvas > 0) || !(norm.time_range_max > 0)) throw UsageError("canvas and time range must be positive");
            const auto files = expand(inputs, json_ext);
            ensure_dir(out_dir);
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                Outcome o;
                o.files.push_back({output_path(f, out_dir, ".norm.json"), model_json(normalize(parse_lottie(read_file(f)), norm))});
                return o;
            });
            return finish("normalize", files, results, out);
        }
        if (c_tok->parsed()) {
            const auto vocab = vocab_from(vocab_path);
            const auto tt = make_text_tokenizer(tt_spec);
            const auto files = expand(inputs, json_ext);
            ensure_dir(out_dir);
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                QuantizeCounters counters;
                auto seq = encode(parse_lottie(read_file(f)), vocab, *tt, &counters);
                Outcome o;
                const bool bin = format == "bin";
                o.files.push_back({output_path(f, out_dir, bin ? ".tokb" : ".tok"),
                                   bin ? write_token_binary({seq}) : write_token_text({seq})});
                o.note = "tokens=" + std::to_string(seq.ids.size()) + "\tclamped=" + std::to_string(counters.total());
                return o;
            });
            return finish("tokenize", files, results, out);
        }
        if (c_detok->parsed()) {
            const auto vocab = vocab_from(vocab_path);
            const auto tt = make_text_tokenizer(tt_spec);
            const auto files = expand(inputs, {".tok", ".tokb"});
            ensure_dir(out_dir);
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                const auto samples = read_token_file(f);
                Outcome o;
                for (std::size_t j = 0; j < samples.size(); ++j) {
                    const auto suffix = samples.size() == 1 ? std::string(".detok.json")
                                                            : "." + std::to_string(j) + ".detok.json";
                    o.files.push_back({output_path(f, out_dir, suffix), model_json(decode(samples[j], vocab, *tt))});
                }
                return o;
            });
            return finish("detokenize", files, results, out);
        }
        if (c_aug->parsed()) {
            std::vector<MotionTemplate> templates;
            std::optional<MotionKind> kind;
            if (!template_file.empty()) {
                templates = load_templates(template_file);
                if (templates.empty()) throw UsageError("template file holds no templates");
            } else if (!basic_kind.empty()) {
                kind = motion_kind_from_string(basic_kind);
                if (!kind) throw UsageError("unknown motion kind '" + basic_kind + "'");
            } else {
                throw UsageError("augment needs --template or --basic");
            }
            if (synth.direction && *synth.direction != 1 && *synth.direction != -1)
                throw UsageError("--direction must be 1 or -1");
            const auto files = expand(inputs, json_ext);
            ensure_dir(out_dir);
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                const auto a = parse_lottie(read_file(f));
                Outcome o;
                if (kind) {
                    SynthParams p = synth;
                    p.seed = synth.seed ^ name_hash(f);
                    p.magnitude = magnitude;
                    const auto tmpl = basic_motion_template(*kind, p);
                    InjectParams ip;
                    ip.duration = p.duration;
                    o.files.push_back({output_path(f, out_dir, "." + std::string(to_string(*kind)) + ".json"),
                                       model_json(inject_motion(a, tmpl, ip))});
                    o.note = "label=" + tmpl.label;
                } else {
                    InjectParams ip;
                    ip.duration = synth.duration;
                    ip.magnitude = magnitude.value_or(1.0);
                    for (std::size_t j = 0; j < templates.size(); ++j) {
                        o.files.push_back({output_path(f, out_dir, ".t" + std::to_string(j) + ".json"),
                                           model_json(inject_motion(a, templates[j], ip))});
                    }
                }
                return o;
            });
            return finish("augment", files, results, out);
        }
        if (c_svg->parsed()) {
            const auto files = expand(inputs, {".svg"});
            ensure_dir(out_dir);
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                Outcome o;
                o.files.push_back({output_path(f, out_dir, ".json"), model_json(svg_to_static_lottie(read_file(f)))});
                return o;
            });
            return finish("svg-import", files, results, out);
        }
        if (c_lint->parsed()) {
            const auto files = expand(inputs, json_ext);
            std::vector<std::vector<Diagnostic>> diags(files.size());
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                Outcome o;
                diags[i] = lint_json(read_file(f));
                return o;
            });
            bool errors = false;
            for (std::size_t i = 0; i < files.size(); ++i) {
                if (has_errors(diags[i])) {
                    errors = true;
                    results[i].ok = false;
                    results[i].error = "LintErrors";
                }
            }
            if (lint_as_json) {
                Json report = Json::object();
                report["files"] = Json::array();
                for (std::size_t i = 0; i < files.size(); ++i) {
                    Json entry = {{"file", files[i]}, {"diagnostics", diagnostics_json(diags[i])}};
                    if (!results[i].ok && results[i].error != "LintErrors") entry["error"] = results[i].error;
                    report["files"].push_back(std::move(entry));
                }
                Json hist = Json::array();
                for (const auto& row : failure_histogram(diags))
                    hist.push_back({{"code", to_string(row.code)}, {"count", row.count}, {"percent", row.percent}});
                report["histogram"] = std::move(hist);
                out << report.dump(2) << "\n";
                const bool failed = std::any_of(results.begin(), results.end(), [](const Outcome& o) { return !o.ok; });
                return failed || errors ? 1 : 0;
            }
            for (std::size_t i = 0; i < files.size(); ++i) {
                std::string lines;
                for (const auto& d : diags[i]) lines += files[i] + "\t" + format_diagnostics({d});
                results[i].report = lines;
            }
            const int rc = finish("lint", files, results, out);
            for (const auto& row : failure_histogram(diags))
                out << "histogram\t" << to_string(row.code) << "\t" << row.count << "\t" << row.percent << "\n";
            return rc;
        }
        if (c_vocab->parsed()) {
            if (!(build.q_lo < build.q_hi)) throw UsageError("--q-lo must be below --q-hi");
            const auto files = expand(inputs, json_ext);
            std::vector<CorpusStats> per_file(files.size());
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                collect_stats(to_command_sequence(parse_lottie(read_file(f))),
                              per_file[i]);
                return Outcome{};
            });
            CorpusStats all;
            for (std::size_t i = 0; i < files.size(); ++i)
                if (results[i].ok) all.merge(per_file[i]);
            const int rc = finish("vocab-build", files, results, out);
            const auto spec = build_vocab(all, build);
            spec.save(vocab_out);
            out << "vocab\t" << vocab_out << "\t" << spec.version() << "\t" << spec.size() << "\n";
            return rc;
        }
        if (c_stats->parsed()) {
            const auto vocab = vocab_from(vocab_path);
            const auto tt = make_text_tokenizer(tt_spec);
            const auto files = expand(inputs, json_ext);
            std::vector<FileStats> per_file(files.size());
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                auto s = file_stats(read_file(f), vocab, *tt);
                s.file = f;
                per_file[i] = std::move(s);
                return Outcome{};
            });
            for (std::size_t i = 0; i < files.size(); ++i) {
                if (!results[i].ok) per_file[i].error = results[i].error;
                if (per_file[i].error) out << "fail\t" << files[i] << "\t" << *per_file[i].error << "\n";
            }
            out << aggregate_stats(per_file).to_text();
            return 0;
        }
        if (c_mt->parsed()) {
            const auto files = expand(inputs, json_ext);
            std::vector<MotionSignature> sigs(files.size());
            auto results = run_parallel(files, [&](std::size_t i) {
                const auto& f = files[i];
                sigs[i] = extract_signature(parse_lottie(read_file(f)));
                return Outcome{};
            });
            std::vector<MotionSignature> ok;
            for (std::size_t i = 0; i < files.size(); ++i)
                if (results[i].ok) ok.push_back(sigs[i]);
            const int rc = finish("motion-templates", files, results, out);
            if (ok.empty()) return 1;
            const auto clusters = cluster_signatures(ok, k);
            save_templates(clusters.templates, templates_out);
            out << "templates\t" << templates_out << "\t" << clusters.templates.size() << "\n";
            return rc;
        }
    } catch (const UsageError& e) {
        err << "lottie_tok: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "lottie_tok: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace lottie
