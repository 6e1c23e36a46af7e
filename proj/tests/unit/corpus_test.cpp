#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "lottie/corpus.hpp"
#include "lottie/json_io.hpp"
#include "lottie/pipeline.hpp"
#include "lottie/tokenizer.hpp"

using namespace lottie;

namespace {

Animation with_precomp(int levels) {
    Animation a = testing::clean_base();
    std::string ref;
    for (int i = 0; i < levels; ++i) {
        PrecompAsset asset;
        asset.id = "c" + std::to_string(i);
        Layer l = a.layers[1];
        l.parent.reset();
        if (!ref.empty()) {
            l.kind = LayerKind::Precomp;
            l.payload = PrecompPayload{ref, 512, 512, std::nullopt};
        }
        asset.layers.push_back(l);
        a.assets.push_back(asset);
        ref = asset.id;
    }
    Layer top = a.layers[1];
    top.parent.reset();
    top.index = 10;
    top.kind = LayerKind::Precomp;
    top.payload = PrecompPayload{ref, 512, 512, std::nullopt};
    a.layers.push_back(top);
    return a;
}

const VocabSpec& V() { return VocabSpec::default_spec(); }

}  // namespace

TEST_CASE("composition depth counts precomp nesting") {
    CHECK(composition_depth(testing::clean_base()) == 1);
    CHECK(composition_depth(with_precomp(1)) == 2);
    CHECK(composition_depth(with_precomp(3)) == 4);
}

TEST_CASE("per-file statistics") {
    Animation a = testing::clean_base();
    std::string text = to_json(a).dump(2);
    FileStats s = file_stats(text, V(), byte_tokenizer());
    CHECK_FALSE(s.error);
    CHECK(s.root_layers == 3);
    CHECK(s.layer_kinds.at("shape") == 1);
    CHECK(s.layer_kinds.at("text") == 1);
    CHECK(s.layer_kinds.at("null") == 1);
    CHECK(s.depth == 1);
    CHECK(s.duration_seconds == doctest::Approx(2.0));  // 60 frames at 30 fps
    CHECK(s.raw_tokens_minified == Json::parse(text).dump().size());
    REQUIRE(s.command_tokens);
    CHECK(*s.command_tokens == encode(normalize(a), V(), byte_tokenizer()).ids.size());
}

TEST_CASE("unparseable files are counted, not fatal") {
    FileStats s = file_stats("{oops", V(), byte_tokenizer());
    CHECK(s.error);
    CHECK_FALSE(s.command_tokens);
}

TEST_CASE("aggregation over a small corpus") {
    std::vector<FileStats> files;
    Animation two = testing::clean_base();        // 2 s
    Animation four = testing::clean_base();
    four.out_point = 120;                          // 4 s
    for (auto& l : four.layers) l.out_point = 120;
    Animation twelve = testing::clean_base();
    twelve.frame_rate = 5;                         // 12 s
    for (const auto* a : {&two, &four, &twelve}) files.push_back(file_stats(serialize_lottie(*a), V(), byte_tokenizer()));
    files.push_back(file_stats("not json", V(), byte_tokenizer()));

    StatsReport r = aggregate_stats(files);
    CHECK(r.files == 4);
    CHECK(r.failed == 1);
    CHECK(r.layers == 9);
    CHECK(r.layer_count_mean == doctest::Approx(3));
    CHECK(r.layer_count_max == 3);
    CHECK(r.kind_percent("shape") == doctest::Approx(100.0 / 3));
    CHECK(r.kind_percent("precomp") == 0);
    // bins: <1, 1-3, 3-5, 5-10, >=10
    CHECK(r.duration_histogram[0] == 0);
    CHECK(r.duration_histogram[1] == 1);
    CHECK(r.duration_histogram[2] == 1);
    CHECK(r.duration_histogram[3] == 0);
    CHECK(r.duration_histogram[4] == 1);
    CHECK(r.depth_histogram.at(1) == 3);
    CHECK(r.encoded_files == 3);
    double mean = 0;
    for (std::size_t i = 0; i < 3; ++i) mean += double(files[i].raw_tokens_minified) / double(*files[i].command_tokens);
    CHECK(r.mean_compression == doctest::Approx(mean / 3));

    std::string text = r.to_text();
    CHECK(text.find("files\ttotal\t4\n") != std::string::npos);
    CHECK(text.find("files\tfailed\t1\n") != std::string::npos);
    CHECK(text.find("duration_s\t>=10\t1\n") != std::string::npos);
}

TEST_CASE("corpus statistics read files in sorted order") {
    auto dir = std::filesystem::temp_directory_path() / "lottie_corpus_test";
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    auto corpus = testing::fixture_corpus(6, 4);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto p = dir / ("f" + std::to_string(5 - i) + ".json");
        std::ofstream(p) << serialize_lottie(corpus[i]);
        paths.push_back(p.string());
    }
    StatsReport r = corpus_stats(paths, V(), byte_tokenizer());
    CHECK(r.files == 6);
    CHECK(r.failed == 0);
    CHECK(r.encoded_files == 6);
    std::reverse(paths.begin(), paths.end());
    CHECK(corpus_stats(paths, V(), byte_tokenizer()).to_text() == r.to_text());
    std::filesystem::remove_all(dir);
}
