#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "lottie/commands.hpp"
#include "lottie/error.hpp"
#include "lottie/json_io.hpp"
#include "lottie/pipeline.hpp"

using namespace lottie;

namespace {

const char* kMixed = R"({"v":"5.7.4","fr":30,"ip":0,"op":60,"w":512,"h":512,
 "assets":[{"id":"img","w":10,"h":10,"p":"data:image/png;base64,AAAA","e":1}],
 "layers":[
  {"ty":2,"ind":1,"refId":"img","ip":0,"op":60,"ks":{}},
  {"ty":6,"ind":2,"ip":0,"op":60},
  {"ty":13,"ind":3,"ip":0,"op":60,"pe":{"a":0,"k":600}},
  {"ty":15,"ind":4,"ip":0,"op":60},
  {"ty":4,"ind":5,"ip":0,"op":60,"ks":{"r":{"a":0,"k":0,"x":"time*10"}},
   "shapes":[{"ty":"el","p":{"a":0,"k":[0,0]},"s":{"a":0,"k":[10,10]}},{"ty":"fl","c":{"a":0,"k":[0,0,0]},"o":{"a":0,"k":100}}]}]})";

double static_x(const AnimatedValue& v, std::size_t i = 0) { return (*v.static_value())[i]; }

Animation wide() {
    Animation a = testing::clean_base();
    a.width = 1920;
    a.height = 1080;
    return a;
}

}  // namespace

TEST_CASE("clean removes unparameterizable layers and strips expressions") {
    CleanResult r = clean_json(kMixed);
    REQUIRE(r.animation);
    CHECK(r.report.kept);
    REQUIRE(r.animation->layers.size() == 1);
    CHECK(r.animation->layers[0].kind == LayerKind::Shape);
    REQUIRE(r.report.removed_layers.size() == 4);
    CHECK(r.report.removed_layers[0].reason == RemovalReason::Base64Image);
    CHECK(r.report.removed_layers[1].reason == RemovalReason::Audio);
    CHECK(r.report.removed_layers[2].reason == RemovalReason::Camera);
    CHECK(r.report.removed_layers[3].reason == RemovalReason::Data);
    CHECK(r.report.removed_layers[2].index == 3);
    CHECK(r.report.removed_assets == 1);
    CHECK(r.report.stripped_expressions == 1);
    CHECK_FALSE(r.animation->layers[0].transform->rotation->expression);
    CHECK_NOTHROW(to_command_sequence(*r.animation));
}

TEST_CASE("clean rejects files with nothing left") {
    CleanResult r = clean_json(R"({"v":"5.7.4","fr":30,"ip":0,"op":60,"w":512,"h":512,
        "layers":[{"ty":6,"ind":1,"ip":0,"op":60}]})");
    CHECK_FALSE(r.animation);
    CHECK_FALSE(r.report.kept);
    CHECK(r.report.reject_reason.find("NonParameterizable") == 0);
}

TEST_CASE("clean rejects 3D content") {
    Animation a = testing::clean_base();
    a.layers[1].three_d = true;
    CleanResult r = clean(a);
    CHECK_FALSE(r.animation);
    CHECK(r.report.reject_reason.find("3D") != std::string::npos);
}

TEST_CASE("clean rejects references into removed layers") {
    CleanResult r = clean_json(R"({"v":"5.7.4","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[
        {"ty":13,"ind":1,"ip":0,"op":60},
        {"ty":3,"ind":2,"parent":1,"ip":0,"op":60,"ks":{}}]})");
    CHECK_FALSE(r.animation);
}

TEST_CASE("clean leaves clean files untouched") {
    for (const auto& a : testing::fixture_corpus(20, 9)) {
        CleanResult r = clean(a);
        REQUIRE(r.animation);
        CHECK(*r.animation == a);
        CHECK(r.report.removed_layers.empty());
    }
}

TEST_CASE("a 1920x1080 canvas fits 512 with a 112 pixel band") {
    Animation n = normalize_spatial(wide());
    CHECK(n.width == 512);
    CHECK(n.height == 512);
    auto root = find_normalize_root(n);
    REQUIRE(root);
    const Layer& r = n.layers[*root];
    CHECK(r.kind == LayerKind::Null);
    const auto& t = *r.transform;
    const auto& p = std::get<AnimatedValue>(*t.position);
    CHECK(static_x(p, 0) == doctest::Approx(0));
    CHECK(static_x(p, 1) == doctest::Approx(112));
    CHECK(static_x(*t.scale, 0) == doctest::Approx(100.0 * 512 / 1920));
    // every previously parentless layer hangs off the new root
    for (std::size_t i = 0; i < n.layers.size(); ++i) {
        if (i == *root) continue;
        CHECK(n.layers[i].parent.has_value());
    }
    CHECK(n.layers[0].parent == r.index);
    CHECK(n.layers[1].parent == 1);  // kept its own parent
}

TEST_CASE("the source canvas centre lands on the target centre") {
    for (auto [w, h] : {std::pair{1920.0, 1080.0}, {300.0, 900.0}, {512.0, 512.0}, {100.0, 50.0}}) {
        Animation a = testing::clean_base();
        a.width = w;
        a.height = h;
        Animation n = normalize_spatial(a);
        const auto& t = *n.layers[*find_normalize_root(n)].transform;
        const auto& p = std::get<AnimatedValue>(*t.position);
        const double s = static_x(*t.scale) / 100;
        CHECK(static_x(p, 0) + s * w / 2 == doctest::Approx(256));
        CHECK(static_x(p, 1) + s * h / 2 == doctest::Approx(256));
        CHECK(std::max(s * w, s * h) == doctest::Approx(512));
    }
}

TEST_CASE("normalization rejects bad configuration") {
    NormalizeConfig cfg;
    cfg.canvas = 0;
    CHECK_THROWS_AS(normalize_spatial(testing::clean_base(), cfg), Error);
    Animation a = testing::clean_base();
    a.out_point = a.in_point;
    try {
        normalize_temporal(a);
        FAIL("expected DegenerateDuration");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateDuration);
    }
}

TEST_CASE("temporal normalization maps composition time linearly") {
    Animation a = testing::clean_base();
    a.in_point = 10;
    a.out_point = 130;  // k = 0.5
    for (auto& l : a.layers) {
        l.in_point = 10;
        l.out_point = 130;
    }
    Layer& shape = a.layers[1];
    shape.start_time = 20.0;
    KeyframeList<Vec> kfs(2);
    kfs[0].time = 10;  // comp time 30
    kfs[0].start = Vec{0};
    kfs[1].time = 50;  // comp time 70
    kfs[1].start = Vec{180};
    shape.transform->rotation->data = kfs;

    Animation n = normalize_temporal(a);
    CHECK(n.in_point == 0);
    CHECK(n.out_point == 60);
    CHECK(n.frame_rate == a.frame_rate);
    const Layer& s = n.layers[1];
    CHECK(s.start() == 0);
    CHECK(s.in_point == doctest::Approx(0));
    CHECK(s.out_point == doctest::Approx(60));
    const auto& k = *s.transform->rotation->keyframes();
    CHECK(k[0].time == doctest::Approx(10));
    CHECK(k[1].time == doctest::Approx(30));
    CHECK((*k[1].start)[0] == 180);
}

TEST_CASE("stretched layers fold the stretch into keyframe offsets") {
    Animation a = testing::clean_base();
    a.out_point = 120;  // k = 0.5
    Layer& shape = a.layers[1];
    shape.out_point = 120;
    shape.start_time = 10.0;
    shape.stretch = 2;
    KeyframeList<Vec> kfs(2);
    kfs[0].time = 0;   // comp 10
    kfs[0].start = Vec{0};
    kfs[1].time = 20;  // comp 50
    kfs[1].start = Vec{90};
    shape.transform->rotation->data = kfs;
    Animation n = normalize_temporal(a);
    const auto& k = *n.layers[1].transform->rotation->keyframes();
    // comp = st + sr * local, after mapping: k*st + sr * k*local
    CHECK(n.layers[1].start() == 0);
    CHECK(0 + 2 * k[0].time == doctest::Approx(5));
    CHECK(0 + 2 * k[1].time == doctest::Approx(25));
}

TEST_CASE("normalized source files fit the canvas and time range and are fixed points") {
    for (const auto& src : testing::source_corpus(60, 21)) {
        Animation n = normalize(src);
        CHECK(n.width == 512);
        CHECK(n.height == 512);
        CHECK(n.in_point == 0);
        CHECK(n.out_point == 60);
        CorpusStats stats;
        collect_stats(to_command_sequence(n), stats);
        for (double t : stats.values[static_cast<std::size_t>(ParamType::Temporal)]) {
            REQUIRE(t >= -1e-9);
            REQUIRE(t <= 60 + 1e-9);
        }
        CHECK(normalize(n) == n);
        CHECK(check_invariants(n).empty());
    }
}

TEST_CASE("a precomp starting before the composition gets a time remap") {
    Animation a = testing::clean_base();
    a.in_point = 20;
    a.out_point = 80;  // k = 1, so st = 0 maps to -20
    PrecompAsset asset;
    asset.id = "inner";
    asset.layers.push_back(a.layers[1]);
    asset.layers[0].parent.reset();
    a.assets.push_back(asset);
    Layer pre = a.layers[1];
    pre.kind = LayerKind::Precomp;
    pre.parent.reset();
    pre.index = 9;
    pre.in_point = 20;
    pre.out_point = 80;
    pre.start_time = 0.0;
    pre.payload = PrecompPayload{"inner", 512, 512, std::nullopt};
    a.layers.push_back(pre);
    REQUIRE(check_invariants(a).empty());

    Animation n = normalize_temporal(a);
    const Layer& l = n.layers.back();
    CHECK(l.start() == 0);
    const auto& tm = std::get<PrecompPayload>(l.payload).time_remap;
    REQUIRE(tm);
    const auto& k = *tm->keyframes();
    REQUIRE(k.size() == 2);
    // composition frame 20 showed child frame 20, i.e. 20/30 s
    CHECK(k[0].time == doctest::Approx(0));
    CHECK((*k[0].start)[0] == doctest::Approx(20.0 / 30));
    CHECK(k[1].time == doctest::Approx(60));
    CHECK((*k[1].start)[0] == doctest::Approx(80.0 / 30));
    CHECK(check_invariants(n).empty());
}
