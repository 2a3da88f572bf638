//  Copyright 2026 The scenecomp Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "scenecomp/compressor.hpp"
#include "test_util.hpp"

namespace scenecomp {
namespace {

TEST(ExtractSupport, StrictThreshold) {
    const AlphaDistribution a{{0.0, 1e-9, 0.3, 1e-8, 0.7}, 1.0};
    EXPECT_EQ(extract_support(a, 1e-8), (std::vector<std::size_t>{2, 4}));
    EXPECT_EQ(extract_support(a, 0.0), (std::vector<std::size_t>{1, 2, 3, 4}));
    EXPECT_EQ(extract_support(a, 1.0), std::vector<std::size_t>{});
    EXPECT_EQ(default_support_threshold(0.5), 5e-9);
}

TEST(Compress, RetainedFractionNearNu) {
    const SceneModel scene = synth_scene(2000, 50, 100.0, 1);
    CompressionParams p;
    p.nu = 0.05;
    const CompressedScene c = compress(scene, p);
    const double fraction = double(c.result.points.size()) / 2000.0;
    EXPECT_GE(fraction, 0.05);
    EXPECT_LE(fraction, 0.06);
    EXPECT_EQ(c.source_m, 2000u);
    double mass = 0.0;
    for (const auto& s : c.result.points) mass += s.mass;
    EXPECT_NEAR(mass, 1.0, 1e-9);
}

TEST(Compress, FullRetentionKeepsEveryPoint) {
    const SceneModel scene = synth_scene(500, 20, 50.0, 2);
    CompressionParams p;
    p.nu = 1.0;
    const CompressedScene c = compress(scene, p);
    ASSERT_EQ(c.result.points.size(), 500u);
    for (const auto& s : c.result.points) EXPECT_EQ(s.mass, 1.0 / 500.0);
}

TEST(Compress, SelectionOrderAndIds) {
    const SceneModel scene = synth_scene(400, 20, 30.0, 3);
    CompressionParams p;
    p.nu = 0.1;
    const CompressedScene c = compress(scene, p);
    for (std::size_t k = 1; k < c.result.points.size(); ++k) {
        const auto& a = c.result.points[k - 1];
        const auto& b = c.result.points[k];
        EXPECT_TRUE(a.mass > b.mass || (a.mass == b.mass && a.index < b.index));
    }
    for (const auto& s : c.result.points) EXPECT_EQ(s.id, scene[s.index].id);
}

TEST(Compress, InitialSelectionIsTopRanked) {
    const SceneModel scene = synth_scene(300, 25, 30.0, 4);
    CompressionParams p;
    p.nu = 0.1;
    p.score.kind = ScoreKind::camera_max_fraction;
    CompressOptions opts;
    opts.emit_initial = true;
    const CompressedScene c = compress(scene, p, opts);
    ASSERT_TRUE(c.initial.has_value());

    const auto d = oracle::camera_max_fraction(scene);
    std::vector<std::size_t> order(scene.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
    order.resize(30);
    std::vector<std::size_t> got;
    for (const auto& s : c.initial->points) got.push_back(s.index);
    std::sort(order.begin(), order.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, order);
    EXPECT_LE(c.result.objective.total, c.initial->objective.total + 1e-12);
}

TEST(Compress, FinalNeverWorseThanInitial) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SceneModel scene = synth_scene(600, 30, 40.0, seed);
        CompressionParams p;
        p.nu = 0.05;
        p.sigma = 5.0;
        p.tau = 0.5 * double(seed);
        p.score.kind = ScoreKind::combination;
        CompressOptions opts;
        opts.emit_initial = true;
        const CompressedScene c = compress(scene, p, opts);
        EXPECT_LE(c.result.objective.total, c.initial->objective.total + 1e-12) << "seed " << seed;
    }
}

TEST(Compress, DeterministicOutputFile) {
    TempDir dir;
    const SceneModel scene = synth_scene(800, 30, 60.0, 5);
    CompressionParams p;
    p.seed = 123;
    p.pair_strategy = PairStrategy::active;
    write_compressed(compress(scene, p), dir.path("a.json"));
    write_compressed(compress(scene, p), dir.path("b.json"));
    EXPECT_EQ(dir.read("a.json"), dir.read("b.json"));
    EXPECT_FALSE(dir.read("a.json").empty());
}

TEST(Compress, ResolvesBetaAndThreshold) {
    const SceneModel scene = synth_scene(200, 20, 30.0, 6);
    CompressionParams p;
    p.score.kind = ScoreKind::avg_distance;
    const CompressedScene c = compress(scene, p);
    ASSERT_TRUE(c.params.score.beta.has_value());
    EXPECT_EQ(*c.params.score.beta, default_beta(scene));
    ASSERT_TRUE(c.params.support_threshold.has_value());
    EXPECT_EQ(*c.params.support_threshold, default_support_threshold(box_cap(p.nu, 200)));
}

TEST(Serialization, ParamsRoundTrip) {
    CompressionParams p;
    p.nu = 0.125;
    p.tau = 0.3;
    p.sigma = 7.5;
    p.iterations = 99;
    p.seed = 4;
    p.pair_strategy = PairStrategy::active;
    p.score.kind = ScoreKind::combination;
    p.score.beta = 123.25;
    p.score.weight = 0.75;
    p.kernel_cache_mb = 64;
    p.support_threshold = 1e-6;
    const auto q = params_from_json(nlohmann::json::parse(params_to_json(p).dump()));
    EXPECT_EQ(q.nu, p.nu);
    EXPECT_EQ(q.tau, p.tau);
    EXPECT_EQ(q.sigma, p.sigma);
    EXPECT_EQ(q.iterations, p.iterations);
    EXPECT_EQ(q.seed, p.seed);
    EXPECT_EQ(q.pair_strategy, p.pair_strategy);
    EXPECT_EQ(q.score.kind, p.score.kind);
    EXPECT_EQ(q.score.beta, p.score.beta);
    EXPECT_EQ(q.score.weight, p.score.weight);
    EXPECT_EQ(q.kernel_cache_mb, p.kernel_cache_mb);
    EXPECT_EQ(q.support_threshold, p.support_threshold);
}

TEST(Serialization, AlphaFromSelectedList) {
    const SceneModel scene = synth_scene(100, 10, 20.0, 7);
    CompressionParams p;
    p.nu = 0.2;
    const CompressedScene c = compress(scene, p);
    const auto doc = nlohmann::json::parse(compressed_to_json(c).dump(2));
    const auto alpha = alpha_from_json(doc, scene);
    std::size_t positive = 0;
    for (double x : alpha) positive += x > 0.0;
    EXPECT_EQ(positive, c.result.points.size());
    for (const auto& s : c.result.points) EXPECT_EQ(alpha[s.index], s.mass);

    EXPECT_THROW(alpha_from_json(nlohmann::json::parse(R"({"alpha": [1]})"), scene), FormatError);
    EXPECT_THROW(alpha_from_json(nlohmann::json::parse(R"({"selected": [{"id": 100000, "mass": 1}]})"), scene),
                 ValidationError);
    EXPECT_THROW(alpha_from_json(nlohmann::json::parse(R"({})"), scene), FormatError);
}

TEST(Serialization, SelectedPly) {
    TempDir dir;
    const SceneModel scene = synth_scene(100, 10, 20.0, 8);
    CompressionParams p;
    p.nu = 0.1;
    const CompressedScene c = compress(scene, p);
    write_selected_ply(scene, c.result, dir.path("sel.ply"));
    const SceneModel back = load_scene(dir.path("sel.ply"), SceneFormat::ply);
    EXPECT_EQ(back.size(), c.result.points.size());
}

}  // namespace
}  // namespace scenecomp
