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

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "scenecomp/kernel.hpp"

namespace scenecomp {
namespace {

TEST(Rbf, ClosedForms) {
    const Vec3 a{1.5, -2.0, 3.25};
    EXPECT_EQ(rbf(a, a, 0.7), 1.0);
    const Vec3 b{1.5, -2.0, 5.25};  // distance 2
    EXPECT_NEAR(rbf(a, b, std::sqrt(2.0)), 0.36787944117144233, 1e-16);
}

TEST(Rbf, MatchesStraightLineFormula) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> bandwidth(0.5, 2.0);
    for (int t = 0; t < 100; ++t) {
        const Vec3 a{coord(rng), coord(rng), coord(rng)};
        const Vec3 b{coord(rng), coord(rng), coord(rng)};
        const double sigma = bandwidth(rng);
        const double want = oracle::kernel(a, b, sigma);
        EXPECT_LE(std::abs(rbf(a, b, sigma) - want), 1e-15 * want);
    }
}

TEST(Rbf, SymmetricAndBounded) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int t = 0; t < 1000; ++t) {
        const Vec3 a{coord(rng), coord(rng), coord(rng)};
        const Vec3 b{coord(rng), coord(rng), coord(rng)};
        const double k = rbf(a, b, 3.0);
        EXPECT_EQ(k, rbf(b, a, 3.0));
        EXPECT_GT(k, 0.0);  // |a-b| <= 17.4 < 38 sigma, so no underflow
        EXPECT_LE(k, 1.0);
        EXPECT_EQ(rbf(a, a, 3.0), 1.0);
    }
}

TEST(KernelRowCache, RowsMatchPointwiseKernel) {
    const SceneModel scene = synth_scene(60, 5, 4.0, 1);
    KernelRowCache cache(scene, 1.3, 8);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> pick(0, scene.size() - 1);
    for (int t = 0; t < 50; ++t) {
        const std::size_t i = pick(rng), j = pick(rng);
        const std::vector<double> row_i(cache.row(i).begin(), cache.row(i).end());
        EXPECT_EQ(row_i[i], 1.0);
        EXPECT_EQ(row_i[j], cache.row(j)[i]);
        EXPECT_EQ(row_i[j], rbf(scene[i].position, scene[j].position, 1.3));
        EXPECT_LE(cache.resident(), cache.capacity());
    }
    EXPECT_THROW(cache.row(scene.size()), std::out_of_range);
}

TEST(KernelRowCache, LruEvictionRecomputesOnce) {
    const SceneModel scene = synth_scene(20, 5, 4.0, 2);
    KernelRowCache cache(scene, 1.0, 2);
    const std::vector<double> first(cache.row(3).begin(), cache.row(3).end());
    cache.row(7);
    EXPECT_EQ(cache.row_evaluations(), 2u);
    cache.row(3);  // still resident
    EXPECT_EQ(cache.row_evaluations(), 2u);
    cache.row(11);  // evicts 7, the least recently used
    cache.row(3);
    EXPECT_EQ(cache.row_evaluations(), 3u);
    cache.row(7);  // evicts 11
    cache.row(3);
    EXPECT_EQ(cache.row_evaluations(), 4u);

    // Access pattern i, j, k, i with capacity 2: i is evicted by k and recomputed once.
    KernelRowCache fresh(scene, 1.0, 2);
    fresh.row(0);
    fresh.row(1);
    fresh.row(2);
    EXPECT_EQ(fresh.row_evaluations(), 3u);
    const auto again = fresh.row(0);
    EXPECT_EQ(fresh.row_evaluations(), 4u);
    KernelRowCache reference(scene, 1.0, 1);
    const auto ref_row = reference.row(0);
    const std::vector<double> original(ref_row.begin(), ref_row.end());
    EXPECT_EQ(std::vector<double>(again.begin(), again.end()), original);
    EXPECT_EQ(std::vector<double>(cache.row(3).begin(), cache.row(3).end()), first);
}

TEST(KernelRowCache, TransparentForAnyCapacity) {
    const SceneModel scene = synth_scene(40, 5, 3.0, 3);
    KernelRowCache unbounded(scene, 0.8, scene.size());
    std::vector<KernelRowCache> bounded;
    for (std::size_t c : {1u, 2u, 5u}) bounded.emplace_back(scene, 0.8, c);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> pick(0, scene.size() - 1);
    for (int t = 0; t < 300; ++t) {
        const std::size_t i = pick(rng);
        const auto want = unbounded.row(i);
        for (auto& c : bounded) {
            const auto got = c.row(i);
            ASSERT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end()));
            EXPECT_LE(c.resident(), c.capacity());
        }
    }
}

TEST(KernelRowCache, GramMatrixIsSymmetricPsd) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = 2 + t % 19;
        const SceneModel scene = oracle::random_scene(m, 3.0, rng);
        KernelRowCache cache(scene, 0.5 + 0.2 * t, 3);
        Eigen::MatrixXd k(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto row = cache.row(i);
            for (std::size_t j = 0; j < m; ++j) k(i, j) = row[j];
        }
        ASSERT_TRUE(k.isApprox(k.transpose(), 0.0));
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
        EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9);
    }
}

TEST(KernelRowCache, BudgetToRows) {
    EXPECT_EQ(cache_rows_for_budget(1000, 8000 * 10), 10u);
    EXPECT_EQ(cache_rows_for_budget(1000, 100), 1u);
    EXPECT_EQ(cache_rows_for_budget(10, std::size_t{1} << 30), 10u);
}

TEST(KernelRowCache, RejectsBadConfig) {
    const SceneModel scene = synth_scene(5, 2, 1.0, 1);
    EXPECT_THROW(KernelRowCache(scene, 0.0, 2), std::invalid_argument);
    EXPECT_THROW(KernelRowCache(scene, 1.0, 0), std::invalid_argument);
}

}  // namespace
}  // namespace scenecomp
