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

// Test-only reference computations. Nothing here calls into the library's
// numerical code paths; each function re-derives its quantity directly from
// the defining formula so it can certify the implementation.

#ifndef SCENECOMP_TESTS_ORACLES_HPP
#define SCENECOMP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "scenecomp/scene_model.hpp"

namespace scenecomp::oracle {

inline double kernel(const Vec3& a, const Vec3& b, double sigma) {
    const double sq = std::pow(a[0] - b[0], 2) + std::pow(a[1] - b[1], 2) + std::pow(a[2] - b[2], 2);
    return std::exp(-sq / (2.0 * std::pow(sigma, 2)));
}

/// Row-major m x m Gram matrix.
inline std::vector<double> gram(const SceneModel& scene, double sigma) {
    const std::size_t m = scene.size();
    std::vector<double> k(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) k[i * m + j] = kernel(scene[i].position, scene[j].position, sigma);
    return k;
}

inline std::vector<double> avg_distance(const SceneModel& scene, double beta) {
    std::vector<double> out;
    for (const auto& p : scene.points()) {
        if (p.pair_distances.empty()) {
            out.push_back(0.0);
            continue;
        }
        long double total = 0.0L;
        for (double d : p.pair_distances) total += d;
        const long double mean = total / static_cast<long double>(p.pair_distances.size());
        out.push_back(static_cast<double>(std::exp(-mean / static_cast<long double>(beta))));
    }
    return out;
}

inline std::vector<double> camera_fraction(const SceneModel& scene) {
    std::vector<double> out;
    for (const auto& p : scene.points()) out.push_back(double(p.cameras_seen) / double(scene.total_cameras()));
    return out;
}

inline std::vector<double> camera_max_fraction(const SceneModel& scene) {
    int best = 0;
    for (const auto& p : scene.points()) best = std::max(best, p.cameras_seen);
    std::vector<double> out;
    for (const auto& p : scene.points()) out.push_back(double(p.cameras_seen) / double(best));
    return out;
}

inline std::vector<double> combination(const SceneModel& scene, double beta, double w) {
    const auto d = avg_distance(scene, beta);
    const auto f = camera_max_fraction(scene);
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = w * d[i] + (1.0 - w) * f[i];
    return out;
}

struct Objective {
    double coverage;
    double distinctiveness;
    double total;
};

/// Full double loop over all (i, j), zeros included.
inline Objective objective(const std::vector<double>& alpha, const SceneModel& scene, const std::vector<double>& d,
                           double tau, double sigma) {
    const std::size_t m = scene.size();
    long double c = 0.0L;
    long double dist = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) c += alpha[i] * alpha[j] * kernel(scene[i].position, scene[j].position, sigma);
        dist += d[i] * alpha[i];
    }
    return {double(c), double(dist), double(c - tau * dist)};
}

/// J restricted to coordinates (i, j) with the others frozen, as a function of
/// a_i on the line a_i + a_j = delta, including every term of the full objective
/// (so differences equal differences of J).
inline double objective_along_pair(const std::vector<double>& alpha, std::size_t i, std::size_t j, double a_i,
                                   const std::vector<double>& gram_matrix, const std::vector<double>& d, double tau) {
    std::vector<double> a = alpha;
    const double delta = alpha[i] + alpha[j];
    a[i] = a_i;
    a[j] = delta - a_i;
    const std::size_t m = a.size();
    long double quad = 0.0L;
    long double lin = 0.0L;
    for (std::size_t r = 0; r < m; ++r) {
        long double row = 0.0L;
        for (std::size_t c = 0; c < m; ++c) row += gram_matrix[r * m + c] * a[c];
        quad += a[r] * row;
        lin += d[r] * a[r];
    }
    return double(quad - tau * lin);
}

/// The two-variable cost with only the terms that depend on (a_i, a_j):
/// a_i^2 + 2 a_i a_j k + a_j^2 + 2 a_i th_i + 2 a_j th_j - tau d_i a_i - tau d_j a_j.
inline double pair_cost(double a_i, double delta, double k, double th_i, double th_j, double d_i, double d_j,
                        double tau) {
    const double a_j = delta - a_i;
    return a_i * a_i + 2.0 * a_i * a_j * k + a_j * a_j + 2.0 * a_i * th_i + 2.0 * a_j * th_j - tau * d_i * a_i -
           tau * d_j * a_j;
}

/// Random scene with positions in [0, extent)^3 and random tracks, for small
/// oracle comparisons.
inline SceneModel random_scene(std::size_t m, double extent, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(0.0, extent);
    std::uniform_int_distribution<int> cams(1, 20);
    std::uniform_real_distribution<double> dist(50.0, 400.0);
    std::vector<ScenePoint> pts(m);
    for (std::size_t i = 0; i < m; ++i) {
        pts[i].id = static_cast<std::int64_t>(i);
        for (auto& c : pts[i].position) c = coord(rng);
        pts[i].cameras_seen = cams(rng);
        pts[i].pair_distances.resize(static_cast<std::size_t>(pts[i].cameras_seen));
        for (auto& x : pts[i].pair_distances) x = dist(rng);
    }
    return SceneModel::create(std::move(pts), 20, 128);
}

inline std::vector<double> random_scores(std::size_t m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> d(m);
    for (auto& x : d) x = u(rng);
    return d;
}

/// Random point of the capped simplex: a uniform mix projected by repeated
/// pairwise mass moves that never leave the box.
inline std::vector<double> random_feasible_alpha(std::size_t m, double cap, std::mt19937_64& rng) {
    std::vector<double> a(m, 1.0 / double(m));
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t it = 0; it < 20 * m; ++it) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const double delta = a[i] + a[j];
        const double lo = std::max(0.0, delta - cap), hi = std::min(cap, delta);
        a[i] = lo + (hi - lo) * u(rng);
        a[j] = delta - a[i];
    }
    return a;
}

}  // namespace scenecomp::oracle

#endif  // SCENECOMP_TESTS_ORACLES_HPP
