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

#ifndef SCENECOMP_DISTINCTIVENESS_HPP
#define SCENECOMP_DISTINCTIVENESS_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scenecomp/scene_model.hpp"

namespace scenecomp {

enum class ScoreKind { avg_distance, camera_fraction, camera_max_fraction, combination };

/// CLI spelling: avg-distance, camera-fraction, camera-max-fraction, combination.
std::string_view to_string(ScoreKind kind);
std::optional<ScoreKind> parse_score_kind(std::string_view name);

struct ScoreConfig {
    ScoreKind kind = ScoreKind::avg_distance;
    /// Normalization of the average descriptor distance. Unset means
    /// `default_beta(scene)`.
    std::optional<double> beta;
    /// Weight of the distance score in the combination score.
    double weight = 0.5;

    /// Throws std::invalid_argument unless beta > 0 (when set) and weight in [0,1].
    void validate() const;
};

/// Per-point distinctiveness in [0,1], index-aligned with SceneModel::points().
struct DistinctivenessVector {
    ScoreKind kind = ScoreKind::avg_distance;
    std::vector<double> scores;

    std::size_t size() const noexcept { return scores.size(); }
    double operator[](std::size_t i) const { return scores[i]; }
    std::span<const double> view() const noexcept { return scores; }
};

/// Mean of every pair distance in the scene; 1.0 when the scene has no pairs
/// or all distances are zero.
double default_beta(const SceneModel& scene);

/// d = exp(-mean(pair_distances) / beta). Points without pairs score 0.
DistinctivenessVector score_avg_distance(const SceneModel& scene, double beta);

/// d = cameras_seen / total_cameras.
DistinctivenessVector score_camera_fraction(const SceneModel& scene);

/// d = cameras_seen / max(cameras_seen).
DistinctivenessVector score_camera_max_fraction(const SceneModel& scene);

/// d = weight * avg_distance + (1 - weight) * camera_max_fraction.
DistinctivenessVector score_combination(const SceneModel& scene, double beta, double weight);

/// Dispatch on config.kind, resolving an unset beta to default_beta(scene).
DistinctivenessVector compute_scores(const SceneModel& scene, const ScoreConfig& config);

}  // namespace scenecomp

#endif  // SCENECOMP_DISTINCTIVENESS_HPP
