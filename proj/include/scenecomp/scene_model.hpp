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

#ifndef SCENECOMP_SCENE_MODEL_HPP
#define SCENECOMP_SCENE_MODEL_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scenecomp/errors.hpp"

namespace scenecomp {

using Vec3 = std::array<double, 3>;

/// One reconstructed 3D point together with the raw inputs of the distinctiveness scores.
struct ScenePoint {
    std::int64_t id = 0;
    Vec3 position{0.0, 0.0, 0.0};
    /// Descriptor distances over the point's track correspondence pairs.
    std::vector<double> pair_distances;
    int cameras_seen = 1;

    bool operator==(const ScenePoint&) const = default;
};

/// Validated, immutable point cloud. Construct through `SceneModel::create`,
/// `load_scene` or `synth_scene`; every instance satisfies the scene invariants.
class SceneModel {
public:
    /// Throws ValidationError if any invariant is violated.
    static SceneModel create(std::vector<ScenePoint> points, int total_cameras, int descriptor_dim);

    const std::vector<ScenePoint>& points() const noexcept { return points_; }
    const ScenePoint& operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const noexcept { return points_.size(); }
    int total_cameras() const noexcept { return total_cameras_; }
    int descriptor_dim() const noexcept { return descriptor_dim_; }
    int max_cameras_seen() const noexcept { return max_cameras_seen_; }

    bool operator==(const SceneModel&) const = default;

private:
    SceneModel() = default;

    std::vector<ScenePoint> points_;
    int total_cameras_ = 1;
    int descriptor_dim_ = 1;
    int max_cameras_seen_ = 1;
};

enum class SceneFormat { json, ply };

SceneFormat parse_scene_format(std::string_view name);
std::string_view to_string(SceneFormat format);

/// JSON carries the full model. PLY carries positions only: loaded points get
/// id = vertex index, cameras_seen = 1, no descriptor pairs and total_cameras = 1.
SceneModel load_scene(const std::filesystem::path& path, SceneFormat format);
void save_scene(const SceneModel& scene, const std::filesystem::path& path, SceneFormat format);

SceneModel parse_scene_json(std::string_view text);
std::string scene_to_json(const SceneModel& scene);
SceneModel parse_scene_ply(std::string_view text);
std::string positions_to_ply(const std::vector<Vec3>& positions);

/// Deterministic synthetic scene for tests and benchmarks.
///
/// - positions: uniform in the cube [0, extent)^3.
/// - cameras_seen: 1 + Binomial(num_cameras - 1, kSynthTrackProbability).
/// - pair_distances: cameras_seen - 1 consecutive-track pairs. Each point draws a
///   base distance mu = kSynthDistanceScale * exp(kSynthDistanceLogSigma * Z), Z ~ N(0,1),
///   and each pair distance is mu * U(0.5, 1.5).
/// - total_cameras = num_cameras, descriptor_dim = 128, ids 0..num_points-1.
SceneModel synth_scene(std::size_t num_points, int num_cameras, double extent, std::uint64_t seed);

inline constexpr double kSynthTrackProbability = 0.1;
inline constexpr double kSynthDistanceScale = 250.0;
inline constexpr double kSynthDistanceLogSigma = 0.5;

}  // namespace scenecomp

#endif  // SCENECOMP_SCENE_MODEL_HPP
