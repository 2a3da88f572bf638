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

#ifndef SCENECOMP_COMPRESSOR_HPP
#define SCENECOMP_COMPRESSOR_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenecomp/objective.hpp"
#include "scenecomp/scene_model.hpp"
#include "scenecomp/smo_solver.hpp"

namespace scenecomp {

struct SelectedPoint {
    std::int64_t id = 0;
    std::size_t index = 0;  ///< position in the source scene
    double mass = 0.0;

    bool operator==(const SelectedPoint&) const = default;
};

/// A selection plus the objective of the distribution it came from.
struct Selection {
    std::vector<SelectedPoint> points;  ///< descending mass, ties by ascending index
    ObjectiveBreakdown objective;
};

struct CompressedScene {
    Selection result;
    /// Top-ranked initialization before any pair update; set when requested.
    std::optional<Selection> initial;
    std::size_t source_m = 0;
    /// Parameters with beta resolved to the value actually used.
    CompressionParams params;
};

inline constexpr double kRelativeSupportThreshold = 1e-8;

double default_support_threshold(double cap);

/// Indices with alpha_i > threshold, ascending.
std::vector<std::size_t> extract_support(const AlphaDistribution& alpha, double threshold);

struct CompressOptions {
    bool emit_initial = false;
    ProgressCallback progress;
    std::uint64_t progress_every = 0;
};

/// score -> initialize -> solve -> extract_support -> evaluate.
CompressedScene compress(const SceneModel& scene, const CompressionParams& params, const CompressOptions& options = {});

nlohmann::json params_to_json(const CompressionParams& params);
/// Inverse of params_to_json; missing keys keep their defaults.
CompressionParams params_from_json(const nlohmann::json& j);
nlohmann::json objective_to_json(const ObjectiveBreakdown& objective);
nlohmann::json compressed_to_json(const CompressedScene& compressed);

void write_compressed(const CompressedScene& compressed, const std::filesystem::path& path);
/// Positions of the selected points as an ASCII PLY file.
void write_selected_ply(const SceneModel& scene, const Selection& selection, const std::filesystem::path& path);

/// Dense alpha for `scene` from either a compressed-scene document
/// ({"selected": [{"id", "mass"}, ...]}) or a plain {"alpha": [...]} vector.
std::vector<double> alpha_from_json(const nlohmann::json& doc, const SceneModel& scene);

}  // namespace scenecomp

#endif  // SCENECOMP_COMPRESSOR_HPP
