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

#include "scenecomp/distinctiveness.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace scenecomp {

std::string_view to_string(ScoreKind kind) {
    switch (kind) {
        case ScoreKind::avg_distance: return "avg-distance";
        case ScoreKind::camera_fraction: return "camera-fraction";
        case ScoreKind::camera_max_fraction: return "camera-max-fraction";
        case ScoreKind::combination: return "combination";
    }
    return "avg-distance";
}

std::optional<ScoreKind> parse_score_kind(std::string_view name) {
    for (auto kind : {ScoreKind::avg_distance, ScoreKind::camera_fraction, ScoreKind::camera_max_fraction,
                      ScoreKind::combination}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

void ScoreConfig::validate() const {
    if (beta && !(*beta > 0.0 && std::isfinite(*beta))) {
        throw std::invalid_argument("beta must be a positive finite number");
    }
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::invalid_argument("weight must lie in [0,1]");
    }
}

double default_beta(const SceneModel& scene) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& p : scene.points()) {
        for (double d : p.pair_distances) sum += d;
        count += p.pair_distances.size();
    }
    if (count == 0 || sum <= 0.0) return 1.0;
    return sum / static_cast<double>(count);
}

DistinctivenessVector score_avg_distance(const SceneModel& scene, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("score_avg_distance: beta must be > 0");
    DistinctivenessVector out{ScoreKind::avg_distance, std::vector<double>(scene.size(), 0.0)};
    std::size_t trackless = 0;
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const auto& dist = scene[i].pair_distances;
        if (dist.empty()) {
            ++trackless;
            continue;
        }
        double sum = 0.0;
        for (double d : dist) sum += d;
        const double mean = sum / static_cast<double>(dist.size());
        out.scores[i] = std::exp(-mean / beta);
    }
    if (trackless > 0) {
        std::cerr << "warning: " << trackless << " point(s) have no descriptor pairs; scored 0\n";
    }
    return out;
}

DistinctivenessVector score_camera_fraction(const SceneModel& scene) {
    DistinctivenessVector out{ScoreKind::camera_fraction, std::vector<double>(scene.size())};
    const double total = scene.total_cameras();
    for (std::size_t i = 0; i < scene.size(); ++i) {
        out.scores[i] = scene[i].cameras_seen / total;
    }
    return out;
}

DistinctivenessVector score_camera_max_fraction(const SceneModel& scene) {
    DistinctivenessVector out{ScoreKind::camera_max_fraction, std::vector<double>(scene.size())};
    const double best = scene.max_cameras_seen();
    for (std::size_t i = 0; i < scene.size(); ++i) {
        out.scores[i] = scene[i].cameras_seen / best;
    }
    return out;
}

DistinctivenessVector score_combination(const SceneModel& scene, double beta, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::invalid_argument("score_combination: weight must lie in [0,1]");
    }
    const auto distance = score_avg_distance(scene, beta);
    const auto frequency = score_camera_max_fraction(scene);
    DistinctivenessVector out{ScoreKind::combination, std::vector<double>(scene.size())};
    for (std::size_t i = 0; i < scene.size(); ++i) {
        out.scores[i] = weight * distance.scores[i] + (1.0 - weight) * frequency.scores[i];
    }
    return out;
}

DistinctivenessVector compute_scores(const SceneModel& scene, const ScoreConfig& config) {
    config.validate();
    switch (config.kind) {
        case ScoreKind::avg_distance:
            return score_avg_distance(scene, config.beta.value_or(default_beta(scene)));
        case ScoreKind::camera_fraction:
            return score_camera_fraction(scene);
        case ScoreKind::camera_max_fraction:
            return score_camera_max_fraction(scene);
        case ScoreKind::combination:
            return score_combination(scene, config.beta.value_or(default_beta(scene)), config.weight);
    }
    throw std::logic_error("unhandled score kind");
}

}  // namespace scenecomp
