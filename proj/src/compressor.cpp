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

#include "scenecomp/compressor.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "scenecomp/distinctiveness.hpp"

namespace scenecomp {

using nlohmann::json;

double default_support_threshold(double cap) { return kRelativeSupportThreshold * cap; }

std::vector<std::size_t> extract_support(const AlphaDistribution& alpha, double threshold) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha.alpha[i] > threshold) out.push_back(i);
    }
    return out;
}

namespace {

Selection make_selection(const SceneModel& scene, const AlphaDistribution& alpha, std::span<const double> scores,
                         const CompressionParams& params, double threshold) {
    Selection sel;
    for (std::size_t i : extract_support(alpha, threshold)) {
        sel.points.push_back({scene[i].id, i, alpha.alpha[i]});
    }
    std::stable_sort(sel.points.begin(), sel.points.end(),
                     [](const SelectedPoint& a, const SelectedPoint& b) { return a.mass > b.mass; });
    sel.objective = evaluate(alpha.alpha, scene, scores, params.tau, params.sigma);
    return sel;
}

json selection_to_json(const Selection& sel) {
    json points = json::array();
    for (const auto& p : sel.points) points.push_back({{"id", p.id}, {"mass", p.mass}});
    return {{"objective", objective_to_json(sel.objective)}, {"selected", std::move(points)}};
}

}  // namespace

CompressedScene compress(const SceneModel& scene, const CompressionParams& params, const CompressOptions& options) {
    params.validate();

    CompressedScene out;
    out.source_m = scene.size();
    out.params = params;
    if (params.score.kind == ScoreKind::avg_distance || params.score.kind == ScoreKind::combination) {
        out.params.score.beta = params.score.beta.value_or(default_beta(scene));
    }

    const DistinctivenessVector scores = compute_scores(scene, out.params.score);
    const double cap = box_cap(params.nu, scene.size());
    const double threshold = params.support_threshold.value_or(default_support_threshold(cap));
    out.params.support_threshold = threshold;

    if (options.emit_initial) {
        out.initial = make_selection(scene, initialize(scores.view(), params.nu), scores.view(), out.params, threshold);
    }
    const AlphaDistribution alpha = solve(scene, scores.view(), out.params, options.progress, options.progress_every);
    out.result = make_selection(scene, alpha, scores.view(), out.params, threshold);
    return out;
}

json params_to_json(const CompressionParams& params) {
    json score = {{"kind", std::string(to_string(params.score.kind))}, {"weight", params.score.weight}};
    score["beta"] = params.score.beta ? json(*params.score.beta) : json(nullptr);
    json out = {{"nu", params.nu},
                {"tau", params.tau},
                {"sigma", params.sigma},
                {"iterations", params.iterations},
                {"seed", params.seed},
                {"pair_strategy", std::string(to_string(params.pair_strategy))},
                {"score", std::move(score)},
                {"kernel_cache_mb", params.kernel_cache_mb}};
    out["support_threshold"] = params.support_threshold ? json(*params.support_threshold) : json(nullptr);
    return out;
}

CompressionParams params_from_json(const json& j) {
    CompressionParams p;
    if (!j.is_object()) throw std::invalid_argument("params must be a JSON object");
    p.nu = j.value("nu", p.nu);
    p.tau = j.value("tau", p.tau);
    p.sigma = j.value("sigma", p.sigma);
    p.iterations = j.value("iterations", p.iterations);
    p.seed = j.value("seed", p.seed);
    p.kernel_cache_mb = j.value("kernel_cache_mb", p.kernel_cache_mb);
    if (auto it = j.find("pair_strategy"); it != j.end()) {
        auto s = parse_pair_strategy(it->get<std::string>());
        if (!s) throw std::invalid_argument("unknown pair_strategy '" + it->get<std::string>() + "'");
        p.pair_strategy = *s;
    }
    if (auto it = j.find("support_threshold"); it != j.end() && !it->is_null()) {
        p.support_threshold = it->get<double>();
    }
    if (auto it = j.find("score"); it != j.end()) {
        if (auto k = it->find("kind"); k != it->end()) {
            auto kind = parse_score_kind(k->get<std::string>());
            if (!kind) throw std::invalid_argument("unknown score kind '" + k->get<std::string>() + "'");
            p.score.kind = *kind;
        }
        if (auto b = it->find("beta"); b != it->end() && !b->is_null()) p.score.beta = b->get<double>();
        p.score.weight = it->value("weight", p.score.weight);
    }
    return p;
}

json objective_to_json(const ObjectiveBreakdown& objective) {
    return {{"coverage", objective.coverage},
            {"distinctiveness", objective.distinctiveness},
            {"total", objective.total}};
}

json compressed_to_json(const CompressedScene& compressed) {
    json out = selection_to_json(compressed.result);
    out["source_m"] = compressed.source_m;
    out["params"] = params_to_json(compressed.params);
    if (compressed.initial) out["initial"] = selection_to_json(*compressed.initial);
    return out;
}

void write_compressed(const CompressedScene& compressed, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << compressed_to_json(compressed).dump(2) << '\n';
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

void write_selected_ply(const SceneModel& scene, const Selection& selection, const std::filesystem::path& path) {
    std::vector<Vec3> positions;
    positions.reserve(selection.points.size());
    for (const auto& p : selection.points) positions.push_back(scene[p.index].position);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << positions_to_ply(positions);
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::vector<double> alpha_from_json(const json& doc, const SceneModel& scene) {
    std::vector<double> alpha(scene.size(), 0.0);
    if (auto it = doc.find("alpha"); it != doc.end()) {
        if (!it->is_array() || it->size() != scene.size()) {
            throw FormatError("'alpha' must be an array with one entry per scene point", 0);
        }
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (!(*it)[i].is_number()) throw FormatError("'alpha' entries must be numbers", i);
            alpha[i] = (*it)[i].get<double>();
        }
        return alpha;
    }
    auto sel = doc.find("selected");
    if (sel == doc.end() || !sel->is_array()) {
        throw FormatError("alpha file needs an 'alpha' array or a 'selected' list", 0);
    }
    std::unordered_map<std::int64_t, std::size_t> by_id;
    by_id.reserve(scene.size());
    for (std::size_t i = 0; i < scene.size(); ++i) by_id.emplace(scene[i].id, i);
    for (std::size_t r = 0; r < sel->size(); ++r) {
        const auto& e = (*sel)[r];
        if (!e.is_object() || !e.contains("id") || !e.contains("mass") || !e["id"].is_number_integer() ||
            !e["mass"].is_number()) {
            throw FormatError("selected[" + std::to_string(r) + "]: expected {\"id\": int, \"mass\": number}", r);
        }
        const auto id = e["id"].get<std::int64_t>();
        auto found = by_id.find(id);
        if (found == by_id.end()) {
            throw ValidationError("selected[" + std::to_string(r) + "]: point id " + std::to_string(id) +
                                      " is not in the scene",
                                  id);
        }
        alpha[found->second] = e["mass"].get<double>();
    }
    return alpha;
}

}  // namespace scenecomp
