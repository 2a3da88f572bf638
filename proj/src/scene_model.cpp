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

#include "scenecomp/scene_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace scenecomp {

namespace {

using nlohmann::json;

std::string point_label(std::int64_t id) { return "point id " + std::to_string(id); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error while reading '" + path.string() + "'");
    }
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw IoError("error while writing '" + path.string() + "'");
    }
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Integer field of a JSON object, range-checked into int.
template <typename Int>
Int get_integer(const json& obj, const char* key, std::size_t record, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(where + ": missing field '" + key + "'", record);
    }
    if (!it->is_number_integer()) {
        throw FormatError(where + ": field '" + key + "' must be an integer", record);
    }
    if (it->is_number_unsigned()) {
        auto v = it->get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
            throw FormatError(where + ": field '" + key + "' is out of range", record);
        }
        return static_cast<Int>(v);
    }
    auto v = it->get<std::int64_t>();
    if (v < static_cast<std::int64_t>(std::numeric_limits<Int>::min()) ||
        v > static_cast<std::int64_t>(std::numeric_limits<Int>::max())) {
        throw FormatError(where + ": field '" + key + "' is out of range", record);
    }
    return static_cast<Int>(v);
}

ScenePoint parse_point(const json& obj, std::size_t record) {
    const std::string where = "points[" + std::to_string(record) + "]";
    if (!obj.is_object()) {
        throw FormatError(where + ": expected an object", record);
    }
    ScenePoint p;
    p.id = get_integer<std::int64_t>(obj, "id", record, where);

    auto pos = obj.find("position");
    if (pos == obj.end() || !pos->is_array() || pos->size() != 3) {
        throw FormatError(where + ": 'position' must be an array of 3 numbers", record);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        if (!(*pos)[k].is_number()) {
            throw FormatError(where + ": 'position' must be an array of 3 numbers", record);
        }
        p.position[k] = (*pos)[k].get<double>();
    }

    auto dist = obj.find("pair_distances");
    if (dist == obj.end() || !dist->is_array()) {
        throw FormatError(where + ": 'pair_distances' must be an array of numbers", record);
    }
    p.pair_distances.reserve(dist->size());
    for (const auto& d : *dist) {
        if (!d.is_number()) {
            throw FormatError(where + ": 'pair_distances' must be an array of numbers", record);
        }
        p.pair_distances.push_back(d.get<double>());
    }

    p.cameras_seen = get_integer<int>(obj, "cameras_seen", record, where);
    return p;
}

}  // namespace

SceneModel SceneModel::create(std::vector<ScenePoint> points, int total_cameras, int descriptor_dim) {
    if (points.empty()) {
        throw ValidationError("scene has no points");
    }
    if (total_cameras < 1) {
        throw ValidationError("total_cameras must be >= 1, got " + std::to_string(total_cameras));
    }
    if (descriptor_dim < 1) {
        throw ValidationError("descriptor_dim must be >= 1, got " + std::to_string(descriptor_dim));
    }

    std::unordered_set<std::int64_t> seen_ids;
    seen_ids.reserve(points.size());
    int max_seen = 0;
    for (const auto& p : points) {
        if (p.id < 0) {
            throw ValidationError(point_label(p.id) + ": id must be non-negative", p.id);
        }
        if (!seen_ids.insert(p.id).second) {
            throw ValidationError(point_label(p.id) + ": duplicate id", p.id);
        }
        for (double c : p.position) {
            if (!std::isfinite(c)) {
                throw ValidationError(point_label(p.id) + ": position is not finite", p.id);
            }
        }
        for (double d : p.pair_distances) {
            if (!std::isfinite(d) || d < 0.0) {
                throw ValidationError(point_label(p.id) + ": pair distance must be finite and >= 0", p.id);
            }
        }
        if (p.cameras_seen < 1) {
            throw ValidationError(point_label(p.id) + ": cameras_seen must be >= 1", p.id);
        }
        if (p.cameras_seen > total_cameras) {
            throw ValidationError(point_label(p.id) + ": cameras_seen " + std::to_string(p.cameras_seen) +
                                      " exceeds total_cameras " + std::to_string(total_cameras),
                                  p.id);
        }
        max_seen = std::max(max_seen, p.cameras_seen);
    }

    SceneModel scene;
    scene.points_ = std::move(points);
    scene.total_cameras_ = total_cameras;
    scene.descriptor_dim_ = descriptor_dim;
    scene.max_cameras_seen_ = max_seen;
    return scene;
}

SceneFormat parse_scene_format(std::string_view name) {
    if (name == "json") return SceneFormat::json;
    if (name == "ply") return SceneFormat::ply;
    throw std::invalid_argument("unknown scene format '" + std::string(name) + "' (expected json or ply)");
}

std::string_view to_string(SceneFormat format) {
    return format == SceneFormat::json ? "json" : "ply";
}

SceneModel parse_scene_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
        throw FormatError("JSON syntax error at line " + std::to_string(line) + ": " + e.what(), line);
    }
    if (!doc.is_object()) {
        throw FormatError("scene: top level must be an object", 0);
    }
    const int total_cameras = get_integer<int>(doc, "total_cameras", 0, "scene");
    const int descriptor_dim = get_integer<int>(doc, "descriptor_dim", 0, "scene");
    auto pts = doc.find("points");
    if (pts == doc.end() || !pts->is_array()) {
        throw FormatError("scene: 'points' must be an array", 0);
    }
    std::vector<ScenePoint> points;
    points.reserve(pts->size());
    for (std::size_t r = 0; r < pts->size(); ++r) {
        points.push_back(parse_point((*pts)[r], r));
    }
    return SceneModel::create(std::move(points), total_cameras, descriptor_dim);
}

std::string scene_to_json(const SceneModel& scene) {
    json pts = json::array();
    for (const auto& p : scene.points()) {
        pts.push_back({{"id", p.id},
                       {"position", {p.position[0], p.position[1], p.position[2]}},
                       {"pair_distances", p.pair_distances},
                       {"cameras_seen", p.cameras_seen}});
    }
    json doc = {{"total_cameras", scene.total_cameras()},
                {"descriptor_dim", scene.descriptor_dim()},
                {"points", std::move(pts)}};
    return doc.dump() + "\n";
}

SceneModel parse_scene_ply(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line() || line != "ply") {
        throw FormatError("PLY: missing 'ply' magic", line_no == 0 ? 1 : line_no);
    }

    std::size_t vertex_count = 0;
    bool in_vertex = false;
    bool seen_vertex = false;
    bool vertex_first = false;
    std::vector<std::string> vertex_props;
    std::vector<bool> single_precision;
    bool header_done = false;
    bool ascii = false;
    while (next_line()) {
        std::istringstream ls(line);
        std::string keyword;
        ls >> keyword;
        if (keyword == "format") {
            std::string kind;
            ls >> kind;
            if (kind != "ascii") {
                throw FormatError("PLY: only ascii format is supported", line_no);
            }
            ascii = true;
        } else if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) {
            continue;
        } else if (keyword == "element") {
            std::string name;
            long long count = -1;
            ls >> name >> count;
            if (!ls || count < 0) {
                throw FormatError("PLY: malformed element line", line_no);
            }
            in_vertex = (name == "vertex");
            if (in_vertex) {
                vertex_first = !seen_vertex && vertex_props.empty();
                seen_vertex = true;
                vertex_count = static_cast<std::size_t>(count);
            } else if (!seen_vertex) {
                throw FormatError("PLY: the vertex element must come first", line_no);
            }
        } else if (keyword == "property") {
            if (in_vertex) {
                std::string type, name;
                ls >> type;
                if (type == "list") {
                    throw FormatError("PLY: list properties on vertices are not supported", line_no);
                }
                ls >> name;
                vertex_props.push_back(name);
                single_precision.push_back(type == "float" || type == "float32");
            }
        } else if (keyword == "end_header") {
            header_done = true;
            break;
        } else {
            throw FormatError("PLY: unexpected header line '" + line + "'", line_no);
        }
    }
    if (!header_done) {
        throw FormatError("PLY: missing end_header", line_no);
    }
    if (!ascii) {
        throw FormatError("PLY: missing format line", line_no);
    }
    if (!seen_vertex || !vertex_first) {
        throw FormatError("PLY: no vertex element", line_no);
    }
    std::array<std::size_t, 3> axis{};
    const char* names[3] = {"x", "y", "z"};
    for (std::size_t k = 0; k < 3; ++k) {
        auto it = std::find(vertex_props.begin(), vertex_props.end(), names[k]);
        if (it == vertex_props.end()) {
            throw FormatError(std::string("PLY: vertex property '") + names[k] + "' missing", line_no);
        }
        axis[k] = static_cast<std::size_t>(it - vertex_props.begin());
    }

    std::vector<ScenePoint> points;
    points.reserve(vertex_count);
    std::vector<double> values(vertex_props.size());
    for (std::size_t v = 0; v < vertex_count; ++v) {
        if (!next_line()) {
            throw FormatError("PLY: expected " + std::to_string(vertex_count) + " vertices, found " +
                                  std::to_string(v),
                              line_no + 1);
        }
        std::istringstream ls(line);
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (!(ls >> values[k])) {
                throw FormatError("PLY: malformed vertex record", line_no);
            }
            if (single_precision[k]) values[k] = static_cast<float>(values[k]);
        }
        ScenePoint p;
        p.id = static_cast<std::int64_t>(v);
        p.position = {values[axis[0]], values[axis[1]], values[axis[2]]};
        points.push_back(std::move(p));
    }
    return SceneModel::create(std::move(points), 1, 1);
}

std::string positions_to_ply(const std::vector<Vec3>& positions) {
    std::ostringstream out;
    out << "ply\n"
        << "format ascii 1.0\n"
        << "element vertex " << positions.size() << "\n"
        << "property float x\n"
        << "property float y\n"
        << "property float z\n"
        << "end_header\n";
    out.precision(std::numeric_limits<float>::max_digits10);
    for (const auto& p : positions) {
        out << static_cast<float>(p[0]) << ' ' << static_cast<float>(p[1]) << ' '
            << static_cast<float>(p[2]) << '\n';
    }
    return out.str();
}

SceneModel load_scene(const std::filesystem::path& path, SceneFormat format) {
    const std::string text = read_file(path);
    return format == SceneFormat::json ? parse_scene_json(text) : parse_scene_ply(text);
}

void save_scene(const SceneModel& scene, const std::filesystem::path& path, SceneFormat format) {
    if (format == SceneFormat::json) {
        write_file(path, scene_to_json(scene));
        return;
    }
    std::vector<Vec3> positions;
    positions.reserve(scene.size());
    for (const auto& p : scene.points()) positions.push_back(p.position);
    write_file(path, positions_to_ply(positions));
}

SceneModel synth_scene(std::size_t num_points, int num_cameras, double extent, std::uint64_t seed) {
    if (num_points < 1) throw std::invalid_argument("synth_scene: num_points must be >= 1");
    if (num_cameras < 1) throw std::invalid_argument("synth_scene: num_cameras must be >= 1");
    if (!(extent > 0.0) || !std::isfinite(extent)) {
        throw std::invalid_argument("synth_scene: extent must be a positive finite number");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, extent);
    std::binomial_distribution<int> extra_cameras(num_cameras - 1, kSynthTrackProbability);
    std::normal_distribution<double> log_spread(0.0, kSynthDistanceLogSigma);
    std::uniform_real_distribution<double> jitter(0.5, 1.5);

    std::vector<ScenePoint> points(num_points);
    for (std::size_t i = 0; i < num_points; ++i) {
        auto& p = points[i];
        p.id = static_cast<std::int64_t>(i);
        for (auto& c : p.position) c = coord(rng);
        p.cameras_seen = 1 + extra_cameras(rng);
        const double mu = kSynthDistanceScale * std::exp(log_spread(rng));
        p.pair_distances.resize(static_cast<std::size_t>(p.cameras_seen - 1));
        for (auto& d : p.pair_distances) d = mu * jitter(rng);
    }
    return SceneModel::create(std::move(points), num_cameras, 128);
}

}  // namespace scenecomp
