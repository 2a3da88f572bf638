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

#include "scenecomp/cli.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scenecomp/compressor.hpp"
#include "scenecomp/distinctiveness.hpp"
#include "scenecomp/objective.hpp"
#include "scenecomp/scene_model.hpp"
#include "scenecomp/smo_solver.hpp"

namespace scenecomp::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_bound(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s << v;
    return s.str();
}

const FlagRange& range_of(const std::string& flag) {
    for (const auto& r : flag_ranges()) {
        if (r.flag == flag) return r;
    }
    throw std::logic_error("no range registered for " + flag);
}

bool is_integer_literal(const std::string& s) {
    std::size_t k = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    }
    return true;
}

CLI::Validator range_validator(const FlagRange& r) {
    return CLI::Validator(
        [r](std::string& input) -> std::string {
            double v = 0.0;
            std::size_t used = 0;
            try {
                v = std::stod(input, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != input.size() || std::isnan(v)) {
                return "expected a number, got '" + input + "'";
            }
            if (r.integer && !is_integer_literal(input)) {
                return "expected an integer in " + r.interval() + ", got '" + input + "'";
            }
            if (!r.contains(v)) {
                return "value " + input + " outside valid range " + r.interval();
            }
            return {};
        },
        "", "range " + r.interval());
}

// Adds a numeric option whose description ends with its valid range.
template <typename T>
CLI::Option* add_ranged(CLI::App* app, const std::string& flag, T& target, const std::string& text) {
    const FlagRange& r = range_of(flag);
    return app->add_option(flag, target, text + ", range " + r.interval())->check(range_validator(r));
}

void print_error(std::ostream& err, std::string_view kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw IoError("error while writing '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what(), 0);
    }
}

struct ScoreFlags {
    std::string kind = std::string(to_string(ScoreKind::avg_distance));
    double beta = 0.0;
    double weight = 0.5;
    CLI::Option* kind_opt = nullptr;
    CLI::Option* beta_opt = nullptr;
    CLI::Option* weight_opt = nullptr;

    void add_to(CLI::App* app) {
        kind_opt = app->add_option("--score", kind, "distinctiveness score")
                       ->check(CLI::IsMember({"avg-distance", "camera-fraction", "camera-max-fraction", "combination"}));
        beta_opt = add_ranged(app, "--beta", beta, "avg-distance normalization (default: scene mean pair distance)");
        weight_opt = add_ranged(app, "--weight", weight, "weight of the distance score in 'combination'");
    }

    // Applies only the flags given on the command line.
    void apply(ScoreConfig& config) const {
        if (kind_opt->count() > 0) config.kind = *parse_score_kind(kind);
        if (beta_opt->count() > 0) config.beta = beta;
        if (weight_opt->count() > 0) config.weight = weight;
    }
};

}  // namespace

bool FlagRange::contains(double v) const {
    const bool above = lo_open ? v > lo : v >= lo;
    const bool below = hi_open ? v < hi : v <= hi;
    return above && below;
}

std::string FlagRange::interval() const {
    return std::string(lo_open ? "(" : "[") + format_bound(lo) + "," + format_bound(hi) + (hi_open ? ")" : "]");
}

const std::vector<FlagRange>& flag_ranges() {
    static const std::vector<FlagRange> ranges = {
        {"--nu", 0.0, 1.0, true, false, false},
        {"--tau", 0.0, kInf, false, true, false},
        {"--sigma", 0.0, kInf, true, true, false},
        {"--iterations", 1.0, kInf, false, true, true},
        {"--seed", 0.0, kInf, false, true, true},
        {"--beta", 0.0, kInf, true, true, false},
        {"--weight", 0.0, 1.0, false, false, false},
        {"--support-threshold", 0.0, kInf, false, true, false},
        {"--kernel-cache-mb", 1.0, kInf, false, true, true},
        {"--log-every", 0.0, kInf, false, true, true},
        {"--points", 1.0, kInf, false, true, true},
        {"--cameras", 1.0, static_cast<double>(std::numeric_limits<int>::max()), false, false, true},
        {"--extent", 0.0, kInf, true, true, false},
    };
    return ranges;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Select a sparse, distinctive, well-spread subset of an SfM point cloud."};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::string format = "json";
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "scene file format {json,ply}")
            ->check(CLI::IsMember({"json", "ply"}))
            ->capture_default_str();
    };

    // compress
    CompressionParams params;
    std::string pair_strategy = "uniform";
    double support_threshold = 0.0;
    std::uint64_t log_every = 0;
    bool emit_initial = false;
    std::string output_ply;
    ScoreFlags compress_score;
    auto* compress_cmd = app.add_subcommand("compress", "score, solve and write the selected subset as JSON");
    compress_cmd->add_option("--input", input, "input scene")->required()->check(CLI::ExistingFile);
    compress_cmd->add_option("--output", output, "output JSON (selected ids and masses)")->required();
    add_format(compress_cmd);
    add_ranged(compress_cmd, "--nu", params.nu, "compression factor")->capture_default_str();
    add_ranged(compress_cmd, "--tau", params.tau, "distinctiveness trade-off")->capture_default_str();
    add_ranged(compress_cmd, "--sigma", params.sigma, "RBF bandwidth in scene units")->capture_default_str();
    add_ranged(compress_cmd, "--iterations", params.iterations, "pair updates")->capture_default_str();
    add_ranged(compress_cmd, "--seed", params.seed, "pair selection seed")->capture_default_str();
    compress_score.add_to(compress_cmd);
    compress_cmd->add_option("--pair-strategy", pair_strategy, "pair selection {uniform,active}")
        ->check(CLI::IsMember({"uniform", "active"}))
        ->capture_default_str();
    auto* threshold_opt = add_ranged(compress_cmd, "--support-threshold", support_threshold,
                                     "mass above which a point is kept (default: 1e-8 / (nu m))");
    add_ranged(compress_cmd, "--kernel-cache-mb", params.kernel_cache_mb, "kernel row cache budget")
        ->capture_default_str();
    add_ranged(compress_cmd, "--log-every", log_every, "progress line every N iterations, 0 = off")
        ->capture_default_str();
    compress_cmd->add_flag("--emit-initial", emit_initial, "also write the initialization-only selection");
    compress_cmd->add_option("--output-ply", output_ply, "also write the selected positions as ASCII PLY");

    // score
    ScoreFlags score_flags;
    auto* score_cmd = app.add_subcommand("score", "print the distinctiveness vector as JSON");
    score_cmd->add_option("--input", input, "input scene")->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--output", output, "output JSON (default: stdout)");
    add_format(score_cmd);
    score_flags.add_to(score_cmd);

    // eval
    std::string alpha_path;
    double eval_tau = 1.0;
    double eval_sigma = 1.0;
    ScoreFlags eval_score;
    auto* eval_cmd = app.add_subcommand("eval", "print the objective breakdown of a distribution as JSON");
    eval_cmd->add_option("--input", input, "input scene")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--alpha", alpha_path, "compress output or {\"alpha\": [...]} file")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--output", output, "output JSON (default: stdout)");
    add_format(eval_cmd);
    auto* eval_tau_opt = add_ranged(eval_cmd, "--tau", eval_tau, "distinctiveness trade-off (default: from --alpha)");
    auto* eval_sigma_opt = add_ranged(eval_cmd, "--sigma", eval_sigma, "RBF bandwidth (default: from --alpha)");
    eval_score.add_to(eval_cmd);

    // synth
    std::size_t synth_points = 1000;
    int synth_cameras = 50;
    double synth_extent = 100.0;
    std::uint64_t synth_seed = 1;
    auto* synth_cmd = app.add_subcommand("synth", "write a deterministic synthetic scene");
    add_ranged(synth_cmd, "--points", synth_points, "number of points")->capture_default_str();
    add_ranged(synth_cmd, "--cameras", synth_cameras, "number of cameras")->capture_default_str();
    add_ranged(synth_cmd, "--extent", synth_extent, "cube side in scene units")->capture_default_str();
    add_ranged(synth_cmd, "--seed", synth_seed, "generator seed")->capture_default_str();
    synth_cmd->add_option("--output", output, "output scene")->required();
    add_format(synth_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, "usage", e.what());
        return kUsage;
    }

    try {
        const SceneFormat scene_format = parse_scene_format(format);

        if (*synth_cmd) {
            const SceneModel scene = synth_scene(synth_points, synth_cameras, synth_extent, synth_seed);
            save_scene(scene, output, scene_format);
            out << "wrote " << scene.size() << " points, " << scene.total_cameras() << " cameras to " << output
                << '\n';
            return kOk;
        }

        const SceneModel scene = load_scene(input, scene_format);

        if (*score_cmd) {
            ScoreConfig config;
            score_flags.apply(config);
            config.validate();
            const DistinctivenessVector scores = compute_scores(scene, config);
            json doc = {{"kind", std::string(to_string(scores.kind))}, {"scores", scores.scores}};
            write_text(output, doc.dump() + "\n", out);
            return kOk;
        }

        if (*eval_cmd) {
            const json doc = read_json_file(alpha_path);
            CompressionParams recorded;
            if (auto it = doc.find("params"); it != doc.end()) recorded = params_from_json(*it);
            if (eval_tau_opt->count() > 0) recorded.tau = eval_tau;
            if (eval_sigma_opt->count() > 0) recorded.sigma = eval_sigma;
            eval_score.apply(recorded.score);
            recorded.score.validate();
            const std::vector<double> alpha = alpha_from_json(doc, scene);
            const DistinctivenessVector scores = compute_scores(scene, recorded.score);
            const ObjectiveBreakdown objective =
                evaluate(alpha, scene, scores.view(), recorded.tau, recorded.sigma);
            json result = objective_to_json(objective);
            write_text(output, result.dump() + "\n", out);
            return kOk;
        }

        // compress
        params.pair_strategy = *parse_pair_strategy(pair_strategy);
        compress_score.apply(params.score);
        if (threshold_opt->count() > 0) params.support_threshold = support_threshold;
        params.validate();

        CompressOptions options;
        options.emit_initial = emit_initial;
        if (log_every > 0) {
            options.progress_every = log_every;
            options.progress = [&err](const SmoSolver& solver) {
                err << "iter " << solver.iteration() << "  J " << std::setprecision(12)
                    << solver.running_objective() << "  positive " << solver.positive_count() << '\n';
            };
        }
        const CompressedScene compressed = compress(scene, params, options);
        write_compressed(compressed, output);
        if (!output_ply.empty()) write_selected_ply(scene, compressed.result, output_ply);

        const auto kept = compressed.result.points.size();
        out << "selected " << kept << " of " << compressed.source_m << " points ("
            << std::setprecision(4) << 100.0 * static_cast<double>(kept) / static_cast<double>(compressed.source_m)
            << "%), J " << std::setprecision(10) << compressed.result.objective.total << " (coverage "
            << compressed.result.objective.coverage << ", distinctiveness "
            << compressed.result.objective.distinctiveness << ")\n";
        return kOk;
    } catch (const IoError& e) {
        print_error(err, "io", e.what());
        return kIo;
    } catch (const FormatError& e) {
        print_error(err, "format", e.what());
        return kBadInput;
    } catch (const ValidationError& e) {
        print_error(err, "validation", e.what());
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        print_error(err, "invalid-argument", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        print_error(err, "internal", e.what());
        return kFailure;
    }
}

}  // namespace scenecomp::cli
