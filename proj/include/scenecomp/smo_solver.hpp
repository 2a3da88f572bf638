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

// Pairwise (SMO-style) solver for
//
//     minimize    a' K a - tau d' a
//     subject to  sum(a) = 1,  0 <= a_i <= 1 / (nu m)
//
// where K is the RBF Gram matrix of the point positions and d the
// distinctiveness scores. Each step picks two coordinates, keeps their sum
// fixed and moves to the exact minimizer of the objective along that segment.

#ifndef SCENECOMP_SMO_SOLVER_HPP
#define SCENECOMP_SMO_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "scenecomp/distinctiveness.hpp"
#include "scenecomp/kernel.hpp"
#include "scenecomp/scene_model.hpp"

namespace scenecomp {

enum class PairStrategy { uniform, active };

std::string_view to_string(PairStrategy strategy);
std::optional<PairStrategy> parse_pair_strategy(std::string_view name);

inline constexpr std::uint64_t kDefaultIterations = 4096;

struct CompressionParams {
    double nu = 0.05;
    double tau = 1.0;
    double sigma = 1.0;
    std::uint64_t iterations = kDefaultIterations;
    std::uint64_t seed = 1;
    PairStrategy pair_strategy = PairStrategy::uniform;
    ScoreConfig score;
    std::size_t kernel_cache_mb = kDefaultKernelCacheMb;
    /// Mass above which a point counts as selected. Unset means 1e-8 * cap.
    std::optional<double> support_threshold;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Upper bound 1 / (nu m) of every entry.
double box_cap(double nu, std::size_t m);

/// ceil(nu m), with nu m snapped to the nearest integer when it is within a
/// relative 1e-9 of it (0.1 * 30 must give 3, not 4).
std::size_t min_support(double nu, std::size_t m);

struct AlphaDistribution {
    std::vector<double> alpha;
    double cap = 1.0;

    std::size_t size() const noexcept { return alpha.size(); }
    double sum() const;
    std::size_t positive_count() const;
};

/// Feasible start: the min_support(nu, m) best-scoring points get `cap` each,
/// ties broken by lower index. When nu m is not an integer the lowest ranked
/// of them takes the remainder 1 - (n-1) cap instead.
AlphaDistribution initialize(std::span<const double> scores, double nu);

/// Unconstrained minimizer of the pair objective along a_i + a_j = delta:
/// (T / (2 (1 - k_ij)) + delta) / 2.
double unboxed_pair_optimum(double linear_term, double k_ij, double delta);

/// Inputs of one two-variable subproblem. `theta_i` / `theta_j` are the
/// kernel-weighted sums over every point except i and j.
struct PairSubproblem {
    double delta;
    double cap;
    double k_ij;
    double theta_i;
    double theta_j;
    double d_i;
    double d_j;
    double tau;

    /// T = tau (d_i - d_j) - 2 theta_i + 2 theta_j.
    double linear_term() const { return tau * (d_i - d_j) - 2.0 * theta_i + 2.0 * theta_j; }
};

/// Below this value of 1 - k_ij the pair objective is treated as linear.
inline constexpr double kDegenerateCurvature = 1e-12;

/// New a_i minimizing the pair objective on [max(0, delta - cap), min(cap, delta)].
/// `current_i` is returned (clipped) when the objective is flat along the segment.
double solve_pair(const PairSubproblem& sub, double current_i);

/// Solver state: alpha, the running sums theta[i] = sum_l alpha_l K(x_i, x_l),
/// the seeded pair stream and a kernel row cache. Single-threaded.
class SmoSolver {
public:
    /// `kernel_cache_rows` is clamped to [2, m].
    SmoSolver(const SceneModel& scene, std::span<const double> scores, double tau, double sigma,
              PairStrategy strategy, std::uint64_t seed, AlphaDistribution start,
              std::size_t kernel_cache_rows);

    /// Requires m >= 2.
    std::pair<std::size_t, std::size_t> select_pair();

    /// One pair update. Returns true if alpha changed.
    bool step(std::size_t i, std::size_t j);

    /// select_pair + step, `iterations` times (nothing when m == 1).
    void run(std::uint64_t iterations);

    const AlphaDistribution& alpha() const noexcept { return alpha_; }
    std::span<const double> theta() const noexcept { return theta_; }
    std::span<const double> scores() const noexcept { return scores_; }
    std::size_t size() const noexcept { return alpha_.size(); }
    std::uint64_t iteration() const noexcept { return iteration_; }
    std::size_t positive_count() const noexcept { return positive_.size(); }
    const KernelRowCache& cache() const noexcept { return cache_; }

    /// theta recomputed from scratch, for consistency checks.
    std::vector<double> recompute_theta() const;

    /// Objective from the maintained theta sums: alpha' theta - tau d' alpha.
    double running_objective() const;

private:
    void compute_theta(std::vector<double>& out) const;
    void mark(std::size_t k);

    std::vector<Vec3> positions_;
    std::vector<double> scores_;
    double tau_;
    double sigma_;
    PairStrategy strategy_;
    std::mt19937_64 rng_;
    AlphaDistribution alpha_;
    std::vector<double> theta_;
    KernelRowCache cache_;
    std::uint64_t iteration_ = 0;

    // Indices with alpha > 0, and each index's slot in that list (npos if absent).
    std::vector<std::size_t> positive_;
    std::vector<std::size_t> slot_;
};

using ProgressCallback = std::function<void(const SmoSolver&)>;

/// initialize + params.iterations pair updates. `progress` is invoked every
/// `progress_every` iterations when both are set.
AlphaDistribution solve(const SceneModel& scene, std::span<const double> scores, const CompressionParams& params,
                        const ProgressCallback& progress = {}, std::uint64_t progress_every = 0);

}  // namespace scenecomp

#endif  // SCENECOMP_SMO_SOLVER_HPP
