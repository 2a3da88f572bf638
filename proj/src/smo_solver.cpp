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

#include "scenecomp/smo_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scenecomp {

namespace {

constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

}  // namespace

std::string_view to_string(PairStrategy strategy) {
    return strategy == PairStrategy::uniform ? "uniform" : "active";
}

std::optional<PairStrategy> parse_pair_strategy(std::string_view name) {
    if (name == "uniform") return PairStrategy::uniform;
    if (name == "active") return PairStrategy::active;
    return std::nullopt;
}

void CompressionParams::validate() const {
    if (!(nu > 0.0 && nu <= 1.0)) {
        throw std::invalid_argument("nu must lie in (0,1], got " + std::to_string(nu));
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("tau must be a finite number >= 0, got " + std::to_string(tau));
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be a finite number > 0, got " + std::to_string(sigma));
    }
    if (iterations < 1) {
        throw std::invalid_argument("iterations must be >= 1");
    }
    if (kernel_cache_mb < 1) {
        throw std::invalid_argument("kernel_cache_mb must be >= 1");
    }
    if (support_threshold && !(*support_threshold >= 0.0 && std::isfinite(*support_threshold))) {
        throw std::invalid_argument("support_threshold must be a finite number >= 0");
    }
    score.validate();
}

double box_cap(double nu, std::size_t m) { return 1.0 / (nu * static_cast<double>(m)); }

std::size_t min_support(double nu, std::size_t m) {
    const double x = nu * static_cast<double>(m);
    const double nearest = std::round(x);
    const double n = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
    return std::clamp<std::size_t>(static_cast<std::size_t>(n), 1, m);
}

double AlphaDistribution::sum() const { return std::accumulate(alpha.begin(), alpha.end(), 0.0); }

std::size_t AlphaDistribution::positive_count() const {
    return static_cast<std::size_t>(std::count_if(alpha.begin(), alpha.end(), [](double a) { return a > 0.0; }));
}

AlphaDistribution initialize(std::span<const double> scores, double nu) {
    const std::size_t m = scores.size();
    if (m == 0) throw std::invalid_argument("initialize: empty score vector");
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("initialize: nu must lie in (0,1]");

    AlphaDistribution out{std::vector<double>(m, 0.0), box_cap(nu, m)};
    const std::size_t n = min_support(nu, m);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    for (std::size_t r = 0; r < n; ++r) out.alpha[order[r]] = out.cap;

    // When nu m is integral the n caps already sum to one.
    if (std::abs(nu * static_cast<double>(m) - static_cast<double>(n)) > 1e-9 * static_cast<double>(n)) {
        double rest = 0.0;
        for (std::size_t r = 0; r + 1 < n; ++r) rest += out.alpha[order[r]];
        out.alpha[order[n - 1]] = std::max(0.0, 1.0 - rest);
    }
    return out;
}

double unboxed_pair_optimum(double linear_term, double k_ij, double delta) {
    return 0.5 * (linear_term / (2.0 * (1.0 - k_ij)) + delta);
}

double solve_pair(const PairSubproblem& sub, double current_i) {
    const double hi = std::min(sub.cap, sub.delta);
    const double lo = std::min(hi, std::max(0.0, sub.delta - sub.cap));
    const double t = sub.linear_term();

    if (1.0 - sub.k_ij < kDegenerateCurvature) {
        // Objective is linear in a_i with slope -T.
        if (t > 0.0) return hi;
        if (t < 0.0) return lo;
        return std::clamp(current_i, lo, hi);
    }
    return std::clamp(unboxed_pair_optimum(t, sub.k_ij, sub.delta), lo, hi);
}

SmoSolver::SmoSolver(const SceneModel& scene, std::span<const double> scores, double tau, double sigma,
                     PairStrategy strategy, std::uint64_t seed, AlphaDistribution start,
                     std::size_t kernel_cache_rows)
    : scores_(scores.begin(), scores.end()),
      tau_(tau),
      sigma_(sigma),
      strategy_(strategy),
      rng_(seed),
      alpha_(std::move(start)),
      cache_(scene, sigma, std::clamp<std::size_t>(kernel_cache_rows, 2, std::max<std::size_t>(2, scene.size()))) {
    const std::size_t m = scene.size();
    if (scores_.size() != m || alpha_.size() != m) {
        throw std::invalid_argument("SmoSolver: scores and alpha must have one entry per point");
    }
    positions_.reserve(m);
    for (const auto& p : scene.points()) positions_.push_back(p.position);

    slot_.assign(m, kNoSlot);
    for (std::size_t k = 0; k < m; ++k) mark(k);

    compute_theta(theta_);
}

void SmoSolver::compute_theta(std::vector<double>& out) const {
    const std::size_t m = positions_.size();
    std::vector<std::size_t> support;
    for (std::size_t l = 0; l < m; ++l) {
        if (alpha_.alpha[l] > 0.0) support.push_back(l);
    }
    out.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t l : support) acc += alpha_.alpha[l] * rbf(positions_[i], positions_[l], sigma_);
        out[i] = acc;
    }
}

std::vector<double> SmoSolver::recompute_theta() const {
    std::vector<double> out;
    compute_theta(out);
    return out;
}

void SmoSolver::mark(std::size_t k) {
    const bool positive = alpha_.alpha[k] > 0.0;
    if (positive && slot_[k] == kNoSlot) {
        slot_[k] = positive_.size();
        positive_.push_back(k);
    } else if (!positive && slot_[k] != kNoSlot) {
        const std::size_t moved = positive_.back();
        positive_[slot_[k]] = moved;
        slot_[moved] = slot_[k];
        positive_.pop_back();
        slot_[k] = kNoSlot;
    }
}

std::pair<std::size_t, std::size_t> SmoSolver::select_pair() {
    const std::size_t m = alpha_.size();
    if (m < 2) throw std::logic_error("select_pair: needs at least two points");

    std::size_t i = 0;
    if (strategy_ == PairStrategy::uniform || positive_.empty()) {
        i = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng_);
    } else {
        i = positive_[std::uniform_int_distribution<std::size_t>(0, positive_.size() - 1)(rng_)];
    }
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, m - 2)(rng_);
    if (j >= i) ++j;
    return {i, j};
}

bool SmoSolver::step(std::size_t i, std::size_t j) {
    const std::size_t m = alpha_.size();
    if (i >= m || j >= m) throw std::out_of_range("step: pair index out of range");
    if (i == j) throw std::invalid_argument("step: pair indices must differ");
    ++iteration_;

    auto& a = alpha_.alpha;
    const double ai = a[i];
    const double aj = a[j];
    const double delta = ai + aj;
    if (delta == 0.0) return false;

    const double kij = rbf(positions_[i], positions_[j], sigma_);
    const PairSubproblem sub{
        .delta = delta,
        .cap = alpha_.cap,
        .k_ij = kij,
        .theta_i = theta_[i] - ai - aj * kij,
        .theta_j = theta_[j] - aj - ai * kij,
        .d_i = scores_[i],
        .d_j = scores_[j],
        .tau = tau_,
    };
    const double new_i = solve_pair(sub, ai);
    const double new_j = delta - new_i;
    if (new_i == ai && new_j == aj) return false;

    const double di = new_i - ai;
    const double dj = new_j - aj;
    const auto row_i = cache_.row(i);
    const auto row_j = cache_.row(j);  // capacity >= 2 keeps row_i resident
    for (std::size_t l = 0; l < m; ++l) {
        theta_[l] += di * row_i[l] + dj * row_j[l];
    }
    a[i] = new_i;
    a[j] = new_j;
    mark(i);
    mark(j);
    return true;
}

void SmoSolver::run(std::uint64_t iterations) {
    if (alpha_.size() < 2) return;
    for (std::uint64_t k = 0; k < iterations; ++k) {
        const auto [i, j] = select_pair();
        step(i, j);
    }
}

double SmoSolver::running_objective() const {
    double coverage = 0.0;
    double distinct = 0.0;
    for (std::size_t l : positive_) {
        coverage += alpha_.alpha[l] * theta_[l];
        distinct += alpha_.alpha[l] * scores_[l];
    }
    return coverage - tau_ * distinct;
}

AlphaDistribution solve(const SceneModel& scene, std::span<const double> scores, const CompressionParams& params,
                        const ProgressCallback& progress, std::uint64_t progress_every) {
    params.validate();
    if (scores.size() != scene.size()) {
        throw std::invalid_argument("solve: score vector length does not match the scene");
    }
    AlphaDistribution start = initialize(scores, params.nu);
    if (scene.size() < 2) return start;

    const std::size_t rows = cache_rows_for_budget(scene.size(), params.kernel_cache_mb * 1024 * 1024);
    SmoSolver solver(scene, scores, params.tau, params.sigma, params.pair_strategy, params.seed, std::move(start),
                     rows);
    if (!progress || progress_every == 0) {
        solver.run(params.iterations);
    } else {
        std::uint64_t done = 0;
        while (done < params.iterations) {
            const std::uint64_t chunk = std::min(progress_every, params.iterations - done);
            solver.run(chunk);
            done += chunk;
            progress(solver);
        }
    }
    return solver.alpha();
}

}  // namespace scenecomp
