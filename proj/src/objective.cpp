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

#include "scenecomp/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scenecomp/kernel.hpp"

namespace scenecomp {

ObjectiveBreakdown evaluate(std::span<const double> alpha, const SceneModel& scene, std::span<const double> scores,
                            double tau, double sigma) {
    const std::size_t m = scene.size();
    if (alpha.size() != m || scores.size() != m) {
        throw std::invalid_argument("evaluate: alpha and scores must have one entry per point");
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(alpha[i] >= 0.0) || !std::isfinite(alpha[i])) {
            throw std::invalid_argument("evaluate: alpha entries must be finite and >= 0");
        }
        if (alpha[i] > 0.0) support.push_back(i);
    }

    ObjectiveBreakdown out;
    for (std::size_t i : support) {
        const Vec3& xi = scene[i].position;
        double row = 0.0;
        for (std::size_t j : support) row += alpha[j] * rbf(xi, scene[j].position, sigma);
        out.coverage += alpha[i] * row;
        out.distinctiveness += scores[i] * alpha[i];
    }
    out.total = out.coverage - tau * out.distinctiveness;
    return out;
}

namespace {

double clipped_sum(std::span<const double> v, double shift, double cap) {
    double s = 0.0;
    for (double x : v) s += std::clamp(x - shift, 0.0, cap);
    return s;
}

}  // namespace

std::vector<double> project_capped_simplex(std::span<const double> v, double cap) {
    const std::size_t m = v.size();
    if (m == 0) throw std::invalid_argument("project_capped_simplex: empty vector");
    if (!(cap > 0.0) || cap * static_cast<double>(m) < 1.0 - 1e-12) {
        throw std::invalid_argument("project_capped_simplex: cap * size must be >= 1");
    }
    // The box {0 <= a <= 1/m} meets the simplex only at the uniform vector.
    if (cap * static_cast<double>(m) <= 1.0 + 1e-12) {
        return std::vector<double>(m, cap);
    }

    const auto [min_it, max_it] = std::minmax_element(v.begin(), v.end());
    // clipped_sum is non-increasing in the shift: m*cap >= 1 at lo, 0 at hi.
    double lo = *min_it - cap;
    double hi = *max_it;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (clipped_sum(v, mid, cap) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double shift = 0.5 * (lo + hi);

    // Exact shift for the active set found by bisection.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    std::size_t upper_count = 0;
    for (double x : v) {
        const double y = x - shift;
        if (y >= cap) {
            ++upper_count;
        } else if (y > 0.0) {
            free_sum += x;
            ++free_count;
        }
    }
    if (free_count > 0) {
        const double exact = (free_sum + static_cast<double>(upper_count) * cap - 1.0) / static_cast<double>(free_count);
        if (std::abs(exact - shift) <= 1e-9 * std::max(1.0, std::abs(shift))) shift = exact;
    }

    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = std::clamp(v[i] - shift, 0.0, cap);
    return out;
}

OracleResult oracle_solve(const SceneModel& scene, std::span<const double> scores, const CompressionParams& params,
                          std::size_t max_iters, double tol) {
    params.validate();
    const std::size_t m = scene.size();
    if (scores.size() != m) throw std::invalid_argument("oracle_solve: score vector length does not match the scene");

    std::vector<double> gram(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) gram[i * m + j] = rbf(scene[i].position, scene[j].position, params.sigma);
    }
    double gershgorin = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) row += std::abs(gram[i * m + j]);
        gershgorin = std::max(gershgorin, row);
    }
    const double step = 1.0 / (2.0 * gershgorin);

    const AlphaDistribution start = initialize(scores, params.nu);
    const double cap = start.cap;

    const auto multiply = [&](const std::vector<double>& a, std::vector<double>& ka) {
        for (std::size_t i = 0; i < m; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < m; ++j) row += gram[i * m + j] * a[j];
            ka[i] = row;
        }
    };
    const auto value = [&](const std::vector<double>& a, const std::vector<double>& ka) {
        double quad = 0.0;
        double lin = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            quad += a[i] * ka[i];
            lin += scores[i] * a[i];
        }
        return quad - params.tau * lin;
    };
    // Projected gradient step from `a`, whose product with K is `ka`.
    const auto descend = [&](const std::vector<double>& a, const std::vector<double>& ka) {
        std::vector<double> trial(m);
        for (std::size_t i = 0; i < m; ++i) trial[i] = a[i] - step * (2.0 * ka[i] - params.tau * scores[i]);
        return project_capped_simplex(trial, cap);
    };

    std::vector<double> x = start.alpha;
    std::vector<double> kx(m);
    multiply(x, kx);
    double fx = value(x, kx);
    std::vector<double> y = x;
    std::vector<double> ky = kx;
    double t = 1.0;

    OracleResult out;
    std::vector<double> kn(m);
    while (out.iterations < max_iters) {
        ++out.iterations;
        std::vector<double> next = descend(y, ky);
        multiply(next, kn);
        const double fn = value(next, kn);
        if (fn > fx && t > 1.0) {
            // Momentum overshot: restart from the last accepted iterate. A plain
            // step (t == 1) is always kept; rounding alone can make it look uphill.
            t = 1.0;
            y = x;
            ky = kx;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double beta = (t - 1.0) / t_next;
        for (std::size_t i = 0; i < m; ++i) {
            y[i] = next[i] + beta * (next[i] - x[i]);
            ky[i] = kn[i] + beta * (kn[i] - kx[i]);
        }
        x = std::move(next);
        kx = kn;
        fx = fn;
        t = t_next;

        const std::vector<double> probe = descend(x, kx);
        double residual = 0.0;
        for (std::size_t i = 0; i < m; ++i) residual = std::max(residual, std::abs(probe[i] - x[i]));
        if (residual < tol) break;
    }
    out.alpha = std::move(x);
    out.objective = fx;
    return out;
}

}  // namespace scenecomp
