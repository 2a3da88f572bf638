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

#ifndef SCENECOMP_OBJECTIVE_HPP
#define SCENECOMP_OBJECTIVE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "scenecomp/scene_model.hpp"
#include "scenecomp/smo_solver.hpp"

namespace scenecomp {

struct ObjectiveBreakdown {
    double coverage = 0.0;          ///< a' K a
    double distinctiveness = 0.0;   ///< d' a
    double total = 0.0;             ///< coverage - tau * distinctiveness
};

/// Exact objective. Zero entries of alpha are skipped, so the cost is
/// quadratic in the support size rather than in m. alpha need not respect
/// the cap; entries must be finite and >= 0 (std::invalid_argument otherwise).
ObjectiveBreakdown evaluate(std::span<const double> alpha, const SceneModel& scene, std::span<const double> scores,
                            double tau, double sigma);

/// Euclidean projection onto {a : sum(a) = 1, 0 <= a_i <= cap}. Requires
/// cap * size >= 1. The dual shift is bracketed by bisection to 1e-12 and then
/// solved exactly on the resulting active set.
std::vector<double> project_capped_simplex(std::span<const double> v, double cap);

struct OracleResult {
    std::vector<double> alpha;
    double objective = 0.0;
    std::size_t iterations = 0;
};

/// Reference solver: accelerated projected gradient descent on the dense
/// problem with function-value restarts, started from `initialize(scores, nu)`,
/// step 1 / (2 * max Gershgorin row sum of K). Stops when the projected-gradient
/// step at the current iterate has max-norm below `tol`, or after `max_iters`.
/// Materializes K, so keep m small (a few thousand at most).
OracleResult oracle_solve(const SceneModel& scene, std::span<const double> scores, const CompressionParams& params,
                          std::size_t max_iters, double tol);

}  // namespace scenecomp

#endif  // SCENECOMP_OBJECTIVE_HPP
