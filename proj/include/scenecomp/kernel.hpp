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

#ifndef SCENECOMP_KERNEL_HPP
#define SCENECOMP_KERNEL_HPP

#include <cmath>
#include <cstddef>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

#include "scenecomp/scene_model.hpp"

namespace scenecomp {

/// Gaussian RBF similarity exp(-|a-b|^2 / (2 sigma^2)).
/// Symmetric bitwise: the squared distance is accumulated in a fixed axis order
/// from (a-b) and squaring removes the sign.
inline double rbf(const Vec3& a, const Vec3& b, double sigma) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    const double sq = dx * dx + dy * dy + dz * dz;
    return std::exp(-sq / (2.0 * sigma * sigma));
}

struct KernelConfig {
    double sigma = 1.0;
};

inline constexpr std::size_t kDefaultKernelCacheMb = 512;

/// Number of full kernel rows of length m that fit into budget_bytes, in [1, m].
std::size_t cache_rows_for_budget(std::size_t m, std::size_t budget_bytes);

/// LRU cache of kernel rows K(x_i, .) for one scene and bandwidth.
///
/// A span returned by `row(i)` stays valid until row i is evicted, which
/// happens only after `capacity()` other distinct rows have been requested.
/// Owned by a single solver; not thread-safe.
class KernelRowCache {
public:
    KernelRowCache(const SceneModel& scene, double sigma, std::size_t capacity);

    /// Throws std::out_of_range for i >= m.
    std::span<const double> row(std::size_t i);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t resident() const noexcept { return index_.size(); }
    std::size_t size() const noexcept { return positions_.size(); }
    double sigma() const noexcept { return sigma_; }
    /// Rows computed so far (cache misses).
    std::size_t row_evaluations() const noexcept { return row_evaluations_; }

private:
    struct Entry {
        std::size_t index;
        std::vector<double> values;
    };

    void fill(std::size_t i, std::vector<double>& out) const;

    std::vector<Vec3> positions_;
    double sigma_;
    std::size_t capacity_;
    std::list<Entry> lru_;  // front = most recently used
    std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
    std::size_t row_evaluations_ = 0;
};

}  // namespace scenecomp

#endif  // SCENECOMP_KERNEL_HPP
