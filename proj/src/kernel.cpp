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

#include "scenecomp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scenecomp {

std::size_t cache_rows_for_budget(std::size_t m, std::size_t budget_bytes) {
    if (m == 0) return 1;
    const std::size_t row_bytes = m * sizeof(double);
    return std::clamp<std::size_t>(budget_bytes / row_bytes, 1, m);
}

KernelRowCache::KernelRowCache(const SceneModel& scene, double sigma, std::size_t capacity)
    : sigma_(sigma), capacity_(capacity) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("kernel sigma must be a positive finite number");
    }
    if (capacity == 0) {
        throw std::invalid_argument("kernel cache capacity must be >= 1");
    }
    positions_.reserve(scene.size());
    for (const auto& p : scene.points()) positions_.push_back(p.position);
    index_.reserve(std::min(capacity_, positions_.size()));
}

void KernelRowCache::fill(std::size_t i, std::vector<double>& out) const {
    out.resize(positions_.size());
    const Vec3& xi = positions_[i];
    for (std::size_t j = 0; j < positions_.size(); ++j) {
        out[j] = rbf(xi, positions_[j], sigma_);
    }
}

std::span<const double> KernelRowCache::row(std::size_t i) {
    if (i >= positions_.size()) {
        throw std::out_of_range("kernel row " + std::to_string(i) + " out of range for m = " +
                                std::to_string(positions_.size()));
    }
    if (auto it = index_.find(i); it != index_.end()) {
        lru_.splice(lru_.begin(), lru_, it->second);
        return lru_.front().values;
    }

    if (index_.size() >= capacity_) {
        // Recycle the least recently used buffer.
        auto victim = std::prev(lru_.end());
        index_.erase(victim->index);
        lru_.splice(lru_.begin(), lru_, victim);
        lru_.front().index = i;
    } else {
        lru_.push_front(Entry{i, {}});
    }
    fill(i, lru_.front().values);
    index_.emplace(i, lru_.begin());
    ++row_evaluations_;
    return lru_.front().values;
}

}  // namespace scenecomp
