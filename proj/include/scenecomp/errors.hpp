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

#ifndef SCENECOMP_ERRORS_HPP
#define SCENECOMP_ERRORS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace scenecomp {

/// Base class for every error raised while reading, validating or writing scene data.
class SceneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input did not parse under its declared format. `record()` is the
/// 1-based line (PLY, JSON syntax errors) or 0-based point record index
/// (JSON schema errors) where parsing stopped.
class FormatError : public SceneError {
public:
    FormatError(const std::string& what, std::size_t record)
        : SceneError(what), record_(record) {}
    std::size_t record() const noexcept { return record_; }

private:
    std::size_t record_;
};

/// The input parsed but violates a scene invariant.
class ValidationError : public SceneError {
public:
    explicit ValidationError(const std::string& what,
                             std::optional<std::int64_t> point_id = std::nullopt)
        : SceneError(what), point_id_(point_id) {}
    std::optional<std::int64_t> point_id() const noexcept { return point_id_; }

private:
    std::optional<std::int64_t> point_id_;
};

class IoError : public SceneError {
public:
    using SceneError::SceneError;
};

}  // namespace scenecomp

#endif  // SCENECOMP_ERRORS_HPP
