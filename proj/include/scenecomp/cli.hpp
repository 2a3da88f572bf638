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

#ifndef SCENECOMP_CLI_HPP
#define SCENECOMP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace scenecomp::cli {

/// Exit codes of `run`.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,      ///< unexpected internal error
    kUsage = 2,        ///< unknown flag, invalid value, missing input file
    kIo = 3,           ///< read/write failure
    kBadInput = 4,     ///< scene or alpha file failed to parse or validate
};

/// Valid interval of a numeric flag. The same table drives --help text and
/// argument validation.
struct FlagRange {
    std::string flag;  ///< e.g. "--nu"
    double lo;
    double hi;
    bool lo_open;
    bool hi_open;
    bool integer;

    bool contains(double v) const;
    /// Interval notation, e.g. "(0,1]" or "[1,inf)".
    std::string interval() const;
};

const std::vector<FlagRange>& flag_ranges();

/// Runs one subcommand (compress, score, eval, synth). argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scenecomp::cli

#endif  // SCENECOMP_CLI_HPP
