// Copyright 2026 The bubblekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/// \file   cli.hpp
///
/// \brief  The `bubblekit` command line, as a callable function.
///
///         Subcommands: `analyze`, `generate`, `check-identity`. Exit codes
///         are part of the interface:
///
///             0   NoBubble (or identity holds)
///             10  Bubble
///             2   usage, parse or validation error, missing tail
///             1   internal error, inconsistent classification, identity fails
///
#ifndef BUBBLEKIT_CLI_HPP
#define BUBBLEKIT_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bubblekit::cli {

inline constexpr int kExitNoBubble = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBubble = 10;

struct Environment {
    std::optional<std::string> tolerance;  ///< BUBBLEKIT_TOL

    static Environment from_process();
};

/// `args` excludes the program name. `in` is read when the input file is "-"
/// or absent.
int run_analysis(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                 std::ostream& err, const Environment& env = {});

}  // namespace bubblekit::cli

#endif  // BUBBLEKIT_CLI_HPP
