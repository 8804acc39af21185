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

#ifndef BUBBLEKIT_SRC_FORMAT_HPP
#define BUBBLEKIT_SRC_FORMAT_HPP

#include <array>
#include <charconv>
#include <string>

namespace bubblekit::detail {

// Shortest representation that parses back to the same double.
inline std::string format_number(double x)
{
    std::array<char, 32> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), result.ptr);
}

}  // namespace bubblekit::detail

#endif  // BUBBLEKIT_SRC_FORMAT_HPP
