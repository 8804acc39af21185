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

#ifndef BUBBLEKIT_SRC_JSON_UTIL_HPP
#define BUBBLEKIT_SRC_JSON_UTIL_HPP

#include "bubblekit/error.hpp"

#include <json.hpp>

#include <cmath>
#include <initializer_list>
#include <limits>
#include <map>
#include <string>

namespace bubblekit::detail {

// JSON has no infinities; they travel as the strings "inf" / "-inf".
inline nlohmann::json real_to_json(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

inline double real_from_json(const nlohmann::json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        throw Error(ErrorCode::ParseError, "expected a number, got '" + s + "'");
    }
    return j.get<double>();
}

inline std::map<std::string, double> number_map(const nlohmann::json& obj,
                                                std::initializer_list<const char*> skip)
{
    std::map<std::string, double> out;
    for (const auto& [key, value] : obj.items()) {
        bool skipped = false;
        for (const char* s : skip) {
            skipped = skipped || key == s;
        }
        if (!skipped) {
            out[key] = real_from_json(value);
        }
    }
    return out;
}

inline nlohmann::json number_map_to_json(const std::map<std::string, double>& values)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : values) {
        out[key] = real_to_json(value);
    }
    return out;
}

}  // namespace bubblekit::detail

#endif  // BUBBLEKIT_SRC_JSON_UTIL_HPP
