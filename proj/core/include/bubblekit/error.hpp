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

#ifndef BUBBLEKIT_ERROR_HPP
#define BUBBLEKIT_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bubblekit {

enum class ErrorCode {
    ZeroDenominator,
    ZeroInitialPrice,
    HorizonMismatch,
    OutOfRange,
    TailUnsupported,
    MissingTail,
    InconsistentClassification,
    EmptyEnsemble,
    NonPositivePrice,
    StepMismatch,
    ParameterOrder,
    InvalidArgument,
    ParseError,
    ValidationError,
    ArbitrageError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `where()` carries the offending
/// period index or input line when one exists.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> where = std::nullopt);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::optional<std::size_t> where() const noexcept { return where_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> where_;
};

}  // namespace bubblekit

#endif  // BUBBLEKIT_ERROR_HPP
