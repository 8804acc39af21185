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

#include "bubblekit/error.hpp"

namespace bubblekit {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ZeroInitialPrice: return "ZeroInitialPrice";
    case ErrorCode::HorizonMismatch: return "HorizonMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TailUnsupported: return "TailUnsupported";
    case ErrorCode::MissingTail: return "MissingTail";
    case ErrorCode::InconsistentClassification: return "InconsistentClassification";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::StepMismatch: return "StepMismatch";
    case ErrorCode::ParameterOrder: return "ParameterOrder";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ArbitrageError: return "ArbitrageError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> where)
    : std::runtime_error(std::string(to_string(code)) + ": " + message)
    , code_(code)
    , where_(where)
{
}

}  // namespace bubblekit
