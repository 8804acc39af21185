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

/// \file   tail_model.hpp
///
/// \brief  Declared asymptotic behaviour of the dividend yield beyond the
///         sampled horizon.
///
///         Whether the infinite sum of dividend yields converges cannot be
///         decided from a finite sample, so every analysis needs the caller to
///         declare how the yield behaves after the last observation. Yield
///         models are indexed by absolute period t (discrete paths) or by
///         absolute time t (continuous paths, where they describe the yield
///         density d(t)/P(t)).
///
#ifndef BUBBLEKIT_TAIL_MODEL_HPP
#define BUBBLEKIT_TAIL_MODEL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace bubblekit {

/// Price and dividend stay at constant levels after the horizon.
struct ConstantLevels {
    double price;
    double dividend;
};

/// y_t = yield for every t past the horizon.
struct ConstantYield {
    double yield;
};

/// y_t = scale * ratio^t.
struct GeometricYield {
    double scale;
    double ratio;
};

/// y_t = scale * t^(-exponent).
struct PowerYield {
    double scale;
    double exponent;
};

struct ZeroDividends {};

/// The caller asserts the yield sum diverges without giving a functional form.
struct DeclaredDivergent {};

/// The caller asserts convergence and supplies the present value of all
/// dividends paid after the horizon (in date-0 goods).
struct DeclaredConvergent {
    double tail_sum;
};

using TailModel = std::variant<ConstantLevels, ConstantYield, GeometricYield, PowerYield,
                               ZeroDividends, DeclaredDivergent, DeclaredConvergent>;

enum class TailClass { Convergent, Divergent };

std::string_view to_string(TailClass c) noexcept;

/// Throws Error(TailUnsupported) when parameters fall outside their domain.
void validate(const TailModel& tail);

/// Stable identifier used by the CLI and the JSON schemas, e.g. "geometric-yield".
std::string_view tail_kind(const TailModel& tail) noexcept;

/// Named parameters in schema order ("P"/"D", "c", "a"/"rho", "a"/"p", "tail_sum").
std::map<std::string, double> tail_params(const TailModel& tail);

/// Inverse of tail_kind/tail_params. Throws Error(TailUnsupported) on an
/// unknown kind or missing parameter.
TailModel make_tail(std::string_view kind, const std::map<std::string, double>& params);

std::string describe(const TailModel& tail);

///
/// \brief  log of the survival factor prod_{t > last_period} (1 + y_t)^{-1}
///         for a discrete yield tail. Returns -inf for divergent tails and 0
///         for tails without dividends.
///
/// Not defined for DeclaredConvergent, which carries a present value instead
/// of a yield law; throws Error(TailUnsupported) in that case.
double log_tail_survival_discrete(const TailModel& tail, std::int64_t last_period);

/// Continuous analogue: -integral_{horizon}^{inf} y(t) dt for the yield density.
double log_tail_survival_continuous(const TailModel& tail, double horizon);

/// Re-expresses a per-unit-time tail as the per-period tail seen after
/// sampling with the given period length.
TailModel rescale_tail_period(const TailModel& tail, double period);

}  // namespace bubblekit

#endif  // BUBBLEKIT_TAIL_MODEL_HPP
