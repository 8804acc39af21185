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

/// \file   series_core.hpp
///
/// \brief  Discrete-time pricing identities.
///
///         For a deterministic price/dividend path the no-arbitrage recursion
///         q_t P_t = q_{t+1} (P_{t+1} + D_{t+1}) pins the state prices q_t up to
///         q_0 = 1. Iterating it forward gives
///
///             P_0 = sum_{t=1}^{T} q_t D_t + q_T P_T,
///
///         so the price splits into the fundamental value (present value of all
///         dividends) and the bubble lim_{T->inf} q_T P_T.
///
#ifndef BUBBLEKIT_SERIES_CORE_HPP
#define BUBBLEKIT_SERIES_CORE_HPP

#include "bubblekit/characterization.hpp"
#include "bubblekit/discrete_path.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bubblekit {

/// A bubble below this fraction of the price is reported as no bubble.
inline constexpr double kBubbleTolerance = 1e-9;

/// Default relative tolerance for the no-arbitrage recursion.
inline constexpr double kArbitrageTolerance = 1e-9;

struct Checkpoint {
    double at = 0.0;             ///< period (discrete) or time (continuous)
    double partial_value = 0.0;  ///< present value of dividends paid up to `at`
    double deflated_price = 0.0; ///< q_at * P_at
};

struct DecompositionDiagnostics {
    std::vector<Checkpoint> checkpoints;
    double tail_contribution = 0.0;       ///< present value of dividends after the horizon
    double deflated_terminal_price = 0.0; ///< q_T P_T at the sampled horizon
    double yield_partial_sum = 0.0;
    TailClass tail_class = TailClass::Divergent;
    bool boundary = false;  ///< bubble was positive but within tolerance of zero
    std::size_t members = 1;
    std::string rationale;
};

struct Decomposition {
    double price = 0.0;
    double fundamental = 0.0;
    double bubble = 0.0;
    Classification verdict = Classification::NoBubble;
    DecompositionDiagnostics diagnostics;
};

/// Solves the no-arbitrage recursion in log space. Throws ZeroInitialPrice
/// when P_0 = 0.
Deflators implied_deflators(const DiscretePath& path);

/// max_t |q_{t+1} (P_{t+1} + D_{t+1}) / (q_t P_t) - 1|.
double max_arbitrage_residual(const DiscretePath& path, const Deflators& deflators);

bool check_no_arbitrage(const DiscretePath& path, const Deflators& deflators,
                        double tol = kArbitrageTolerance);

/// sum_{t=1}^{T} q_t D_t with compensated summation; 1 <= T <= horizon.
double partial_value(const DiscretePath& path, const Deflators& deflators, std::size_t T);

/// q_t P_t.
double deflated_price(const DiscretePath& path, const Deflators& deflators, std::size_t t);

/// Present value of the dividends the declared tail pays after the horizon.
double tail_contribution(const DiscretePath& path, const Deflators& deflators);

/// V_0. Divergent-yield tails return P_0 exactly: no bubble can exist there.
double fundamental_value(const DiscretePath& path, const Deflators& deflators);

/// B_0 = P_0 - V_0, clamped at zero for rounding noise. A fundamental value
/// above the price by more than the bubble tolerance means the declared tail
/// contradicts the sampled path and raises InconsistentClassification.
double bubble_component(const DiscretePath& path, const Deflators& deflators);

bool tvc_holds(const DiscretePath& path, const Deflators& deflators);

/// Full analysis: deflators, value split and the yield classifier, which must
/// agree on the verdict.
Decomposition decompose(const DiscretePath& path);

/// Sums member prices, values and bubbles (e.g. firms into a market index).
Decomposition ensemble_decompose(std::span<const Decomposition> members);

/// Combines a price/value split with the classifier verdict; shared by the
/// discrete and continuous analyses.
Decomposition finalize_decomposition(double price, double fundamental, double bubble,
                                     const Verdict& verdict, DecompositionDiagnostics diagnostics);

}  // namespace bubblekit

#endif  // BUBBLEKIT_SERIES_CORE_HPP
