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

/// \file   models.hpp
///
/// \brief  Canonical economies as price/dividend paths with their exact tails.
///
#ifndef BUBBLEKIT_MODELS_HPP
#define BUBBLEKIT_MODELS_HPP

#include "bubblekit/continuous_time.hpp"
#include "bubblekit/discrete_path.hpp"

#include <cstddef>
#include <optional>

namespace bubblekit {

/// Intrinsically worthless asset held at a constant price: P_t = P0, D_t = 0.
DiscretePath gen_money(double initial_price, std::size_t horizon);

/// P_t = P, D_t = D; gross interest rate (P + D) / P.
DiscretePath gen_constant(double price, double dividend, std::size_t horizon);

/// Gordon growth: D_t = D0 g^t, P_t = D0 g^{t+1} / (R - g), constant yield (R - g) / g.
/// Requires R > 1 and 0 < g < R (ParameterOrder otherwise).
DiscretePath gen_gordon(double initial_dividend, double growth, double gross_rate,
                        std::size_t horizon);

/// P_t = 1, D_t = alpha rho^t; the bubble is prod_{s>=1} (1 + alpha rho^s)^{-1}.
DiscretePath gen_convergent_yield(double alpha, double rho, std::size_t horizon);

///
/// \brief  Reduced-form aggregate path of a firm-value model V(K) = Q K + B.
///
/// The transition approaches the steady state (P*, D) at exponential rate
/// lambda; `interpreted_component` is the constant B that such models label
/// a bubble. It enters the price level but never makes the yield integral
/// converge.
///
struct MiaoWangScenario {
    double marginal_q = 1.0;            ///< Q
    double capital = 1.0;               ///< K
    double interpreted_component = 0.0; ///< B
    double dividend = 0.1;              ///< steady-state dividend flow D
    double convergence_rate = 0.5;      ///< lambda; +inf starts at the steady state
    double horizon = kDefaultContinuousHorizon;
    double grid_step = kDefaultGridStep;
    std::optional<double> initial_price;     ///< defaults to P* / 2
    std::optional<double> initial_dividend;  ///< defaults to D / 2

    [[nodiscard]] double steady_state_price() const
    {
        return marginal_q * capital + interpreted_component;
    }

    /// Throws Error(InvalidArgument) when a field is out of range.
    void validate() const;
};

ContinuousPath gen_miao_wang(const MiaoWangScenario& scenario);

}  // namespace bubblekit

#endif  // BUBBLEKIT_MODELS_HPP
