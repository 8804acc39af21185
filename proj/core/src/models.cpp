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

#include "bubblekit/models.hpp"

#include "bubblekit/error.hpp"
#include "format.hpp"

#include <cmath>

namespace bubblekit {

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument, message);
    }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

void require_horizon(std::size_t horizon)
{
    require(horizon >= 1, "horizon must be at least 1 period");
}

}  // namespace

DiscretePath gen_money(double initial_price, std::size_t horizon)
{
    require(positive(initial_price), "money requires P0 > 0");
    require_horizon(horizon);
    return DiscretePath(std::vector<double>(horizon + 1, initial_price),
                        std::vector<double>(horizon, 0.0), ZeroDividends{});
}

DiscretePath gen_constant(double price, double dividend, std::size_t horizon)
{
    require(positive(price) && positive(dividend), "constant asset requires P > 0 and D > 0");
    require_horizon(horizon);
    return DiscretePath(std::vector<double>(horizon + 1, price),
                        std::vector<double>(horizon, dividend), ConstantLevels{price, dividend});
}

DiscretePath gen_gordon(double initial_dividend, double growth, double gross_rate,
                        std::size_t horizon)
{
    require(positive(initial_dividend), "gordon requires D0 > 0");
    require(positive(growth), "gordon requires g > 0");
    require_horizon(horizon);
    if (!(gross_rate > 1.0) || !(growth < gross_rate)) {
        throw Error(ErrorCode::ParameterOrder, "gordon requires 1 < R and g < R (g="
                                                   + detail::format_number(growth) + ", R="
                                                   + detail::format_number(gross_rate) + ")");
    }
    const double spread = gross_rate - growth;
    std::vector<double> prices(horizon + 1);
    std::vector<double> dividends(horizon);
    const double log_g = std::log(growth);
    for (std::size_t t = 0; t <= horizon; ++t) {
        const double level = initial_dividend * std::exp(static_cast<double>(t) * log_g);
        prices[t] = level * growth / spread;
        if (t > 0) {
            dividends[t - 1] = level;
        }
    }
    return DiscretePath(std::move(prices), std::move(dividends), ConstantYield{spread / growth});
}

DiscretePath gen_convergent_yield(double alpha, double rho, std::size_t horizon)
{
    require(positive(alpha), "convergent-yield requires alpha > 0");
    require(rho > 0.0 && rho < 1.0, "convergent-yield requires 0 < rho < 1");
    require_horizon(horizon);
    std::vector<double> dividends(horizon);
    double level = alpha;
    for (std::size_t t = 1; t <= horizon; ++t) {
        level *= rho;
        dividends[t - 1] = level;
    }
    return DiscretePath(std::vector<double>(horizon + 1, 1.0), std::move(dividends),
                        GeometricYield{alpha, rho});
}

void MiaoWangScenario::validate() const
{
    require(positive(marginal_q), "miao-wang requires Q > 0");
    require(positive(capital), "miao-wang requires K > 0");
    require(std::isfinite(interpreted_component) && interpreted_component >= 0.0,
            "miao-wang requires B >= 0");
    require(positive(dividend), "miao-wang requires D > 0");
    require(convergence_rate > 0.0 && !std::isnan(convergence_rate),
            "miao-wang requires lambda > 0");
    require(positive(horizon) && positive(grid_step), "horizon and grid step must be > 0");
    if (initial_price) {
        require(positive(*initial_price), "initial price must be > 0");
    }
    if (initial_dividend) {
        require(std::isfinite(*initial_dividend) && *initial_dividend >= 0.0,
                "initial dividend must be >= 0");
    }
}

ContinuousPath gen_miao_wang(const MiaoWangScenario& scenario)
{
    scenario.validate();
    const double steady_price = scenario.steady_state_price();
    const double steady_dividend = scenario.dividend;
    const double p0 = scenario.initial_price.value_or(0.5 * steady_price);
    const double d0 = scenario.initial_dividend.value_or(0.5 * steady_dividend);
    const double h = scenario.grid_step;
    const auto intervals = static_cast<std::size_t>(std::llround(scenario.horizon / h));
    require(intervals >= 1, "horizon shorter than one grid step");

    std::vector<double> prices(intervals + 1);
    std::vector<double> density(intervals + 1);
    const bool instant = std::isinf(scenario.convergence_rate);
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double t = static_cast<double>(k) * h;
        const double decay = instant ? 0.0 : std::exp(-scenario.convergence_rate * t);
        prices[k] = steady_price + (p0 - steady_price) * decay;
        density[k] = steady_dividend + (d0 - steady_dividend) * decay;
    }
    return ContinuousPath(h, scenario.horizon, std::move(prices),
                          CumulativeDividend(std::move(density)),
                          ConstantYield{steady_dividend / steady_price});
}

}  // namespace bubblekit
