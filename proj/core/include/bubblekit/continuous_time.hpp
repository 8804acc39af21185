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

/// \file   continuous_time.hpp
///
/// \brief  Continuous-time paths with a cumulative dividend measure
///         F_t = integral_0^t d(s) ds + sum_{t_j <= t} dF_j.
///
///         The no-arbitrage condition -d(q_t P_t) = q_t dF_t integrates to
///
///             q_T P_T = q_0 P_0 exp(-integral_0^T dF_t / P_t)
///
///         for the continuous part of F, so the deflated price vanishes in the
///         limit exactly when the yield integral diverges.
///
#ifndef BUBBLEKIT_CONTINUOUS_TIME_HPP
#define BUBBLEKIT_CONTINUOUS_TIME_HPP

#include "bubblekit/characterization.hpp"
#include "bubblekit/discrete_path.hpp"
#include "bubblekit/series_core.hpp"
#include "bubblekit/tail_model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bubblekit {

inline constexpr double kDefaultGridStep = 1e-3;
inline constexpr double kDefaultContinuousHorizon = 100.0;

struct Jump {
    double time;  ///< > 0
    double size;  ///< dF >= 0
};

///
/// \brief  Density samples on the path grid plus discrete payouts.
///
/// Jumps are strictly increasing in time and never at t = 0, so F is weakly
/// increasing and right-continuous.
///
class CumulativeDividend {
public:
    explicit CumulativeDividend(std::vector<double> density, std::vector<Jump> jumps = {});

    [[nodiscard]] std::span<const double> density() const noexcept { return density_; }
    [[nodiscard]] std::span<const Jump> jumps() const noexcept { return jumps_; }

    [[nodiscard]] CumulativeDividend without_jump(std::size_t index) const;

private:
    std::vector<double> density_;
    std::vector<Jump> jumps_;
};

class ContinuousPath {
public:
    /// `prices` and the dividend density are sampled at t = k h, k = 0..N with
    /// N h = horizon. Prices must be strictly positive.
    ContinuousPath(double grid_step, double horizon, std::vector<double> prices,
                   CumulativeDividend dividends, std::optional<TailModel> tail = std::nullopt);

    [[nodiscard]] double grid_step() const noexcept { return grid_step_; }
    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t intervals() const noexcept { return prices_.size() - 1; }
    [[nodiscard]] double time(std::size_t k) const noexcept
    {
        return static_cast<double>(k) * grid_step_;
    }
    [[nodiscard]] std::span<const double> prices() const noexcept { return prices_; }
    [[nodiscard]] const CumulativeDividend& dividends() const noexcept { return dividends_; }
    [[nodiscard]] const std::optional<TailModel>& tail() const noexcept { return tail_; }
    [[nodiscard]] const TailModel& declared_tail() const;

    [[nodiscard]] ContinuousPath with_tail(TailModel tail) const;
    [[nodiscard]] ContinuousPath with_dividends(CumulativeDividend dividends) const;

    /// F(t) with trapezoidal integration of the density.
    [[nodiscard]] double cumulative_dividend(double t) const;

private:
    double grid_step_;
    double horizon_;
    std::vector<double> prices_;
    CumulativeDividend dividends_;
    std::optional<TailModel> tail_;
};

/// Which grid sample prices a jump at t_j: the one at or after t_j (right
/// limit, default) or the last one strictly before it.
enum class PriceSide { Right, Left };

/// integral_0^T dF_t / P_t: trapezoid on d/P plus sum of dF_j / P(t_j).
double integrate_dF_over_P(const ContinuousPath& path, double T,
                           PriceSide side = PriceSide::Right);

struct IdentityCheck {
    double lhs = 0.0;  ///< q_T P_T from stepping -d(qP) = q dF across the grid
    double rhs = 0.0;  ///< q_0 P_0 exp(-integral_0^T dF/P)

    [[nodiscard]] double relative_gap() const;
};

///
/// \brief  Evaluates both sides of the exponential identity at T.
///
/// The left side advances log(q P) panel by panel with the trapezoidal
/// (Crank-Nicolson) update log(1 - h a_k / 2) - log(1 + h a_{k+1} / 2),
/// a = d / P, and applies the exact factor 1 / (1 + dF_j / P(t_j)) at jumps.
/// The right side exponentiates the quadrature. Both are second order in h
/// for smooth densities; at jumps they differ by exp(-x) versus 1 / (1 + x).
///
IdentityCheck deflated_price_identity(const ContinuousPath& path, double T,
                                      PriceSide side = PriceSide::Right);

/// Bubble iff the declared tail of the yield density is convergent.
Verdict montrucchio_continuous(const ContinuousPath& path, PriceSide side = PriceSide::Right);

/// Samples the path every `step` time units (an integer multiple of the grid
/// step). D_k = F(k step) - F((k - 1) step), P_k = P(k step). The tail is
/// re-expressed per period.
DiscretePath discretize(const ContinuousPath& path, double step);

/// Price/value split at t = 0 using the identity above for q_T P_T and the
/// declared tail beyond the horizon.
Decomposition decompose_continuous(const ContinuousPath& path,
                                   PriceSide side = PriceSide::Right);

}  // namespace bubblekit

#endif  // BUBBLEKIT_CONTINUOUS_TIME_HPP
