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

#ifndef BUBBLEKIT_DISCRETE_PATH_HPP
#define BUBBLEKIT_DISCRETE_PATH_HPP

#include "bubblekit/tail_model.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bubblekit {

///
/// \brief  Ex-dividend prices P_0..P_T and dividends D_1..D_T of one asset,
///         plus the declared tail model (optional until analysis).
///
/// Construction checks that all values are finite and non-negative and that
/// P_{t+1} + D_{t+1} > 0 for every t < T, so that the no-arbitrage recursion
/// can be solved. Interior zero prices are allowed here; the yield-based
/// classifier rejects them.
///
class DiscretePath {
public:
    /// `dividends[i]` is the dividend paid at period i + 1.
    DiscretePath(std::vector<double> prices, std::vector<double> dividends,
                 std::optional<TailModel> tail = std::nullopt);

    [[nodiscard]] std::size_t horizon() const noexcept { return dividends_.size(); }

    [[nodiscard]] double price(std::size_t t) const { return prices_.at(t); }

    /// Dividend at period t, 1 <= t <= horizon().
    [[nodiscard]] double dividend(std::size_t t) const { return dividends_.at(t - 1); }

    [[nodiscard]] std::span<const double> prices() const noexcept { return prices_; }
    [[nodiscard]] std::span<const double> dividends() const noexcept { return dividends_; }

    [[nodiscard]] const std::optional<TailModel>& tail() const noexcept { return tail_; }

    /// Throws Error(MissingTail) when no tail was declared.
    [[nodiscard]] const TailModel& declared_tail() const;

    [[nodiscard]] DiscretePath with_tail(TailModel tail) const;

    /// Keeps periods 0..horizon.
    [[nodiscard]] DiscretePath truncated(std::size_t horizon) const;

private:
    std::vector<double> prices_;
    std::vector<double> dividends_;
    std::optional<TailModel> tail_;
};

///
/// \brief  State prices q_0..q_T stored as logarithms; q_0 = 1.
///
/// A zero price at an interior date forces every later state price to zero;
/// those entries hold -inf.
///
class Deflators {
public:
    /// Throws Error(ValidationError) unless log_q is non-empty and log_q[0] == 0.
    explicit Deflators(std::vector<double> log_q);

    /// Normalises by q_0 so that the first entry becomes 1. All q must be > 0.
    static Deflators from_linear(std::span<const double> q);

    [[nodiscard]] std::size_t horizon() const noexcept { return log_q_.size() - 1; }
    [[nodiscard]] double log_q(std::size_t t) const { return log_q_.at(t); }
    [[nodiscard]] double q(std::size_t t) const { return std::exp(log_q_.at(t)); }
    [[nodiscard]] std::span<const double> log_values() const noexcept { return log_q_; }

private:
    std::vector<double> log_q_;
};

}  // namespace bubblekit

#endif  // BUBBLEKIT_DISCRETE_PATH_HPP
