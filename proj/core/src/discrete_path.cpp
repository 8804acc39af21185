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

#include "bubblekit/discrete_path.hpp"

#include "bubblekit/error.hpp"

#include <string>

namespace bubblekit {

DiscretePath::DiscretePath(std::vector<double> prices, std::vector<double> dividends,
                           std::optional<TailModel> tail)
    : prices_(std::move(prices))
    , dividends_(std::move(dividends))
    , tail_(std::move(tail))
{
    if (dividends_.empty()) {
        throw Error(ErrorCode::ValidationError, "path horizon must be at least 1");
    }
    if (prices_.size() != dividends_.size() + 1) {
        throw Error(ErrorCode::ValidationError,
                    "expected " + std::to_string(dividends_.size() + 1) + " prices for "
                        + std::to_string(dividends_.size()) + " dividends, got "
                        + std::to_string(prices_.size()));
    }
    for (std::size_t t = 0; t < prices_.size(); ++t) {
        if (!std::isfinite(prices_[t]) || prices_[t] < 0.0) {
            throw Error(ErrorCode::ValidationError,
                        "price at t=" + std::to_string(t) + " must be finite and >= 0", t);
        }
    }
    for (std::size_t i = 0; i < dividends_.size(); ++i) {
        if (!std::isfinite(dividends_[i]) || dividends_[i] < 0.0) {
            throw Error(ErrorCode::ValidationError,
                        "dividend at t=" + std::to_string(i + 1) + " must be finite and >= 0",
                        i + 1);
        }
        if (prices_[i + 1] + dividends_[i] <= 0.0) {
            throw Error(ErrorCode::ZeroDenominator,
                        "P + D vanishes at t=" + std::to_string(i + 1), i + 1);
        }
    }
    if (tail_) {
        validate(*tail_);
    }
}

const TailModel& DiscretePath::declared_tail() const
{
    if (!tail_) {
        throw Error(ErrorCode::MissingTail,
                    "no tail model declared; the yield tail cannot be inferred from samples");
    }
    return *tail_;
}

DiscretePath DiscretePath::with_tail(TailModel tail) const
{
    return DiscretePath(prices_, dividends_, std::move(tail));
}

DiscretePath DiscretePath::truncated(std::size_t horizon) const
{
    if (horizon < 1 || horizon > this->horizon()) {
        throw Error(ErrorCode::OutOfRange, "truncation horizon " + std::to_string(horizon)
                                               + " outside [1, "
                                               + std::to_string(this->horizon()) + "]");
    }
    return DiscretePath(std::vector<double>(prices_.begin(), prices_.begin() + horizon + 1),
                        std::vector<double>(dividends_.begin(), dividends_.begin() + horizon),
                        tail_);
}

Deflators::Deflators(std::vector<double> log_q)
    : log_q_(std::move(log_q))
{
    if (log_q_.empty() || log_q_.front() != 0.0) {
        throw Error(ErrorCode::ValidationError, "deflators must start at log q_0 = 0");
    }
}

Deflators Deflators::from_linear(std::span<const double> q)
{
    if (q.empty()) {
        throw Error(ErrorCode::ValidationError, "empty deflator sequence");
    }
    std::vector<double> log_q(q.size());
    for (std::size_t t = 0; t < q.size(); ++t) {
        if (!std::isfinite(q[t]) || q[t] <= 0.0) {
            throw Error(ErrorCode::ValidationError,
                        "deflator at t=" + std::to_string(t) + " must be finite and > 0", t);
        }
        log_q[t] = std::log(q[t]);
    }
    const double base = log_q.front();
    for (double& v : log_q) {
        v -= base;
    }
    return Deflators(std::move(log_q));
}

}  // namespace bubblekit
