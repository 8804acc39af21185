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

#ifndef BUBBLEKIT_NUMERIC_HPP
#define BUBBLEKIT_NUMERIC_HPP

#include <cmath>

namespace bubblekit {

///
/// \brief  Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
///         accurate when an addend is larger in magnitude than the running sum.
///
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

    CompensatedSum& operator+=(double x) noexcept
    {
        const double t = sum_ + x;
        if (!std::isfinite(t)) {
            sum_ = t;
            compensation_ = 0.0;
            return *this;
        }
        if (std::fabs(sum_) >= std::fabs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    [[nodiscard]] double value() const noexcept
    {
        return std::isfinite(sum_) ? sum_ + compensation_ : sum_;
    }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace bubblekit

#endif  // BUBBLEKIT_NUMERIC_HPP
