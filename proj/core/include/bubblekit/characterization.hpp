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

/// \file   characterization.hpp
///
/// \brief  Bubble classification from dividend yields.
///
///         In a deterministic economy with strictly positive prices, the price
///         contains a bubble exactly when sum_t D_t / P_t is finite. Finite
///         partial sums never decide the question; the declared tail does.
///
#ifndef BUBBLEKIT_CHARACTERIZATION_HPP
#define BUBBLEKIT_CHARACTERIZATION_HPP

#include "bubblekit/discrete_path.hpp"
#include "bubblekit/tail_model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bubblekit {

enum class Classification { NoBubble, Bubble };

std::string_view to_string(Classification c) noexcept;

/// y_t = D_t / P_t for t = 1..T; `values[i]` is y_{i+1}.
struct YieldSeries {
    std::vector<double> values;
    std::optional<TailModel> tail;
};

struct Verdict {
    Classification classification = Classification::NoBubble;
    double partial_sum = 0.0;  ///< sum of sampled yields (or integral over the horizon)
    TailClass tail_class = TailClass::Divergent;
    std::string rationale;
};

/// Throws Error(NonPositivePrice) naming the first t with P_t <= 0.
YieldSeries dividend_yield_series(const DiscretePath& path);

TailClass classify_tail(const TailModel& tail);

/// Bubble iff the declared tail is convergent. Requires P_t > 0 everywhere
/// and a declared tail.
Verdict montrucchio_discrete(const DiscretePath& path);

/// Shared verdict assembly for the discrete and continuous classifiers.
Verdict verdict_from_tail(const TailModel& tail, double partial_sum, std::string_view sum_label);

struct TailFit {
    std::string kind;  ///< "constant-yield", "geometric-yield" or "power-yield"
    double intercept = 0.0;
    double slope = 0.0;
    double rss = 0.0;  ///< residual sum of squares on log y
};

struct TailSuggestion {
    std::optional<TailModel> model;
    std::vector<TailFit> fits;
    std::size_t window_start = 0;  ///< first period of the fitting window
    std::size_t window_size = 0;   ///< positive yields used in the fit
    std::string note;
};

///
/// \brief  Least-squares fit of log y_t over the last 20% of samples against a
///         constant, a linear trend in t (geometric) and a linear trend in
///         log t (power). Advisory only; analyses never apply it implicitly.
///
TailSuggestion suggest_tail(const DiscretePath& path);

}  // namespace bubblekit

#endif  // BUBBLEKIT_CHARACTERIZATION_HPP
