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

#include "bubblekit/characterization.hpp"

#include "bubblekit/error.hpp"
#include "bubblekit/numeric.hpp"
#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace bubblekit {

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        fit.rss += r * r;
    }
    return fit;
}

// Total log-yield drift across the window below which the yield counts as flat.
constexpr double kFlatDrift = 0.05;

}  // namespace

std::string_view to_string(Classification c) noexcept
{
    return c == Classification::Bubble ? "Bubble" : "NoBubble";
}

YieldSeries dividend_yield_series(const DiscretePath& path)
{
    const auto prices = path.prices();
    for (std::size_t t = 0; t < prices.size(); ++t) {
        if (!(prices[t] > 0.0)) {
            throw Error(ErrorCode::NonPositivePrice,
                        "price at t=" + std::to_string(t) + " is not strictly positive", t);
        }
    }
    YieldSeries series;
    series.tail = path.tail();
    series.values.reserve(path.horizon());
    for (std::size_t t = 1; t <= path.horizon(); ++t) {
        series.values.push_back(path.dividend(t) / path.price(t));
    }
    return series;
}

TailClass classify_tail(const TailModel& tail)
{
    return std::visit(
        [](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstantLevels>) {
                return t.dividend > 0.0 ? TailClass::Divergent : TailClass::Convergent;
            } else if constexpr (std::is_same_v<T, ConstantYield>) {
                return TailClass::Divergent;
            } else if constexpr (std::is_same_v<T, GeometricYield>) {
                return TailClass::Convergent;
            } else if constexpr (std::is_same_v<T, PowerYield>) {
                return t.exponent > 1.0 ? TailClass::Convergent : TailClass::Divergent;
            } else if constexpr (std::is_same_v<T, ZeroDividends>) {
                return TailClass::Convergent;
            } else if constexpr (std::is_same_v<T, DeclaredDivergent>) {
                return TailClass::Divergent;
            } else {
                static_assert(std::is_same_v<T, DeclaredConvergent>);
                return TailClass::Convergent;
            }
        },
        tail);
}

Verdict verdict_from_tail(const TailModel& tail, double partial_sum, std::string_view sum_label)
{
    Verdict v;
    v.partial_sum = partial_sum;
    v.tail_class = classify_tail(tail);
    v.classification =
        v.tail_class == TailClass::Convergent ? Classification::Bubble : Classification::NoBubble;
    v.rationale = "declared tail " + describe(tail) + " makes the infinite " + std::string(sum_label)
                  + (v.tail_class == TailClass::Convergent
                         ? " finite: the price contains a rational bubble"
                         : " diverge: the price equals its fundamental value")
                  + " (sampled part = " + detail::format_number(partial_sum) + ")";
    return v;
}

Verdict montrucchio_discrete(const DiscretePath& path)
{
    const auto series = dividend_yield_series(path);
    const auto& tail = path.declared_tail();
    CompensatedSum sum;
    for (double y : series.values) {
        sum += y;
    }
    return verdict_from_tail(tail, sum.value(), "sum of D_t/P_t");
}

TailSuggestion suggest_tail(const DiscretePath& path)
{
    TailSuggestion out;
    const std::size_t horizon = path.horizon();
    const auto want = static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(horizon)));
    const std::size_t window = std::min(horizon, std::max<std::size_t>(3, want));
    out.window_start = horizon - window + 1;

    std::vector<double> t_lin;
    std::vector<double> t_log;
    std::vector<double> log_y;
    for (std::size_t t = out.window_start; t <= horizon; ++t) {
        const double p = path.price(t);
        const double d = path.dividend(t);
        if (p > 0.0 && d > 0.0) {
            t_lin.push_back(static_cast<double>(t));
            t_log.push_back(std::log(static_cast<double>(t)));
            log_y.push_back(std::log(d / p));
        }
    }
    out.window_size = log_y.size();

    if (log_y.empty()) {
        out.model = ZeroDividends{};
        out.note = "no positive dividends in the fitting window";
        return out;
    }
    if (log_y.size() < 3) {
        out.note = "fewer than 3 positive yields in the fitting window; no suggestion";
        return out;
    }

    const std::vector<double> zeros(log_y.size(), 0.0);
    const LineFit flat = least_squares(zeros, log_y);
    const LineFit geometric = least_squares(t_lin, log_y);
    const LineFit power = least_squares(t_log, log_y);
    out.fits = {
        {"constant-yield", flat.intercept, 0.0, flat.rss},
        {"geometric-yield", geometric.intercept, geometric.slope, geometric.rss},
        {"power-yield", power.intercept, power.slope, power.rss},
    };

    const double drift = geometric.slope * (t_lin.back() - t_lin.front());
    if (std::fabs(drift) < kFlatDrift) {
        out.model = ConstantYield{std::exp(flat.intercept)};
        out.note = "log-yield drift " + detail::format_number(drift) + " below "
                   + detail::format_number(kFlatDrift) + ": yield is flat";
    } else if (drift > 0.0) {
        out.model = DeclaredDivergent{};
        out.note = "yields are rising; the yield sum diverges";
    } else if (geometric.rss <= power.rss) {
        out.model = GeometricYield{std::exp(geometric.intercept), std::exp(geometric.slope)};
        out.note = "log-yield is linear in t";
    } else {
        out.model = PowerYield{std::exp(power.intercept), -power.slope};
        out.note = "log-yield is linear in log t";
    }
    return out;
}

}  // namespace bubblekit
