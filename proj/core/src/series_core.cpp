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

#include "bubblekit/series_core.hpp"

#include "bubblekit/error.hpp"
#include "bubblekit/numeric.hpp"
#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bubblekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_horizon(const DiscretePath& path, const Deflators& deflators)
{
    if (deflators.horizon() != path.horizon()) {
        throw Error(ErrorCode::HorizonMismatch,
                    "deflators cover " + std::to_string(deflators.horizon())
                        + " periods but the path covers " + std::to_string(path.horizon()));
    }
}

std::vector<std::size_t> checkpoint_periods(std::size_t horizon)
{
    std::vector<std::size_t> periods{std::max<std::size_t>(1, horizon / 4),
                                     std::max<std::size_t>(1, horizon / 2), horizon};
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
    return periods;
}

}  // namespace

Deflators implied_deflators(const DiscretePath& path)
{
    if (path.price(0) == 0.0) {
        throw Error(ErrorCode::ZeroInitialPrice, "P_0 = 0: state prices are undefined", 0);
    }
    const std::size_t horizon = path.horizon();
    std::vector<double> log_q(horizon + 1, 0.0);

    // log q_{t+1} = log q_t + log P_t - log(P_{t+1} + D_{t+1}), with the last
    // term split as log P_{t+1} + log1p(D_{t+1} / P_{t+1}) so that the price
    // logarithms telescope exactly.
    CompensatedSum acc;
    for (std::size_t t = 0; t < horizon; ++t) {
        const double p_now = path.price(t);
        const double p_next = path.price(t + 1);
        const double d_next = path.dividend(t + 1);
        if (p_next + d_next <= 0.0) {
            throw Error(ErrorCode::ZeroDenominator,
                        "P + D vanishes at t=" + std::to_string(t + 1), t + 1);
        }
        acc += p_now > 0.0 ? std::log(p_now) : -kInf;
        if (p_next > 0.0) {
            acc += -std::log(p_next);
            acc += -std::log1p(d_next / p_next);
        } else {
            acc += -std::log(d_next);
        }
        log_q[t + 1] = acc.value();
    }
    return Deflators(std::move(log_q));
}

double max_arbitrage_residual(const DiscretePath& path, const Deflators& deflators)
{
    require_same_horizon(path, deflators);
    double worst = 0.0;
    for (std::size_t t = 0; t < path.horizon(); ++t) {
        const double lq_now = deflators.log_q(t);
        const double lq_next = deflators.log_q(t + 1);
        const double p_now = path.price(t);
        const double cum_next = path.price(t + 1) + path.dividend(t + 1);
        double residual = 0.0;
        if (p_now == 0.0 || lq_now == -kInf) {
            residual = lq_next == -kInf ? 0.0 : kInf;
        } else {
            const double ratio = std::exp(lq_next - lq_now) * cum_next / p_now;
            residual = std::fabs(ratio - 1.0);
        }
        worst = std::max(worst, residual);
    }
    return worst;
}

bool check_no_arbitrage(const DiscretePath& path, const Deflators& deflators, double tol)
{
    return max_arbitrage_residual(path, deflators) <= tol;
}

double partial_value(const DiscretePath& path, const Deflators& deflators, std::size_t T)
{
    require_same_horizon(path, deflators);
    if (T < 1 || T > path.horizon()) {
        throw Error(ErrorCode::OutOfRange, "T=" + std::to_string(T) + " outside [1, "
                                               + std::to_string(path.horizon()) + "]");
    }
    CompensatedSum sum;
    for (std::size_t t = 1; t <= T; ++t) {
        const double d = path.dividend(t);
        if (d > 0.0) {
            sum += std::exp(deflators.log_q(t)) * d;
        }
    }
    return sum.value();
}

double deflated_price(const DiscretePath& path, const Deflators& deflators, std::size_t t)
{
    require_same_horizon(path, deflators);
    const double p = path.price(t);
    return p > 0.0 ? std::exp(deflators.log_q(t) + std::log(p)) : 0.0;
}

double tail_contribution(const DiscretePath& path, const Deflators& deflators)
{
    const auto& tail = path.declared_tail();
    const std::size_t horizon = path.horizon();
    const double terminal = deflated_price(path, deflators, horizon);

    if (const auto* declared = std::get_if<DeclaredConvergent>(&tail)) {
        return declared->tail_sum;
    }
    if (const auto* levels = std::get_if<ConstantLevels>(&tail); levels && levels->dividend > 0.0) {
        // sum_{k>=1} q_{T+k} D with q_{T+1} = q_T P_T / (P + D) and ratio r = P / (P + D)
        const double cum = levels->price + levels->dividend;
        const double q_next = terminal / cum;
        const double r = levels->price / cum;
        return levels->dividend * q_next / (1.0 - r);
    }
    const double log_survival = log_tail_survival_discrete(tail, static_cast<std::int64_t>(horizon));
    return terminal * (0.0 - std::expm1(log_survival));  // 0.0 - x avoids -0
}

double fundamental_value(const DiscretePath& path, const Deflators& deflators)
{
    const auto& tail = path.declared_tail();
    require_same_horizon(path, deflators);
    if (classify_tail(tail) == TailClass::Divergent) {
        return path.price(0);
    }
    return partial_value(path, deflators, path.horizon()) + tail_contribution(path, deflators);
}

double bubble_component(const DiscretePath& path, const Deflators& deflators)
{
    const double price = path.price(0);
    const double raw = price - fundamental_value(path, deflators);
    if (raw < -kBubbleTolerance * price) {
        throw Error(ErrorCode::InconsistentClassification,
                    "declared tail implies a fundamental value above the price (excess "
                        + detail::format_number(-raw) + ")");
    }
    return std::max(raw, 0.0);
}

bool tvc_holds(const DiscretePath& path, const Deflators& deflators)
{
    return bubble_component(path, deflators) <= kBubbleTolerance * path.price(0);
}

Decomposition finalize_decomposition(double price, double fundamental, double bubble,
                                     const Verdict& verdict, DecompositionDiagnostics diagnostics)
{
    Decomposition out;
    out.price = price;
    out.fundamental = fundamental;
    out.bubble = bubble;
    diagnostics.tail_class = verdict.tail_class;
    diagnostics.yield_partial_sum = verdict.partial_sum;
    diagnostics.rationale = verdict.rationale;

    const bool significant = bubble > kBubbleTolerance * price;
    if (significant && verdict.classification == Classification::NoBubble) {
        throw Error(ErrorCode::InconsistentClassification,
                    "bubble " + detail::format_number(bubble)
                        + " exceeds tolerance but the yield tail is divergent");
    }
    if (!significant && verdict.classification == Classification::Bubble) {
        // Convergent tail whose bubble is too small to demonstrate.
        diagnostics.boundary = true;
        diagnostics.rationale += "; bubble within tolerance of zero, reported as NoBubble";
    } else if (!significant && bubble > 0.0) {
        diagnostics.boundary = true;
    }
    out.verdict = significant ? Classification::Bubble : Classification::NoBubble;
    out.diagnostics = std::move(diagnostics);
    return out;
}

Decomposition decompose(const DiscretePath& path)
{
    const auto deflators = implied_deflators(path);
    const auto verdict = montrucchio_discrete(path);
    const double fundamental = fundamental_value(path, deflators);
    const double bubble = bubble_component(path, deflators);

    DecompositionDiagnostics diag;
    for (std::size_t t : checkpoint_periods(path.horizon())) {
        diag.checkpoints.push_back({static_cast<double>(t), partial_value(path, deflators, t),
                                    deflated_price(path, deflators, t)});
    }
    diag.deflated_terminal_price = deflated_price(path, deflators, path.horizon());
    diag.tail_contribution = tail_contribution(path, deflators);
    return finalize_decomposition(path.price(0), fundamental, bubble, verdict, std::move(diag));
}

Decomposition ensemble_decompose(std::span<const Decomposition> members)
{
    if (members.empty()) {
        throw Error(ErrorCode::EmptyEnsemble, "cannot aggregate an empty ensemble");
    }
    CompensatedSum price;
    CompensatedSum fundamental;
    CompensatedSum bubble;
    CompensatedSum terminal;
    CompensatedSum tail;
    std::size_t with_bubble = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        if (!(m.bubble >= 0.0) || !(m.fundamental >= 0.0) || !(m.price >= 0.0)) {
            throw Error(ErrorCode::ValidationError,
                        "ensemble member " + std::to_string(i) + " has a negative component", i);
        }
        price += m.price;
        fundamental += m.fundamental;
        bubble += m.bubble;
        terminal += m.diagnostics.deflated_terminal_price;
        tail += m.diagnostics.tail_contribution;
        if (m.verdict == Classification::Bubble) {
            ++with_bubble;
        }
    }

    Decomposition out;
    out.price = price.value();
    out.fundamental = fundamental.value();
    out.bubble = bubble.value();
    out.verdict = out.bubble > kBubbleTolerance * out.price ? Classification::Bubble
                                                            : Classification::NoBubble;
    auto& diag = out.diagnostics;
    diag.members = members.size();
    diag.deflated_terminal_price = terminal.value();
    diag.tail_contribution = tail.value();
    diag.tail_class = out.verdict == Classification::Bubble ? TailClass::Convergent
                                                            : TailClass::Divergent;
    diag.boundary = out.verdict == Classification::NoBubble && out.bubble > 0.0;
    diag.rationale = "aggregate of " + std::to_string(members.size()) + " members, "
                     + std::to_string(with_bubble)
                     + " with a bubble; the aggregate bubble is zero iff every member's is";
    return out;
}

}  // namespace bubblekit
