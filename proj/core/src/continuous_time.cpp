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

#include "bubblekit/continuous_time.hpp"

#include "bubblekit/error.hpp"
#include "bubblekit/numeric.hpp"
#include "format.hpp"

#include <algorithm>
#include <cmath>

namespace bubblekit {

namespace {

// Relative slack, in grid units, for deciding that a time sits on a grid point.
constexpr double kGridSnap = 1e-9;

struct GridPosition {
    std::size_t index;  ///< last grid point at or before T
    double remainder;   ///< T - index * h, in [0, h)
};

GridPosition locate(const ContinuousPath& path, double T)
{
    if (!(T > 0.0) || T > path.horizon() * (1.0 + 1e-12)) {
        throw Error(ErrorCode::OutOfRange, "T=" + detail::format_number(T) + " outside (0, "
                                               + detail::format_number(path.horizon()) + "]");
    }
    const double h = path.grid_step();
    const double units = T / h;
    auto k = static_cast<std::size_t>(std::floor(units + kGridSnap));
    k = std::min(k, path.intervals());
    double remainder = T - static_cast<double>(k) * h;
    if (remainder < kGridSnap * h) {
        remainder = 0.0;
    }
    return {k, remainder};
}

bool jump_before(const ContinuousPath& path, const Jump& jump, double T)
{
    return jump.time <= T + kGridSnap * path.grid_step();
}

std::size_t jump_grid_index(const ContinuousPath& path, const Jump& jump, PriceSide side)
{
    const double units = jump.time / path.grid_step();
    auto right = static_cast<std::size_t>(std::ceil(units - kGridSnap));
    right = std::clamp<std::size_t>(right, 1, path.intervals());
    return side == PriceSide::Right ? right : right - 1;
}

double yield_at(const ContinuousPath& path, std::size_t k)
{
    return path.dividends().density()[k] / path.prices()[k];
}

// Density-to-price ratio at T by linear interpolation within the final panel.
double yield_interpolated(const ContinuousPath& path, const GridPosition& pos)
{
    const double a0 = yield_at(path, pos.index);
    if (pos.remainder == 0.0) {
        return a0;
    }
    const double a1 = yield_at(path, pos.index + 1);
    return a0 + (a1 - a0) * pos.remainder / path.grid_step();
}

// log of the factor by which q P changes across a payout. The exact
// no-arbitrage step is P+ / (P+ + dF): 1 / (1 + dF/P+) with the ex-dividend
// price, 1 - dF/P- with the cum-dividend one.
double jump_log_factor(const ContinuousPath& path, const Jump& jump, PriceSide side)
{
    const double ratio = jump.size / path.prices()[jump_grid_index(path, jump, side)];
    if (side == PriceSide::Right) {
        return -std::log1p(ratio);
    }
    if (ratio >= 1.0) {
        throw Error(ErrorCode::ValidationError, "jump at t=" + detail::format_number(jump.time)
                                                    + " pays out at least the cum-dividend price");
    }
    return std::log1p(-ratio);
}

std::vector<double> checkpoint_times(double horizon)
{
    return {horizon / 4.0, horizon / 2.0, horizon};
}

}  // namespace

CumulativeDividend::CumulativeDividend(std::vector<double> density, std::vector<Jump> jumps)
    : density_(std::move(density))
    , jumps_(std::move(jumps))
{
    for (std::size_t k = 0; k < density_.size(); ++k) {
        if (!std::isfinite(density_[k]) || density_[k] < 0.0) {
            throw Error(ErrorCode::ValidationError,
                        "dividend density at grid index " + std::to_string(k)
                            + " must be finite and >= 0",
                        k);
        }
    }
    for (std::size_t j = 0; j < jumps_.size(); ++j) {
        const auto& jump = jumps_[j];
        if (!std::isfinite(jump.time) || !(jump.time > 0.0)) {
            throw Error(ErrorCode::ValidationError, "jump times must be > 0", j);
        }
        if (!std::isfinite(jump.size) || jump.size < 0.0) {
            throw Error(ErrorCode::ValidationError, "jump sizes must be finite and >= 0", j);
        }
        if (j > 0 && !(jump.time > jumps_[j - 1].time)) {
            throw Error(ErrorCode::ValidationError, "jump times must be strictly increasing", j);
        }
    }
}

CumulativeDividend CumulativeDividend::without_jump(std::size_t index) const
{
    auto jumps = jumps_;
    jumps.erase(jumps.begin() + static_cast<std::ptrdiff_t>(index));
    return CumulativeDividend(density_, std::move(jumps));
}

ContinuousPath::ContinuousPath(double grid_step, double horizon, std::vector<double> prices,
                               CumulativeDividend dividends, std::optional<TailModel> tail)
    : grid_step_(grid_step)
    , horizon_(horizon)
    , prices_(std::move(prices))
    , dividends_(std::move(dividends))
    , tail_(std::move(tail))
{
    if (!std::isfinite(grid_step_) || !(grid_step_ > 0.0) || !std::isfinite(horizon_)
        || !(horizon_ > 0.0)) {
        throw Error(ErrorCode::ValidationError, "grid step and horizon must be positive");
    }
    const double units = horizon_ / grid_step_;
    const double intervals = std::round(units);
    if (intervals < 1.0 || std::fabs(units - intervals) > 1e-6 * std::max(1.0, intervals)) {
        throw Error(ErrorCode::StepMismatch, "horizon " + detail::format_number(horizon_)
                                                 + " is not a multiple of the grid step "
                                                 + detail::format_number(grid_step_));
    }
    const auto samples = static_cast<std::size_t>(intervals) + 1;
    if (prices_.size() != samples || dividends_.density().size() != samples) {
        throw Error(ErrorCode::ValidationError,
                    "expected " + std::to_string(samples) + " price and density samples, got "
                        + std::to_string(prices_.size()) + " and "
                        + std::to_string(dividends_.density().size()));
    }
    for (std::size_t k = 0; k < prices_.size(); ++k) {
        if (!std::isfinite(prices_[k]) || !(prices_[k] > 0.0)) {
            throw Error(ErrorCode::NonPositivePrice,
                        "price at grid index " + std::to_string(k) + " is not strictly positive",
                        k);
        }
    }
    const auto jumps = dividends_.jumps();
    if (!jumps.empty() && jumps.back().time > horizon_ * (1.0 + 1e-12)) {
        throw Error(ErrorCode::ValidationError, "jump after the horizon", jumps.size() - 1);
    }
    if (tail_) {
        validate(*tail_);
    }
}

const TailModel& ContinuousPath::declared_tail() const
{
    if (!tail_) {
        throw Error(ErrorCode::MissingTail,
                    "no tail model declared; the yield tail cannot be inferred from samples");
    }
    return *tail_;
}

ContinuousPath ContinuousPath::with_tail(TailModel tail) const
{
    return ContinuousPath(grid_step_, horizon_, prices_, dividends_, std::move(tail));
}

ContinuousPath ContinuousPath::with_dividends(CumulativeDividend dividends) const
{
    return ContinuousPath(grid_step_, horizon_, prices_, std::move(dividends), tail_);
}

double ContinuousPath::cumulative_dividend(double t) const
{
    if (t <= 0.0) {
        return 0.0;
    }
    const auto pos = locate(*this, t);
    const auto density = dividends_.density();
    const double h = grid_step_;
    CompensatedSum sum;
    for (std::size_t k = 0; k < pos.index; ++k) {
        sum += 0.5 * h * (density[k] + density[k + 1]);
    }
    if (pos.remainder > 0.0) {
        const double d0 = density[pos.index];
        const double d1 = density[pos.index + 1];
        const double dt = d0 + (d1 - d0) * pos.remainder / h;
        sum += 0.5 * pos.remainder * (d0 + dt);
    }
    for (const auto& jump : dividends_.jumps()) {
        if (jump_before(*this, jump, t)) {
            sum += jump.size;
        }
    }
    return sum.value();
}

double integrate_dF_over_P(const ContinuousPath& path, double T, PriceSide side)
{
    const auto pos = locate(path, T);
    const double h = path.grid_step();
    CompensatedSum sum;
    double a_prev = yield_at(path, 0);
    for (std::size_t k = 0; k < pos.index; ++k) {
        const double a_next = yield_at(path, k + 1);
        sum += 0.5 * h * (a_prev + a_next);
        a_prev = a_next;
    }
    if (pos.remainder > 0.0) {
        sum += 0.5 * pos.remainder * (a_prev + yield_interpolated(path, pos));
    }
    for (const auto& jump : path.dividends().jumps()) {
        if (jump_before(path, jump, T)) {
            sum += jump.size / path.prices()[jump_grid_index(path, jump, side)];
        }
    }
    return sum.value();
}

double IdentityCheck::relative_gap() const
{
    return std::fabs(lhs - rhs) / rhs;
}

IdentityCheck deflated_price_identity(const ContinuousPath& path, double T, PriceSide side)
{
    const auto pos = locate(path, T);
    const double h = path.grid_step();
    const double log_p0 = std::log(path.prices()[0]);

    // Crank-Nicolson step of d(qP)/dt = -a qP in log form. Falls back to the
    // exponential update when h a / 2 leaves the range where the rational
    // factor stays positive.
    auto step = [](double dt, double a0, double a1) {
        const double u = 0.5 * dt * a0;
        const double v = 0.5 * dt * a1;
        return u < 0.5 ? std::log1p(-u) - std::log1p(v) : -(u + v);
    };

    CompensatedSum log_qp(log_p0);
    double a_prev = yield_at(path, 0);
    for (std::size_t k = 0; k < pos.index; ++k) {
        const double a_next = yield_at(path, k + 1);
        log_qp += step(h, a_prev, a_next);
        a_prev = a_next;
    }
    if (pos.remainder > 0.0) {
        log_qp += step(pos.remainder, a_prev, yield_interpolated(path, pos));
    }
    for (const auto& jump : path.dividends().jumps()) {
        if (jump_before(path, jump, T)) {
            log_qp += jump_log_factor(path, jump, side);
        }
    }

    IdentityCheck out;
    out.lhs = std::exp(log_qp.value());
    out.rhs = std::exp(log_p0 - integrate_dF_over_P(path, T, side));
    return out;
}

Verdict montrucchio_continuous(const ContinuousPath& path, PriceSide side)
{
    const auto& tail = path.declared_tail();
    return verdict_from_tail(tail, integrate_dF_over_P(path, path.horizon(), side),
                             "integral of dF_t/P_t");
}

DiscretePath discretize(const ContinuousPath& path, double step)
{
    const double h = path.grid_step();
    const double ratio = step / h;
    const double per_period = std::round(ratio);
    if (!std::isfinite(ratio) || per_period < 1.0
        || std::fabs(ratio - per_period) > kGridSnap * std::max(1.0, per_period)) {
        throw Error(ErrorCode::StepMismatch, "step " + detail::format_number(step)
                                                 + " is not a positive multiple of grid step "
                                                 + detail::format_number(h));
    }
    const auto m = static_cast<std::size_t>(per_period);
    const std::size_t periods = path.intervals() / m;
    if (periods == 0) {
        throw Error(ErrorCode::StepMismatch, "step exceeds the path horizon");
    }

    const auto density = path.dividends().density();
    const auto prices = path.prices();
    std::vector<double> out_prices(periods + 1);
    std::vector<double> out_dividends(periods, 0.0);
    out_prices[0] = prices[0];
    for (std::size_t k = 1; k <= periods; ++k) {
        CompensatedSum flow;
        for (std::size_t i = (k - 1) * m; i < k * m; ++i) {
            flow += 0.5 * h * (density[i] + density[i + 1]);
        }
        out_dividends[k - 1] = flow.value();
        out_prices[k] = prices[k * m];
    }
    for (const auto& jump : path.dividends().jumps()) {
        const std::size_t grid = jump_grid_index(path, jump, PriceSide::Right);
        const std::size_t period = (grid + m - 1) / m;
        if (period >= 1 && period <= periods) {
            out_dividends[period - 1] += jump.size;
        }
    }

    std::optional<TailModel> tail;
    if (path.tail()) {
        tail = rescale_tail_period(*path.tail(), step);
    }
    return DiscretePath(std::move(out_prices), std::move(out_dividends), std::move(tail));
}

Decomposition decompose_continuous(const ContinuousPath& path, PriceSide side)
{
    const auto verdict = montrucchio_continuous(path, side);
    const auto& tail = path.declared_tail();
    const double price = path.prices()[0];
    const double horizon = path.horizon();
    const double h = path.grid_step();
    const auto density = path.dividends().density();
    const auto prices = path.prices();
    const auto jumps = path.dividends().jumps();

    // log(q P) is the state: the density part subtracts the running integral
    // of d/P, a payout applies its exact jump factor. The present value of
    // dividends takes the trapezoid of q d plus the drop in q P at each jump,
    // so P_0 = PV(t) + q_t P_t holds to quadrature accuracy at every t.
    DecompositionDiagnostics diag;
    const auto times = checkpoint_times(horizon);
    std::size_t next_checkpoint = 0;
    std::size_t next_jump = 0;
    CompensatedSum log_qp(std::log(price));
    CompensatedSum present_value;
    double q_prev = 1.0;
    for (std::size_t k = 0; k < path.intervals(); ++k) {
        log_qp += -0.5 * h * (density[k] / prices[k] + density[k + 1] / prices[k + 1]);
        const double q_next = std::exp(log_qp.value()) / prices[k + 1];
        present_value += 0.5 * h * (q_prev * density[k] + q_next * density[k + 1]);
        while (next_jump < jumps.size()
               && jump_grid_index(path, jumps[next_jump], PriceSide::Right) == k + 1) {
            const double before = std::exp(log_qp.value());
            log_qp += jump_log_factor(path, jumps[next_jump], side);
            present_value += before - std::exp(log_qp.value());
            ++next_jump;
        }
        const double deflated = std::exp(log_qp.value());
        q_prev = deflated / prices[k + 1];
        const double t = path.time(k + 1);
        while (next_checkpoint < times.size() && t >= times[next_checkpoint] - kGridSnap * h) {
            diag.checkpoints.push_back({times[next_checkpoint], present_value.value(), deflated});
            ++next_checkpoint;
        }
    }
    const double terminal = std::exp(log_qp.value());
    diag.deflated_terminal_price = terminal;

    double fundamental = price;
    double bubble = 0.0;
    if (const auto* declared = std::get_if<DeclaredConvergent>(&tail)) {
        diag.tail_contribution = declared->tail_sum;
        const double raw = terminal - declared->tail_sum;
        if (raw < -kBubbleTolerance * price) {
            throw Error(ErrorCode::InconsistentClassification,
                        "declared tail implies a fundamental value above the price");
        }
        bubble = std::max(raw, 0.0);
        fundamental = price - bubble;
    } else if (verdict.tail_class == TailClass::Divergent) {
        diag.tail_contribution = terminal;
    } else {
        const double survival = std::exp(log_tail_survival_continuous(tail, horizon));
        bubble = terminal * survival;
        fundamental = price - bubble;
        diag.tail_contribution = terminal - bubble;
    }
    return finalize_decomposition(price, fundamental, bubble, verdict, std::move(diag));
}

}  // namespace bubblekit
