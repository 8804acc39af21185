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

#include "bubblekit/tail_model.hpp"

#include "bubblekit/error.hpp"
#include "bubblekit/numeric.hpp"
#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bubblekit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

[[noreturn]] void unsupported(const std::string& what)
{
    throw Error(ErrorCode::TailUnsupported, what);
}

double require(const std::map<std::string, double>& params, const std::string& key,
               std::string_view kind)
{
    const auto it = params.find(key);
    if (it == params.end()) {
        unsupported("tail '" + std::string(kind) + "' requires parameter '" + key + "'");
    }
    return it->second;
}

// -sum_{t > last} log1p(a rho^t); terms decay geometrically.
double geometric_log_survival(double a, double rho, std::int64_t last)
{
    double x = a * std::pow(rho, static_cast<double>(last + 1));
    CompensatedSum sum;
    for (int i = 0; i < 1'000'000 && x > 0.0; ++i) {
        const double term = std::log1p(x);
        sum += term;
        if (term <= 1e-20 * sum.value()) {
            break;
        }
        x *= rho;
    }
    return -sum.value();
}

// -sum_{t > last} log1p(a t^-p) for p > 1. Terms up to a cut-off M are summed
// directly; the remainder uses Euler-Maclaurin with the integral of log1p
// expanded as a power series (valid once a M^-p <= 1/2).
double power_log_survival(double a, double p, std::int64_t last)
{
    const double knee = std::ceil(std::pow(2.0 * a, 1.0 / p)) + 1.0;
    const auto cutoff = static_cast<std::int64_t>(
        std::max({static_cast<double>(last + 1), 1000.0, knee}));

    CompensatedSum sum;
    for (std::int64_t t = last + 1; t < cutoff; ++t) {
        sum += std::log1p(a * std::pow(static_cast<double>(t), -p));
    }

    const double m = static_cast<double>(cutoff);
    const double x_m = a * std::pow(m, -p);

    // integral_M^inf log1p(a t^-p) dt = sum_k (-1)^{k+1} a^k M^{1-kp} / (k (kp - 1))
    CompensatedSum integral;
    double xk = 1.0;
    for (int k = 1; k <= 200; ++k) {
        xk *= x_m;
        const double term = xk * m / (k * (k * p - 1.0));
        integral += (k % 2 == 1) ? term : -term;
        if (term < 1e-20 * std::fabs(integral.value())) {
            break;
        }
    }

    const double f = std::log1p(x_m);
    const double df = -p * x_m / (m * (1.0 + x_m));
    const double d3f = -p * (p + 1.0) * (p + 2.0) * x_m / (m * m * m);

    sum += integral.value();
    sum += 0.5 * f;
    sum += -df / 12.0;
    sum += d3f / 720.0;
    return -sum.value();
}

}  // namespace

std::string_view to_string(TailClass c) noexcept
{
    return c == TailClass::Convergent ? "Convergent" : "Divergent";
}

void validate(const TailModel& tail)
{
    std::visit(overloaded{
        [](const ConstantLevels& t) {
            if (!positive(t.price) || !non_negative(t.dividend)) {
                unsupported("constant-levels requires P > 0 and D >= 0");
            }
        },
        [](const ConstantYield& t) {
            if (!positive(t.yield)) {
                unsupported("constant-yield requires c > 0");
            }
        },
        [](const GeometricYield& t) {
            if (!positive(t.scale) || !(t.ratio > 0.0 && t.ratio < 1.0)) {
                unsupported("geometric-yield requires a > 0 and 0 < rho < 1");
            }
        },
        [](const PowerYield& t) {
            if (!positive(t.scale) || !positive(t.exponent)) {
                unsupported("power-yield requires a > 0 and p > 0");
            }
        },
        [](const ZeroDividends&) {},
        [](const DeclaredDivergent&) {},
        [](const DeclaredConvergent& t) {
            if (!non_negative(t.tail_sum)) {
                unsupported("declared-convergent requires tail_sum >= 0");
            }
        },
    }, tail);
}

std::string_view tail_kind(const TailModel& tail) noexcept
{
    return std::visit(overloaded{
        [](const ConstantLevels&) -> std::string_view { return "constant-levels"; },
        [](const ConstantYield&) -> std::string_view { return "constant-yield"; },
        [](const GeometricYield&) -> std::string_view { return "geometric-yield"; },
        [](const PowerYield&) -> std::string_view { return "power-yield"; },
        [](const ZeroDividends&) -> std::string_view { return "zero-dividends"; },
        [](const DeclaredDivergent&) -> std::string_view { return "declared-divergent"; },
        [](const DeclaredConvergent&) -> std::string_view { return "declared-convergent"; },
    }, tail);
}

std::map<std::string, double> tail_params(const TailModel& tail)
{
    return std::visit(overloaded{
        [](const ConstantLevels& t) -> std::map<std::string, double> {
            return {{"P", t.price}, {"D", t.dividend}};
        },
        [](const ConstantYield& t) -> std::map<std::string, double> { return {{"c", t.yield}}; },
        [](const GeometricYield& t) -> std::map<std::string, double> {
            return {{"a", t.scale}, {"rho", t.ratio}};
        },
        [](const PowerYield& t) -> std::map<std::string, double> {
            return {{"a", t.scale}, {"p", t.exponent}};
        },
        [](const ZeroDividends&) -> std::map<std::string, double> { return {}; },
        [](const DeclaredDivergent&) -> std::map<std::string, double> { return {}; },
        [](const DeclaredConvergent& t) -> std::map<std::string, double> {
            return {{"tail_sum", t.tail_sum}};
        },
    }, tail);
}

TailModel make_tail(std::string_view kind, const std::map<std::string, double>& params)
{
    TailModel tail;
    if (kind == "constant-levels") {
        tail = ConstantLevels{require(params, "P", kind), require(params, "D", kind)};
    } else if (kind == "constant-yield") {
        tail = ConstantYield{require(params, "c", kind)};
    } else if (kind == "geometric-yield") {
        tail = GeometricYield{require(params, "a", kind), require(params, "rho", kind)};
    } else if (kind == "power-yield") {
        tail = PowerYield{require(params, "a", kind), require(params, "p", kind)};
    } else if (kind == "zero-dividends") {
        tail = ZeroDividends{};
    } else if (kind == "declared-divergent") {
        tail = DeclaredDivergent{};
    } else if (kind == "declared-convergent") {
        tail = DeclaredConvergent{require(params, "tail_sum", kind)};
    } else {
        unsupported("unknown tail kind '" + std::string(kind) + "'");
    }
    validate(tail);
    return tail;
}

std::string describe(const TailModel& tail)
{
    std::string out(tail_kind(tail));
    const auto params = tail_params(tail);
    if (params.empty()) {
        return out;
    }
    out += '(';
    bool first = true;
    for (const auto& [key, value] : params) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += key + "=" + detail::format_number(value);
    }
    out += ')';
    return out;
}

double log_tail_survival_discrete(const TailModel& tail, std::int64_t last_period)
{
    validate(tail);
    return std::visit(overloaded{
        [](const ConstantLevels& t) { return t.dividend > 0.0 ? kNegInf : 0.0; },
        [](const ConstantYield&) { return kNegInf; },
        [&](const GeometricYield& t) {
            return geometric_log_survival(t.scale, t.ratio, last_period);
        },
        [&](const PowerYield& t) {
            return t.exponent <= 1.0 ? kNegInf
                                     : power_log_survival(t.scale, t.exponent, last_period);
        },
        [](const ZeroDividends&) { return 0.0; },
        [](const DeclaredDivergent&) { return kNegInf; },
        [](const DeclaredConvergent&) -> double {
            unsupported("declared-convergent carries a present value, not a yield law");
        },
    }, tail);
}

double log_tail_survival_continuous(const TailModel& tail, double horizon)
{
    validate(tail);
    return std::visit(overloaded{
        [](const ConstantLevels& t) { return t.dividend > 0.0 ? kNegInf : 0.0; },
        [](const ConstantYield&) { return kNegInf; },
        [&](const GeometricYield& t) {
            return -t.scale * std::pow(t.ratio, horizon) / -std::log(t.ratio);
        },
        [&](const PowerYield& t) {
            if (t.exponent <= 1.0) {
                return kNegInf;
            }
            return -t.scale * std::pow(horizon, 1.0 - t.exponent) / (t.exponent - 1.0);
        },
        [](const ZeroDividends&) { return 0.0; },
        [](const DeclaredDivergent&) { return kNegInf; },
        [](const DeclaredConvergent&) -> double {
            unsupported("declared-convergent carries a present value, not a yield law");
        },
    }, tail);
}

TailModel rescale_tail_period(const TailModel& tail, double period)
{
    return std::visit(overloaded{
        [&](const ConstantLevels& t) -> TailModel {
            return ConstantLevels{t.price, t.dividend * period};
        },
        [&](const ConstantYield& t) -> TailModel { return ConstantYield{t.yield * period}; },
        [&](const GeometricYield& t) -> TailModel {
            // integral of a rho^t over ((k-1)s, ks] = a' (rho^s)^k
            const double log_rho = std::log(t.ratio);
            const double scale = t.scale * std::expm1(-period * log_rho) / -log_rho;
            return GeometricYield{scale, std::pow(t.ratio, period)};
        },
        [&](const PowerYield& t) -> TailModel {
            return PowerYield{t.scale * std::pow(period, 1.0 - t.exponent), t.exponent};
        },
        [](const auto& t) -> TailModel { return t; },
    }, tail);
}

}  // namespace bubblekit
