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
#include "bubblekit/continuous_time.hpp"
#include "bubblekit/models.hpp"
#include "bubblekit/series_core.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace bubblekit {
namespace {

using testing::Real50;
using testing::geometric_product;
using testing::relative_error;

MiaoWangScenario scenario(double Q, double K, double B, double D)
{
    MiaoWangScenario s;
    s.marginal_q = Q;
    s.capital = K;
    s.interpreted_component = B;
    s.dividend = D;
    return s;
}

TEST(GenMoney, Examples)
{
    const auto d = decompose(gen_money(1.0, 100));
    EXPECT_EQ(d.price, 1.0);
    EXPECT_EQ(d.fundamental, 0.0);
    EXPECT_EQ(d.bubble, 1.0);
    EXPECT_EQ(d.verdict, Classification::Bubble);

    EXPECT_EQ(decompose(gen_money(7.0, 100)).bubble, 7.0);

    for (double p0 : {1e-3, 1.0, 7.0, 1e3}) {
        const auto path = gen_money(p0, 50);
        EXPECT_FALSE(tvc_holds(path, implied_deflators(path)));
    }
    EXPECT_BK_ERROR(gen_money(0.0, 10), ErrorCode::InvalidArgument);
    EXPECT_BK_ERROR(gen_money(1.0, 0), ErrorCode::InvalidArgument);
}

TEST(GenConstant, Examples)
{
    const auto d = decompose(gen_constant(100, 5, 500));
    EXPECT_EQ(d.price, 100.0);
    EXPECT_LT(relative_error(d.fundamental, 100.0), 1e-12);
    EXPECT_EQ(d.bubble, 0.0);
    EXPECT_EQ(d.verdict, Classification::NoBubble);

    // R = (P + D) / P = 2, and V = D / (R - 1) = 1 = P.
    const auto unit = gen_constant(1, 1, 60);
    const auto q = implied_deflators(unit);
    EXPECT_DOUBLE_EQ(q.q(1), 0.5);
    const double R = 1.0 / q.q(1);
    EXPECT_DOUBLE_EQ(1.0 / (R - 1.0), 1.0);
    EXPECT_LT(relative_error(partial_value(unit, q, 60) + tail_contribution(unit, q), 1.0), 1e-15);

    const auto verdict = montrucchio_discrete(gen_constant(100, 5, 500));
    EXPECT_EQ(verdict.classification, Classification::NoBubble);
    for (double y : dividend_yield_series(gen_constant(100, 5, 500)).values) {
        EXPECT_DOUBLE_EQ(y, 0.05);
    }
    EXPECT_BK_ERROR(gen_constant(100, 0, 10), ErrorCode::InvalidArgument);
}

TEST(GenGordon, PriceMatchesPresentValueOracle)
{
    const auto path = gen_gordon(1.0, 1.02, 1.05, 100);
    EXPECT_NEAR(path.price(0), 34.0, 1e-12);

    // sum_{t=1}^{10^4} D0 g^t / R^t in 50 digits
    Real50 pv = 0;
    Real50 term = 1;
    const Real50 ratio = Real50(1.02) / Real50(1.05);
    for (int t = 1; t <= 10'000; ++t) {
        term *= ratio;
        pv += term;
    }
    EXPECT_LT(relative_error(path.price(0), pv.convert_to<double>()), 1e-12);
}

TEST(GenGordon, DeflatorsDiscountAtR)
{
    const auto path = gen_gordon(2.0, 1.01, 1.04, 300);
    const auto q = implied_deflators(path);
    for (std::size_t t = 0; t <= 300; t += 10) {
        EXPECT_NEAR(q.log_q(t), -static_cast<double>(t) * std::log(1.04), 1e-12);
    }
}

TEST(GenGordon, AlwaysNoBubble)
{
    for (double g : {0.9, 1.0, 1.02, 1.04}) {
        for (double R : {1.05, 1.1, 1.5}) {
            const auto d = decompose(gen_gordon(1.0, g, R, 200));
            EXPECT_EQ(d.verdict, Classification::NoBubble) << g << " " << R;
            EXPECT_EQ(d.bubble, 0.0);
        }
    }
    // High price is not a bubble.
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const auto path = gen_gordon(1.0, 1.05 - eps, 1.05, 50);
        EXPECT_GT(path.price(0) * eps, 0.9);
        EXPECT_EQ(decompose(path).verdict, Classification::NoBubble);
    }
    EXPECT_BK_ERROR(gen_gordon(1.0, 1.05, 1.05, 10), ErrorCode::ParameterOrder);
    EXPECT_BK_ERROR(gen_gordon(1.0, 0.5, 0.9, 10), ErrorCode::ParameterOrder);
}

TEST(GenConvergentYield, Examples)
{
    const auto d = decompose(gen_convergent_yield(0.5, 0.5, 100));
    EXPECT_EQ(d.verdict, Classification::Bubble);
    EXPECT_NEAR(d.bubble, geometric_product(0.5, 0.5), 1e-14);

    // alpha -> 0: B_0 -> 1, with 1 - B_0 ~ alpha rho / (1 - rho).
    const auto tiny = decompose(gen_convergent_yield(1e-9, 0.5, 100));
    EXPECT_NEAR(tiny.bubble, 1.0 - 1e-9, 1e-15);

    EXPECT_BK_ERROR(gen_convergent_yield(0.5, 1.0, 10), ErrorCode::InvalidArgument);
}

TEST(GenConvergentYield, GridAgreesWithRecursionOracle)
{
    for (double alpha : {0.1, 0.25, 0.5, 1.0, 2.0}) {
        for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto path = gen_convergent_yield(alpha, rho, 10'000);
            const long double log_qp = testing::log_deflated_price(
                [](std::size_t) { return 1.0; },
                [&](std::size_t t) { return alpha * std::pow(rho, static_cast<double>(t)); },
                10'000);
            const bool oracle_bubble = std::exp(log_qp) > 1e-9L;
            EXPECT_EQ(montrucchio_discrete(path).classification == Classification::Bubble,
                      oracle_bubble);
            EXPECT_EQ(bubble_component(path, implied_deflators(path)) > kBubbleTolerance,
                      oracle_bubble);
            EXPECT_NEAR(bubble_component(path, implied_deflators(path)),
                        geometric_product(alpha, rho, 5000), 1e-14);
        }
    }
}

TEST(Generators, PassNoArbitrageUnderImpliedDeflators)
{
    const DiscretePath paths[] = {gen_money(3, 200), gen_constant(100, 5, 200),
                                  gen_gordon(1, 1.02, 1.05, 200),
                                  gen_convergent_yield(0.5, 0.9, 200)};
    for (const auto& path : paths) {
        EXPECT_LE(max_arbitrage_residual(path, implied_deflators(path)), 1e-14);
    }
}

TEST(GenMiaoWang, Example)
{
    const auto s = scenario(1, 2, 0.5, 0.2);
    EXPECT_DOUBLE_EQ(s.steady_state_price(), 2.5);
    const auto path = gen_miao_wang(s);
    EXPECT_EQ(path.intervals(), 100'000u);
    EXPECT_DOUBLE_EQ(path.prices()[0], 1.25);
    EXPECT_DOUBLE_EQ(path.dividends().density()[0], 0.1);
    EXPECT_EQ(montrucchio_continuous(path).classification, Classification::NoBubble);
    const auto d = decompose_continuous(path);
    EXPECT_EQ(d.verdict, Classification::NoBubble);
    EXPECT_EQ(d.bubble, 0.0);
    EXPECT_EQ(d.fundamental, d.price);
}

TEST(GenMiaoWang, ConvergesWithinTheExponentialEnvelope)
{
    auto s = scenario(2, 1, 1, 0.3);
    s.convergence_rate = 0.8;
    s.initial_price = 10.0;
    s.initial_dividend = 0.0;
    s.horizon = 20;
    s.grid_step = 1e-2;
    const auto path = gen_miao_wang(s);
    for (std::size_t k = 0; k <= path.intervals(); k += 50) {
        const double envelope = std::exp(-0.8 * path.time(k));
        EXPECT_LE(std::fabs(path.prices()[k] - 3.0), 7.0 * envelope + 1e-14);
        EXPECT_LE(std::fabs(path.dividends().density()[k] - 0.3), 0.3 * envelope + 1e-15);
    }
}

TEST(GenMiaoWang, InterpretedComponentNeverMakesARationalBubble)
{
    for (double B = 0.0; B <= 10.0 * 2.0 * 1.5 + 1e-9; B += 3.0) {
        auto s = scenario(2, 1.5, B, 0.25);
        s.horizon = 50;
        s.grid_step = 1e-2;
        const auto path = gen_miao_wang(s);
        EXPECT_EQ(montrucchio_continuous(path).classification, Classification::NoBubble) << B;
        EXPECT_EQ(decompose_continuous(path).bubble, 0.0) << B;
    }
}

TEST(GenMiaoWang, InstantConvergenceIsTheConstantAsset)
{
    auto s = scenario(1, 2, 0.5, 0.2);
    s.convergence_rate = std::numeric_limits<double>::infinity();
    s.horizon = 20;
    const auto path = gen_miao_wang(s);
    for (double p : path.prices()) {
        ASSERT_EQ(p, 2.5);
    }
    const auto discrete = discretize(path, 1.0);
    EXPECT_EQ(montrucchio_discrete(discrete).classification,
              montrucchio_continuous(path).classification);
    const auto d = decompose(discrete);
    EXPECT_EQ(d.price, 2.5);
    EXPECT_EQ(d.fundamental, 2.5);
    EXPECT_EQ(d.bubble, 0.0);
    EXPECT_EQ(d.verdict, Classification::NoBubble);
    for (std::size_t t = 1; t <= discrete.horizon(); ++t) {
        EXPECT_NEAR(discrete.dividend(t), 0.2, 1e-13);
    }
}

TEST(GenMiaoWang, DiscretizedVerdictsAgree)
{
    for (double Q : {0.5, 2.0}) {
        for (double B : {0.0, 5.0}) {
            for (double D : {0.1, 1.0}) {
                auto s = scenario(Q, 2, B, D);
                s.horizon = 30;
                s.grid_step = 1e-2;
                const auto path = gen_miao_wang(s);
                for (double step : {0.5, 1.0}) {
                    EXPECT_EQ(montrucchio_discrete(discretize(path, step)).classification,
                              montrucchio_continuous(path).classification);
                }
            }
        }
    }
}

TEST(GenMiaoWang, HundredFirmEnsemble)
{
    std::vector<Decomposition> firms;
    for (int i = 0; i < 100; ++i) {
        auto s = scenario(0.5 + 0.05 * i, 1.0 + (i % 7), 0.1 * (i % 11), 0.05 + 0.01 * (i % 13));
        s.convergence_rate = 0.1 + 0.02 * i;
        s.horizon = 20;
        s.grid_step = 1e-2;
        firms.push_back(decompose_continuous(gen_miao_wang(s)));
    }
    const auto aggregate = ensemble_decompose(firms);
    EXPECT_EQ(aggregate.verdict, Classification::NoBubble);
    EXPECT_EQ(aggregate.bubble, 0.0);
    EXPECT_EQ(aggregate.diagnostics.members, 100u);
}

TEST(GenMiaoWang, Validation)
{
    EXPECT_BK_ERROR(gen_miao_wang(scenario(0, 1, 0, 0.1)), ErrorCode::InvalidArgument);
    EXPECT_BK_ERROR(gen_miao_wang(scenario(1, 1, -1, 0.1)), ErrorCode::InvalidArgument);
    EXPECT_BK_ERROR(gen_miao_wang(scenario(1, 1, 0, 0)), ErrorCode::InvalidArgument);
    auto s = scenario(1, 1, 0, 0.1);
    s.convergence_rate = 0.0;
    EXPECT_BK_ERROR(gen_miao_wang(s), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace bubblekit
