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


#include "bubblekit/models.hpp"
#include "bubblekit/series_core.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace bubblekit {
namespace {

using testing::geometric_product;
using testing::relative_error;

DiscretePath constant_path(double p, double d, std::size_t horizon)
{
    return gen_constant(p, d, horizon);
}

TEST(ImpliedDeflators, ConstantLevelsAreGeometric)
{
    const auto path = constant_path(100, 5, 40);
    const auto q = implied_deflators(path);
    EXPECT_EQ(q.log_q(0), 0.0);
    EXPECT_NEAR(q.q(1), 0.95238095238095238, 1e-15);
    for (std::size_t t = 0; t <= 40; ++t) {
        EXPECT_LT(relative_error(q.q(t), std::pow(100.0 / 105.0, static_cast<double>(t))), 1e-13);
    }
}

TEST(ImpliedDeflators, UnitRatio)
{
    const auto q = implied_deflators(gen_money(1.0, 25));
    for (std::size_t t = 0; t <= 25; ++t) {
        EXPECT_EQ(q.q(t), 1.0);
    }
}

TEST(ImpliedDeflators, DoublingPrices)
{
    const DiscretePath path({1, 2, 4, 8}, {0, 0, 0});
    const auto q = implied_deflators(path);
    const double expected[] = {1, 0.5, 0.25, 0.125};
    for (std::size_t t = 0; t <= 3; ++t) {
        EXPECT_DOUBLE_EQ(q.q(t), expected[t]);
        EXPECT_DOUBLE_EQ(q.q(t) * path.price(t), 1.0);
    }
}

TEST(ImpliedDeflators, Rejections)
{
    EXPECT_BK_ERROR(implied_deflators(DiscretePath({0, 1}, {1})), ErrorCode::ZeroInitialPrice);
    EXPECT_BK_ERROR(DiscretePath({1, 0, 1}, {0, 1}), ErrorCode::ZeroDenominator);
}

TEST(ImpliedDeflators, InteriorZeroPrice)
{
    // The asset pays out everything at t = 1 and is worthless afterwards.
    const DiscretePath path({1, 0, 0}, {1, 0.5});
    const auto q = implied_deflators(path);
    EXPECT_EQ(q.q(1), 1.0);
    EXPECT_EQ(q.q(2), 0.0);
    EXPECT_TRUE(check_no_arbitrage(path, q, 1e-12));
}

TEST(ImpliedDeflators, NoUnderflowOverMillionPeriods)
{
    // Per-period discount ratios P / (P + D) drawn from [0.5, 1].
    constexpr std::size_t horizon = 1'000'000;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dividend(0.0, 1.0);
    std::vector<double> dividends(horizon);
    for (auto& d : dividends) {
        d = dividend(rng);
    }
    const DiscretePath path(std::vector<double>(horizon + 1, 1.0), dividends);
    const auto q = implied_deflators(path);
    double previous = 0.0;
    for (std::size_t t = 0; t <= horizon; ++t) {
        ASSERT_TRUE(std::isfinite(q.log_q(t))) << t;
        ASSERT_LE(q.log_q(t), previous + 1e-12);
        previous = q.log_q(t);
    }
    EXPECT_GE(q.log_q(horizon), -static_cast<double>(horizon) * std::log(2.0));
}

TEST(NoArbitrage, ImpliedDeflatorsPass)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto path = testing::random_path(rng, 200);
        EXPECT_TRUE(check_no_arbitrage(path, implied_deflators(path), kArbitrageTolerance));
    }
}

TEST(NoArbitrage, WrongDiscountRatio)
{
    const auto path = constant_path(100, 5, 10);
    std::vector<double> q(11);
    for (std::size_t t = 0; t <= 10; ++t) {
        q[t] = std::pow(2.0, -static_cast<double>(t));
    }
    EXPECT_FALSE(check_no_arbitrage(path, Deflators::from_linear(q), kArbitrageTolerance));
}

TEST(NoArbitrage, SinglePerturbation)
{
    const auto path = constant_path(100, 5, 10);
    std::vector<double> q(11);
    for (std::size_t t = 0; t <= 10; ++t) {
        q[t] = std::pow(100.0 / 105.0, static_cast<double>(t));
    }
    EXPECT_TRUE(check_no_arbitrage(path, Deflators::from_linear(q), kArbitrageTolerance));
    q[6] *= 1.0 + 1e-3;
    EXPECT_FALSE(check_no_arbitrage(path, Deflators::from_linear(q), kArbitrageTolerance));
    EXPECT_NEAR(max_arbitrage_residual(path, Deflators::from_linear(q)), 1e-3, 1e-9);
}

TEST(NoArbitrage, HorizonMismatch)
{
    const auto path = constant_path(100, 5, 10);
    const auto q = implied_deflators(constant_path(100, 5, 9));
    EXPECT_BK_ERROR(check_no_arbitrage(path, q, 1e-9), ErrorCode::HorizonMismatch);
}

TEST(PartialValue, SingleTerm)
{
    const auto path = constant_path(100, 5, 10);
    EXPECT_NEAR(partial_value(path, implied_deflators(path), 1), 5.0 * 100.0 / 105.0, 1e-13);
}

TEST(PartialValue, ZeroDividends)
{
    const auto path = gen_money(3.0, 30);
    const auto q = implied_deflators(path);
    for (std::size_t T : {1, 7, 30}) {
        EXPECT_EQ(partial_value(path, q, T), 0.0);
    }
}

TEST(PartialValue, GeometricClosedForm)
{
    const auto path = constant_path(100, 5, 500);
    const auto q = implied_deflators(path);
    const double expected = 100.0 * (1.0 - std::pow(100.0 / 105.0, 500.0));
    const double sum = partial_value(path, q, 500);
    EXPECT_LT(relative_error(sum, expected), 1e-12);
    EXPECT_LT(relative_error(path.price(0) - deflated_price(path, q, 500), sum), 1e-12);
}

TEST(PartialValue, OutOfRange)
{
    const auto path = constant_path(100, 5, 10);
    const auto q = implied_deflators(path);
    EXPECT_BK_ERROR(partial_value(path, q, 0), ErrorCode::OutOfRange);
    EXPECT_BK_ERROR(partial_value(path, q, 11), ErrorCode::OutOfRange);
}

TEST(FundamentalValue, ConstantLevels)
{
    const auto path = constant_path(100, 5, 500);
    const auto q = implied_deflators(path);
    EXPECT_LT(relative_error(fundamental_value(path, q), 100.0), 1e-12);
    // The closed-form tail itself, not only the divergent-tail shortcut.
    EXPECT_LT(relative_error(partial_value(path, q, 500) + tail_contribution(path, q), 100.0),
              1e-12);
}

TEST(FundamentalValue, PureBubbleIsZero)
{
    const auto path = gen_money(1.0, 100);
    EXPECT_EQ(fundamental_value(path, implied_deflators(path)), 0.0);
}

TEST(FundamentalValue, GeometricYieldMatchesProductOracle)
{
    const double bubble = geometric_product(0.5, 0.5);
    for (std::size_t horizon : {1, 2, 5, 60}) {
        const auto path = gen_convergent_yield(0.5, 0.5, horizon);
        const auto q = implied_deflators(path);
        EXPECT_NEAR(fundamental_value(path, q), 1.0 - bubble, 1e-14) << horizon;
    }
}

TEST(FundamentalValue, DeclaredConvergentUsesTailSum)
{
    const auto path = gen_money(1.0, 10).with_tail(DeclaredConvergent{0.25});
    EXPECT_DOUBLE_EQ(fundamental_value(path, implied_deflators(path)), 0.25);
    EXPECT_DOUBLE_EQ(bubble_component(path, implied_deflators(path)), 0.75);
}

TEST(FundamentalValue, MissingTail)
{
    const DiscretePath path({1, 1}, {0.1});
    EXPECT_BK_ERROR(fundamental_value(path, implied_deflators(path)), ErrorCode::MissingTail);
}

TEST(BubbleComponent, Examples)
{
    const auto constant = constant_path(100, 5, 500);
    EXPECT_EQ(bubble_component(constant, implied_deflators(constant)), 0.0);

    const auto money = gen_money(1.0, 500);
    EXPECT_EQ(bubble_component(money, implied_deflators(money)), 1.0);

    const auto geometric = gen_convergent_yield(0.5, 0.5, 80);
    const double b = bubble_component(geometric, implied_deflators(geometric));
    EXPECT_GT(b, 0.0);
    EXPECT_NEAR(b, geometric_product(0.5, 0.5), 1e-14);
}

TEST(BubbleComponent, TailAbovePriceIsInconsistent)
{
    const auto path = gen_money(1.0, 10).with_tail(DeclaredConvergent{5.0});
    EXPECT_BK_ERROR(bubble_component(path, implied_deflators(path)),
                    ErrorCode::InconsistentClassification);
}

TEST(Tvc, Examples)
{
    const auto constant = constant_path(100, 5, 500);
    EXPECT_TRUE(tvc_holds(constant, implied_deflators(constant)));
    const auto money = gen_money(1.0, 500);
    EXPECT_FALSE(tvc_holds(money, implied_deflators(money)));
    const auto geometric = gen_convergent_yield(0.5, 0.5, 500);
    EXPECT_FALSE(tvc_holds(geometric, implied_deflators(geometric)));
}

TEST(Decompose, ConstantAsset)
{
    const auto d = decompose(constant_path(100, 5, 500));
    EXPECT_EQ(d.price, 100.0);
    EXPECT_LT(relative_error(d.fundamental, 100.0), 1e-12);
    EXPECT_EQ(d.bubble, 0.0);
    EXPECT_EQ(d.verdict, Classification::NoBubble);
    EXPECT_FALSE(d.diagnostics.boundary);
    ASSERT_EQ(d.diagnostics.checkpoints.size(), 3u);
    EXPECT_EQ(d.diagnostics.checkpoints[0].at, 125.0);
    EXPECT_EQ(d.diagnostics.checkpoints[1].at, 250.0);
    EXPECT_EQ(d.diagnostics.checkpoints[2].at, 500.0);
    EXPECT_NEAR(d.diagnostics.yield_partial_sum, 25.0, 1e-12);
    EXPECT_EQ(d.diagnostics.tail_class, TailClass::Divergent);
}

TEST(Decompose, Money)
{
    const auto d = decompose(gen_money(1.0, 50));
    EXPECT_EQ(d.price, 1.0);
    EXPECT_EQ(d.fundamental, 0.0);
    EXPECT_EQ(d.bubble, 1.0);
    EXPECT_EQ(d.verdict, Classification::Bubble);
}

TEST(Decompose, TinyConvergentBubbleIsBoundary)
{
    // The yield tail converges but the implied bubble is far below tolerance.
    const auto d = decompose(gen_convergent_yield(1e6, 0.9, 50));
    EXPECT_EQ(d.verdict, Classification::NoBubble);
    EXPECT_TRUE(d.diagnostics.boundary);
    EXPECT_EQ(d.diagnostics.tail_class, TailClass::Convergent);
    EXPECT_LE(d.bubble, kBubbleTolerance * d.price);
}

TEST(Decompose, RejectsInteriorZeroPrice)
{
    const DiscretePath path({1, 0, 0}, {1, 0.5}, ZeroDividends{});
    EXPECT_BK_ERROR(decompose(path), ErrorCode::NonPositivePrice);
}

TEST(Decompose, GuardRejectsDisagreement)
{
    Verdict divergent;
    divergent.classification = Classification::NoBubble;
    divergent.tail_class = TailClass::Divergent;
    EXPECT_BK_ERROR(finalize_decomposition(1.0, 0.5, 0.5, divergent, {}),
                    ErrorCode::InconsistentClassification);
}

TEST(Ensemble, Examples)
{
    const auto firm = decompose(gen_constant(1.0, 0.1, 20));
    const std::vector<Decomposition> three{firm, firm, firm};
    const auto sum = ensemble_decompose(three);
    EXPECT_NEAR(sum.price, 3.0, 1e-15);
    EXPECT_NEAR(sum.fundamental, 3.0, 1e-15);
    EXPECT_EQ(sum.bubble, 0.0);
    EXPECT_EQ(sum.verdict, Classification::NoBubble);
    EXPECT_EQ(sum.diagnostics.members, 3u);

    Decomposition partial;
    partial.price = 1.0;
    partial.fundamental = 0.9;
    partial.bubble = 0.1;
    partial.verdict = Classification::Bubble;
    Decomposition clean;
    clean.price = 1.0;
    clean.fundamental = 1.0;
    const std::vector<Decomposition> mixed{partial, clean};
    const auto agg = ensemble_decompose(mixed);
    EXPECT_DOUBLE_EQ(agg.bubble, 0.1);
    EXPECT_EQ(agg.verdict, Classification::Bubble);
}

TEST(Ensemble, Empty)
{
    EXPECT_BK_ERROR(ensemble_decompose({}), ErrorCode::EmptyEnsemble);
}

// --- properties over random paths -----------------------------------------

TEST(Properties, TelescopingIdentityAtEveryHorizon)
{
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 100; ++i) {
        const auto path = testing::random_path(rng, testing::log_uniform_length(rng, 10, 2000));
        const auto q = implied_deflators(path);
        for (std::size_t T = 1; T <= path.horizon(); ++T) {
            const double rebuilt = partial_value(path, q, T) + deflated_price(path, q, T);
            ASSERT_LE(relative_error(rebuilt, path.price(0)), 1e-12) << "path " << i << " T " << T;
        }
    }
}

TEST(Properties, PartialSumsMonotoneAndBounded)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const auto path = testing::random_path(rng, 300);
        const auto q = implied_deflators(path);
        double previous = 0.0;
        for (std::size_t T = 1; T <= path.horizon(); ++T) {
            const double v = partial_value(path, q, T);
            ASSERT_GE(v, previous);
            ASSERT_LE(v, path.price(0) * (1.0 + 1e-12));
            previous = v;
        }
    }
}

TEST(Properties, DecompositionAddsUp)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> scale(0.01, 2.0);
    std::uniform_real_distribution<double> ratio(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        auto path = testing::random_path(rng, 100);
        const TailModel tail = (i % 2 == 0) ? TailModel(GeometricYield{scale(rng), ratio(rng)})
                                            : TailModel(ConstantYield{scale(rng)});
        const auto d = decompose(path.with_tail(tail));
        EXPECT_GE(d.fundamental, 0.0);
        EXPECT_GE(d.bubble, 0.0);
        EXPECT_LE(std::fabs(d.price - d.fundamental - d.bubble), 1e-12 * d.price);
    }
}

TEST(Properties, ScaleInvariance)
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const auto base = testing::random_path(rng, 150).with_tail(GeometricYield{0.3, 0.8});
        const auto d0 = decompose(base);
        const auto q0 = implied_deflators(base);
        for (double lambda : {1e-3, 7.0, 1e4}) {
            std::vector<double> prices(base.prices().begin(), base.prices().end());
            std::vector<double> dividends(base.dividends().begin(), base.dividends().end());
            for (auto& p : prices) {
                p *= lambda;
            }
            for (auto& d : dividends) {
                d *= lambda;
            }
            const DiscretePath scaled(prices, dividends, base.tail());
            const auto q = implied_deflators(scaled);
            for (std::size_t t = 0; t <= base.horizon(); ++t) {
                ASSERT_NEAR(q.log_q(t), q0.log_q(t), 1e-11);
            }
            const auto d = decompose(scaled);
            EXPECT_LT(relative_error(d.fundamental, lambda * d0.fundamental), 1e-11);
            // The bubble is P_0 - V, so its error is measured in units of P_0.
            EXPECT_LE(std::fabs(d.bubble - lambda * d0.bubble), 1e-12 * d.price);
            EXPECT_EQ(d.verdict, d0.verdict);
        }
    }
}

TEST(Properties, PureBubbleExact)
{
    for (double p0 : {1e-6, 0.37, 1.0, 42.0, 1e6}) {
        const auto d = decompose(gen_money(p0, 1000));
        EXPECT_EQ(d.fundamental, 0.0);
        EXPECT_EQ(d.bubble, p0);
        EXPECT_EQ(d.verdict, Classification::Bubble);
    }
}

}  // namespace
}  // namespace bubblekit
