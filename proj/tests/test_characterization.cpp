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
#include "bubblekit/models.hpp"
#include "bubblekit/series_core.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace bubblekit {
namespace {

// P = 1 with D_t = a t^-p: the yield follows the power law exactly.
DiscretePath power_path(double a, double p, std::size_t horizon)
{
    std::vector<double> dividends(horizon);
    for (std::size_t t = 1; t <= horizon; ++t) {
        dividends[t - 1] = a * std::pow(static_cast<double>(t), -p);
    }
    return DiscretePath(std::vector<double>(horizon + 1, 1.0), dividends, PowerYield{a, p});
}

DiscretePath scaled(const DiscretePath& path, double lambda)
{
    std::vector<double> prices(path.prices().begin(), path.prices().end());
    std::vector<double> dividends(path.dividends().begin(), path.dividends().end());
    for (auto& p : prices) {
        p *= lambda;
    }
    for (auto& d : dividends) {
        d *= lambda;
    }
    std::optional<TailModel> tail = path.tail();
    if (tail) {
        if (auto* levels = std::get_if<ConstantLevels>(&*tail)) {
            levels->price *= lambda;
            levels->dividend *= lambda;
        }
    }
    return DiscretePath(prices, dividends, tail);
}

TEST(YieldSeries, Examples)
{
    const auto constant = dividend_yield_series(gen_constant(100, 5, 10));
    ASSERT_EQ(constant.values.size(), 10u);
    for (double y : constant.values) {
        EXPECT_DOUBLE_EQ(y, 0.05);
    }
    ASSERT_TRUE(constant.tail.has_value());

    for (double y : dividend_yield_series(gen_money(2.0, 10)).values) {
        EXPECT_EQ(y, 0.0);
    }

    try {
        dividend_yield_series(DiscretePath({1, 1, 1, 0, 1}, {0.1, 0.1, 0.5, 0.1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositivePrice);
        EXPECT_EQ(e.where(), std::optional<std::size_t>(3));
    }
}

TEST(Montrucchio, Examples)
{
    const auto constant = montrucchio_discrete(gen_constant(100, 5, 500));
    EXPECT_EQ(constant.classification, Classification::NoBubble);
    EXPECT_EQ(constant.tail_class, TailClass::Divergent);
    EXPECT_NE(constant.rationale.find("constant-levels"), std::string::npos);

    const auto money = montrucchio_discrete(gen_money(1.0, 500));
    EXPECT_EQ(money.classification, Classification::Bubble);
    EXPECT_EQ(money.partial_sum, 0.0);

    const auto path = gen_convergent_yield(0.5, 0.5, 10'000);
    EXPECT_EQ(montrucchio_discrete(path).classification, Classification::Bubble);
    const long double log_qp = testing::log_deflated_price(
        [](std::size_t) { return 1.0; },
        [](std::size_t t) { return 0.5 * std::pow(0.5, static_cast<double>(t)); }, 10'000);
    EXPECT_GT(std::exp(log_qp), 1e-9L);
    EXPECT_GT(bubble_component(path, implied_deflators(path)), 0.0);
}

TEST(Montrucchio, MissingTail)
{
    EXPECT_BK_ERROR(montrucchio_discrete(DiscretePath({1, 1}, {0.1})), ErrorCode::MissingTail);
}

TEST(Montrucchio, ZeroYieldsInsideSampleAreHarmless)
{
    const DiscretePath path({1, 1, 1, 1, 1}, {0.2, 0, 0, 0.2}, ConstantYield{0.2});
    const auto v = montrucchio_discrete(path);
    EXPECT_EQ(v.classification, Classification::NoBubble);
    EXPECT_DOUBLE_EQ(v.partial_sum, 0.4);
}

TEST(Montrucchio, PartialSumNeverDecides)
{
    // A huge sampled sum with a convergent tail still reads Bubble, and a
    // tiny one with a divergent tail reads NoBubble.
    const DiscretePath heavy(std::vector<double>(101, 1.0), std::vector<double>(100, 5.0),
                             GeometricYield{1.0, 0.5});
    EXPECT_EQ(montrucchio_discrete(heavy).classification, Classification::Bubble);
    const DiscretePath light(std::vector<double>(101, 1.0), std::vector<double>(100, 1e-12),
                             ConstantYield{1e-12});
    EXPECT_EQ(montrucchio_discrete(light).classification, Classification::NoBubble);
}

TEST(Properties, ClassifierAgreesWithBubbleComponent)
{
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        DiscretePath path = gen_money(1.0, 1);
        switch (i % 5) {
        case 0: path = gen_constant(0.1 + 100 * u(rng), 0.01 + 5 * u(rng), 200); break;
        case 1: path = gen_gordon(0.5 + u(rng), 1.0 + 0.03 * u(rng), 1.04 + 0.05 * u(rng), 200); break;
        case 2: path = gen_convergent_yield(0.01 + 2 * u(rng), 0.05 + 0.9 * u(rng), 200); break;
        case 3: path = gen_money(1e-3 + 10 * u(rng), 200); break;
        default: path = power_path(0.1 + 0.5 * u(rng), 1.5 + u(rng), 200); break;
        }
        const auto verdict = montrucchio_discrete(path);
        const double bubble = bubble_component(path, implied_deflators(path));
        EXPECT_EQ(verdict.classification == Classification::Bubble,
                  bubble > kBubbleTolerance * path.price(0))
            << describe(*path.tail()) << " bubble " << bubble;
        ++checked;
    }
    EXPECT_EQ(checked, 200);
}

TEST(Properties, YieldInvariance)
{
    const DiscretePath paths[] = {gen_constant(100, 5, 50), gen_money(3, 50),
                                  gen_convergent_yield(0.4, 0.7, 50), power_path(1, 1, 50),
                                  gen_gordon(1, 1.02, 1.05, 50)};
    for (const auto& path : paths) {
        for (double lambda : {1e-4, 0.5, 3.0, 1e5}) {
            EXPECT_EQ(montrucchio_discrete(scaled(path, lambda)).classification,
                      montrucchio_discrete(path).classification);
        }
    }
}

TEST(Properties, MoreEvidenceNeverFlipsTheVerdict)
{
    for (std::size_t horizon = 1; horizon <= 400; horizon += 7) {
        EXPECT_EQ(montrucchio_discrete(gen_convergent_yield(0.3, 0.9, horizon)).classification,
                  Classification::Bubble);
        EXPECT_EQ(montrucchio_discrete(gen_constant(10, 0.3, horizon)).classification,
                  Classification::NoBubble);
        EXPECT_EQ(montrucchio_discrete(power_path(1, 1, horizon)).classification,
                  Classification::NoBubble);
        EXPECT_EQ(montrucchio_discrete(power_path(1, 2, horizon)).classification,
                  Classification::Bubble);
    }
}

TEST(Properties, YieldConvergingToPositiveConstantMeansNoBubble)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    for (double c : {1e-4, 0.01, 0.3}) {
        std::vector<double> prices(301);
        std::vector<double> dividends(300);
        for (std::size_t t = 0; t <= 300; ++t) {
            prices[t] = std::exp(noise(rng));
        }
        for (std::size_t t = 1; t <= 300; ++t) {
            const double y = c * (1.0 + 0.9 * noise(rng) * std::exp(-static_cast<double>(t) / 20));
            dividends[t - 1] = y * prices[t];
        }
        const DiscretePath path(prices, dividends, ConstantYield{c});
        EXPECT_EQ(montrucchio_discrete(path).classification, Classification::NoBubble);
        EXPECT_EQ(decompose(path).verdict, Classification::NoBubble);
    }
}

TEST(SuggestTail, ConstantYield)
{
    const auto s = suggest_tail(gen_constant(100, 5, 100));
    ASSERT_TRUE(s.model.has_value());
    EXPECT_NEAR(std::get<ConstantYield>(*s.model).yield, 0.05, 1e-12);
    EXPECT_EQ(s.window_start, 81u);
    EXPECT_EQ(s.window_size, 20u);
    EXPECT_EQ(s.fits.size(), 3u);
}

TEST(SuggestTail, Geometric)
{
    const auto s = suggest_tail(gen_convergent_yield(0.5, 0.8, 100));
    ASSERT_TRUE(s.model.has_value());
    const auto& g = std::get<GeometricYield>(*s.model);
    EXPECT_NEAR(g.scale, 0.5, 1e-9);
    EXPECT_NEAR(g.ratio, 0.8, 1e-12);
    EXPECT_LT(s.fits[1].rss, 1e-20);
}

TEST(SuggestTail, Power)
{
    const auto s = suggest_tail(power_path(2.0, 1.5, 500));
    ASSERT_TRUE(s.model.has_value());
    const auto& p = std::get<PowerYield>(*s.model);
    EXPECT_NEAR(p.scale, 2.0, 1e-9);
    EXPECT_NEAR(p.exponent, 1.5, 1e-12);
}

TEST(SuggestTail, RisingZeroAndSparse)
{
    std::vector<double> dividends(50);
    for (std::size_t t = 1; t <= 50; ++t) {
        dividends[t - 1] = 0.01 * static_cast<double>(t);
    }
    const auto rising = suggest_tail(DiscretePath(std::vector<double>(51, 1.0), dividends));
    ASSERT_TRUE(rising.model.has_value());
    EXPECT_TRUE(std::holds_alternative<DeclaredDivergent>(*rising.model));

    const auto money = suggest_tail(gen_money(1, 50));
    ASSERT_TRUE(money.model.has_value());
    EXPECT_TRUE(std::holds_alternative<ZeroDividends>(*money.model));

    std::vector<double> sparse(50, 0.0);
    sparse[49] = 1.0;
    EXPECT_FALSE(suggest_tail(DiscretePath(std::vector<double>(51, 1.0), sparse)).model);
}

}  // namespace
}  // namespace bubblekit
