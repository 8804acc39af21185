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
#include "bubblekit/report.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <limits>

namespace bubblekit {
namespace {

MiaoWangScenario mw_scenario()
{
    MiaoWangScenario s;
    s.marginal_q = 1.0;
    s.capital = 2.0;
    s.interpreted_component = 0.5;
    s.dividend = 0.2;
    s.horizon = 4.0;
    s.grid_step = 0.01;
    s.convergence_rate = 0.5;
    return s;
}

AnalysisReport discrete_report(const DiscretePath& path)
{
    AnalysisOptions options;
    options.source = "in.csv";
    return analyze_discrete(path, implied_deflators(path), options);
}

AnalysisReport continuous_report()
{
    const auto s = mw_scenario();
    ContinuousDocument doc{gen_miao_wang(s), s};
    AnalysisOptions options;
    options.tail_origin = "embedded";
    return analyze_continuous(doc, options);
}

TEST(Report, DiscreteJsonRoundTripIsByteIdentical)
{
    const DiscretePath paths[] = {gen_constant(100, 5, 50), gen_convergent_yield(0.5, 0.5, 50),
                                  gen_money(3, 50), gen_gordon(1, 1.02, 1.05, 50)};
    for (const auto& path : paths) {
        const auto report = discrete_report(path);
        const auto text = to_json(report);
        EXPECT_EQ(to_json(report_from_json(text)), text);
        EXPECT_EQ(to_json(report_from_json(to_json(report, -1))), text);
    }
}

TEST(Report, ContinuousJsonRoundTripKeepsScenario)
{
    const auto report = continuous_report();
    const auto text = to_json(report);
    const auto back = report_from_json(text);
    ASSERT_TRUE(back.scenario);
    EXPECT_EQ(back.scenario->model, "miao-wang");
    EXPECT_EQ(back.scenario->interpreted_component, 0.5);
    EXPECT_EQ(back.scenario->rational_bubble, 0.0);
    ASSERT_TRUE(back.diagnostics.exponential_identity);
    EXPECT_EQ(to_json(back), text);
}

TEST(Report, IsDeterministic)
{
    EXPECT_EQ(to_json(continuous_report()), to_json(continuous_report()));
    const auto path = gen_convergent_yield(0.3, 0.7, 200);
    EXPECT_EQ(to_json(discrete_report(path)), to_json(discrete_report(path)));
    EXPECT_EQ(to_text(discrete_report(path)), to_text(discrete_report(path)));
}

TEST(Report, AgreesWithDecompose)
{
    for (const auto& path : {gen_constant(1, 0.5, 30), gen_money(1, 30),
                             gen_convergent_yield(1, 0.5, 30)}) {
        const auto d = decompose(path);
        const auto r = discrete_report(path);
        EXPECT_EQ(r.decomposition.verdict, d.verdict);
        EXPECT_EQ(r.decomposition.price, d.price);
        EXPECT_EQ(r.decomposition.fundamental, d.fundamental);
        EXPECT_EQ(r.decomposition.bubble, d.bubble);
        EXPECT_EQ(r.input.path_length, path.horizon() + 1);
        ASSERT_TRUE(r.diagnostics.max_arbitrage_residual);
        EXPECT_LE(*r.diagnostics.max_arbitrage_residual, 1e-12);
        EXPECT_EQ(r.version, std::string(version()));
    }
}

TEST(Report, TextMentionsVerdictAndScenario)
{
    const auto money = to_text(discrete_report(gen_money(2, 20)));
    EXPECT_NE(money.find("verdict      Bubble"), std::string::npos) << money;
    EXPECT_NE(money.find("price        2\n"), std::string::npos) << money;
    EXPECT_EQ(money.find("-0"), std::string::npos) << money;

    const auto mw = to_text(continuous_report());
    EXPECT_NE(mw.find("verdict      NoBubble"), std::string::npos) << mw;
    EXPECT_NE(mw.find("interpreted  0.5"), std::string::npos) << mw;
    EXPECT_NE(mw.find("rational bubble = 0"), std::string::npos) << mw;
}

TEST(Report, MalformedDocuments)
{
    EXPECT_BK_ERROR(report_from_json("not json"), ErrorCode::ParseError);
    EXPECT_BK_ERROR(report_from_json("{}"), ErrorCode::ParseError);
    auto text = to_json(discrete_report(gen_money(1, 5)));
    const auto pos = text.find("\"Bubble\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 8, "\"Maybe\"");
    EXPECT_BK_ERROR(report_from_json(text), ErrorCode::ParseError);
}

}  // namespace
}  // namespace bubblekit
