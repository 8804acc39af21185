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

/// \file   report.hpp
///
/// \brief  Machine-readable analysis reports.
///
///         JSON layout (keys are stable and emitted in sorted order):
///
///             {"input": {...}, "decomposition": {"price", "fundamental", "bubble",
///              "verdict"}, "diagnostics": {...}, "scenario": {...}?,
///              "version": "...", "config": {...}}
///
///         Numbers use the shortest representation that round-trips, so
///         to_json(report_from_json(to_json(r))) == to_json(r) byte for byte.
///
#ifndef BUBBLEKIT_REPORT_HPP
#define BUBBLEKIT_REPORT_HPP

#include "bubblekit/characterization.hpp"
#include "bubblekit/continuous_time.hpp"
#include "bubblekit/io.hpp"
#include "bubblekit/series_core.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bubblekit {

std::string_view version() noexcept;

struct AnalysisReport {
    struct Input {
        std::string kind;  ///< "discrete" or "continuous"
        std::string source;
        std::size_t path_length = 0;  ///< number of price samples
        double horizon = 0.0;         ///< periods or time units
        std::optional<TailModel> tail;
        std::string tail_origin;  ///< "declared", "embedded" or "suggested"
    };
    struct Summary {
        double price = 0.0;
        double fundamental = 0.0;
        double bubble = 0.0;
        Classification verdict = Classification::NoBubble;
    };
    struct Diagnostics {
        std::vector<Checkpoint> checkpoints;
        double tail_contribution = 0.0;
        double deflated_terminal_price = 0.0;
        double yield_partial_sum = 0.0;
        TailClass tail_class = TailClass::Divergent;
        bool boundary = false;
        std::string rationale;
        std::optional<double> max_arbitrage_residual;    ///< discrete paths
        std::optional<IdentityCheck> exponential_identity;  ///< continuous paths
        std::optional<TailSuggestion> tail_fit;          ///< discrete paths
    };
    struct Scenario {
        std::string model;
        std::map<std::string, double> params;
        double interpreted_component = 0.0;
        double rational_bubble = 0.0;
    };
    struct Config {
        double tol = kArbitrageTolerance;
        std::string format = "json";
        std::string jump_side = "right";
        std::optional<double> grid_step;
        std::optional<std::size_t> horizon;
    };

    Input input;
    Summary decomposition;
    Diagnostics diagnostics;
    std::optional<Scenario> scenario;
    std::string version;
    Config config;
};

struct AnalysisOptions {
    double tol = kArbitrageTolerance;
    std::string format = "json";
    PriceSide jump_side = PriceSide::Right;
    std::string source = "-";
    std::string tail_origin = "declared";
    std::optional<std::size_t> horizon;  ///< truncation already applied, echoed only
};

/// Runs decompose() plus the diagnostics. `supplied` deflators, when given,
/// are the ones whose no-arbitrage residual is reported.
AnalysisReport analyze_discrete(const DiscretePath& path, const std::optional<Deflators>& supplied,
                                const AnalysisOptions& options);

AnalysisReport analyze_continuous(const ContinuousDocument& document,
                                  const AnalysisOptions& options);

std::string to_json(const AnalysisReport& report, int indent = 2);

/// Throws Error(ParseError) on malformed documents.
AnalysisReport report_from_json(std::string_view text);

std::string to_text(const AnalysisReport& report);

}  // namespace bubblekit

#endif  // BUBBLEKIT_REPORT_HPP
