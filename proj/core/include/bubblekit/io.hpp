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

/// \file   io.hpp
///
/// \brief  Path ingestion and serialisation.
///
///         Discrete paths travel as CSV with header `t,P,D` and an optional
///         fourth column `q` of externally supplied state prices. Rows start at
///         t = 0, where the dividend cell is empty or 0 (ex-dividend
///         convention). Continuous paths travel as JSON:
///
///             {"grid_step": h, "horizon": T, "prices": [...], "density": [...],
///              "jumps": [{"t": .., "dF": ..}], "tail": {"kind": .., "params": {..}},
///              "scenario": {..}}            // scenario optional
///
#ifndef BUBBLEKIT_IO_HPP
#define BUBBLEKIT_IO_HPP

#include "bubblekit/continuous_time.hpp"
#include "bubblekit/discrete_path.hpp"
#include "bubblekit/models.hpp"
#include "bubblekit/series_core.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace bubblekit {

struct ParsedPath {
    DiscretePath path;
    std::optional<Deflators> deflators;  ///< present when the CSV had a q column
};

///
/// \brief  Reads a `t,P,D[,q]` CSV (UTF-8, LF or CRLF, '.' decimals).
///
/// Errors carry the 1-based input line in `where()`: ParseError for malformed
/// text, ValidationError for values that break a path invariant, and
/// ArbitrageError when a supplied q column violates the no-arbitrage
/// recursion at tolerance `tol`.
///
ParsedPath parse_path_csv(std::string_view text, double tol = kArbitrageTolerance);

std::string write_path_csv(const DiscretePath& path,
                           const std::optional<Deflators>& deflators = std::nullopt);

struct ContinuousDocument {
    ContinuousPath path;
    std::optional<MiaoWangScenario> scenario;
};

ContinuousDocument parse_continuous_json(std::string_view text);

std::string write_continuous_json(const ContinuousPath& path,
                                  const std::optional<MiaoWangScenario>& scenario = std::nullopt);

/// Last observed levels, used to fill `constant-levels` / `constant-yield`
/// tails given without parameters.
struct TailDefaults {
    double price;
    double dividend;
};

///
/// \brief  Parses a command-line tail declaration `kind[:p1,p2]`.
///
/// Kinds: constant-levels[:P,D], constant-yield[:c], geometric-yield:a,rho,
/// power-yield:a,p, zero-dividends, divergent, convergent:tail_sum (the
/// `declared-` prefixed names are accepted too).
///
TailModel parse_tail_spec(std::string_view spec,
                          const std::optional<TailDefaults>& defaults = std::nullopt);

/// Generator request: `{"model": "constant", "P": 100, "D": 5, ...}`.
struct ScenarioDocument {
    std::string model;
    std::map<std::string, double> params;
};

ScenarioDocument parse_scenario_json(std::string_view text);

/// Builds a Miao-Wang scenario from named parameters Q, K, B_mw, D and the
/// optional lambda, horizon, grid_step, P_init, d_init.
MiaoWangScenario miao_wang_from_params(const std::map<std::string, double>& params);

std::map<std::string, double> miao_wang_params(const MiaoWangScenario& scenario);

}  // namespace bubblekit

#endif  // BUBBLEKIT_IO_HPP
