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

#include "bubblekit/io.hpp"

#include "bubblekit/error.hpp"
#include "format.hpp"
#include "json_util.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

namespace bubblekit {

namespace {

using detail::format_number;
using nlohmann::json;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void parse_fail(const std::string& message, std::size_t line)
{
    throw Error(ErrorCode::ParseError, message + " (line " + std::to_string(line) + ")", line);
}

[[noreturn]] void invalid(const std::string& message, std::size_t line)
{
    throw Error(ErrorCode::ValidationError, message + " (line " + std::to_string(line) + ")",
                line);
}

double parse_real(std::string_view cell, std::string_view column, std::size_t line)
{
    cell = trim(cell);
    double value = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto result = std::from_chars(first, last, value, std::chars_format::general);
    if (cell.empty() || result.ec != std::errc{} || result.ptr != last) {
        parse_fail("column " + std::string(column) + ": '" + std::string(cell)
                       + "' is not a decimal number",
                   line);
    }
    if (!std::isfinite(value)) {
        invalid("column " + std::string(column) + " must be finite", line);
    }
    return value;
}

long long parse_integer(std::string_view cell, std::size_t line)
{
    cell = trim(cell);
    long long value = 0;
    const auto* last = cell.data() + cell.size();
    const auto result = std::from_chars(cell.data(), last, value);
    if (cell.empty() || result.ec != std::errc{} || result.ptr != last) {
        parse_fail("column t: '" + std::string(cell) + "' is not an integer", line);
    }
    return value;
}

json tail_to_json(const TailModel& tail)
{
    json params = json::object();
    for (const auto& [key, value] : tail_params(tail)) {
        params[key] = value;
    }
    return {{"kind", std::string(tail_kind(tail))}, {"params", params}};
}

TailModel tail_from_json(const json& j)
{
    std::map<std::string, double> params;
    if (j.contains("params")) {
        for (const auto& [key, value] : j.at("params").items()) {
            params[key] = value.get<double>();
        }
    }
    return make_tail(j.at("kind").get<std::string>(), params);
}

std::vector<double> split_numbers(std::string_view list, std::string_view spec)
{
    std::vector<double> out;
    for (auto piece : split(list, ',')) {
        piece = trim(piece);
        double value = 0.0;
        const auto* last = piece.data() + piece.size();
        const auto result = std::from_chars(piece.data(), last, value);
        if (piece.empty() || result.ec != std::errc{} || result.ptr != last) {
            throw Error(ErrorCode::TailUnsupported,
                        "bad number '" + std::string(piece) + "' in tail '" + std::string(spec)
                            + "'");
        }
        out.push_back(value);
    }
    return out;
}

}  // namespace

ParsedPath parse_path_csv(std::string_view text, double tol)
{
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    auto lines = split(text, '\n');
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        parse_fail("empty input", 1);
    }

    const auto header = split(trim(lines[0]), ',');
    std::vector<std::string_view> names;
    for (auto h : header) {
        names.push_back(trim(h));
    }
    const bool with_q = names.size() == 4 && names[3] == "q";
    if (names.size() < 3 || names[0] != "t" || names[1] != "P" || names[2] != "D"
        || (names.size() == 4 && !with_q) || names.size() > 4) {
        parse_fail("header must be 't,P,D' or 't,P,D,q'", 1);
    }

    std::vector<double> prices;
    std::vector<double> dividends;
    std::vector<double> q;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line = i + 1;
        const auto row = trim(lines[i]);
        if (row.empty()) {
            parse_fail("blank line inside data", line);
        }
        const auto cells = split(row, ',');
        if (cells.size() != names.size()) {
            parse_fail("expected " + std::to_string(names.size()) + " fields, got "
                           + std::to_string(cells.size()),
                       line);
        }
        const long long t = parse_integer(cells[0], line);
        if (t != static_cast<long long>(i - 1)) {
            invalid("t must run 0, 1, 2, ... without gaps (expected "
                        + std::to_string(i - 1) + ", got " + std::to_string(t) + ")",
                    line);
        }
        const double price = parse_real(cells[1], "P", line);
        if (price < 0.0) {
            invalid("negative price", line);
        }
        prices.push_back(price);

        const auto dividend_cell = trim(cells[2]);
        if (t == 0) {
            if (!dividend_cell.empty() && parse_real(dividend_cell, "D", line) != 0.0) {
                invalid("dividend at t=0 must be empty or 0 (prices are ex-dividend)", line);
            }
        } else {
            if (dividend_cell.empty()) {
                invalid("missing dividend", line);
            }
            const double dividend = parse_real(dividend_cell, "D", line);
            if (dividend < 0.0) {
                invalid("negative dividend", line);
            }
            dividends.push_back(dividend);
        }
        if (with_q) {
            const double deflator = parse_real(cells[3], "q", line);
            if (!(deflator > 0.0)) {
                invalid("state price q must be > 0", line);
            }
            q.push_back(deflator);
        }
    }
    if (dividends.empty()) {
        invalid("need at least the rows t=0 and t=1", lines.size());
    }

    std::optional<DiscretePath> path;
    try {
        path.emplace(std::move(prices), std::move(dividends));
    } catch (const Error& e) {
        const std::size_t line = e.where().value_or(0) + 2;
        invalid(e.what(), line);
    }

    ParsedPath out{std::move(*path), std::nullopt};
    if (with_q) {
        auto deflators = Deflators::from_linear(q);
        const double residual = max_arbitrage_residual(out.path, deflators);
        if (!(residual <= tol)) {
            throw Error(ErrorCode::ArbitrageError,
                        "supplied state prices violate q_t P_t = q_{t+1} (P_{t+1} + D_{t+1}) "
                        "(max relative residual "
                            + format_number(residual) + " > tolerance " + format_number(tol) + ")");
        }
        out.deflators = std::move(deflators);
    }
    return out;
}

std::string write_path_csv(const DiscretePath& path, const std::optional<Deflators>& deflators)
{
    std::string out = deflators ? "t,P,D,q\n" : "t,P,D\n";
    for (std::size_t t = 0; t <= path.horizon(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_number(path.price(t));
        out += ',';
        if (t > 0) {
            out += format_number(path.dividend(t));
        }
        if (deflators) {
            out += ',';
            out += format_number(deflators->q(t));
        }
        out += '\n';
    }
    return out;
}

ContinuousDocument parse_continuous_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    try {
        std::vector<Jump> jumps;
        if (doc.contains("jumps")) {
            for (const auto& j : doc.at("jumps")) {
                jumps.push_back({j.at("t").get<double>(), j.at("dF").get<double>()});
            }
        }
        std::optional<TailModel> tail;
        if (doc.contains("tail") && !doc.at("tail").is_null()) {
            tail = tail_from_json(doc.at("tail"));
        }
        ContinuousPath path(doc.at("grid_step").get<double>(), doc.at("horizon").get<double>(),
                            doc.at("prices").get<std::vector<double>>(),
                            CumulativeDividend(doc.at("density").get<std::vector<double>>(),
                                               std::move(jumps)),
                            std::move(tail));
        std::optional<MiaoWangScenario> scenario;
        if (doc.contains("scenario") && !doc.at("scenario").is_null()) {
            const auto& s = doc.at("scenario");
            const auto model = s.at("model").get<std::string>();
            if (model != "miao-wang") {
                throw Error(ErrorCode::ValidationError, "unknown scenario model '" + model + "'");
            }
            scenario = miao_wang_from_params(detail::number_map(s, {"model"}));
        }
        return {std::move(path), std::move(scenario)};
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("continuous path document: ") + e.what());
    }
}

std::string write_continuous_json(const ContinuousPath& path,
                                  const std::optional<MiaoWangScenario>& scenario)
{
    json doc;
    doc["grid_step"] = path.grid_step();
    doc["horizon"] = path.horizon();
    doc["prices"] = std::vector<double>(path.prices().begin(), path.prices().end());
    const auto density = path.dividends().density();
    doc["density"] = std::vector<double>(density.begin(), density.end());
    json jumps = json::array();
    for (const auto& jump : path.dividends().jumps()) {
        jumps.push_back({{"t", jump.time}, {"dF", jump.size}});
    }
    doc["jumps"] = jumps;
    doc["tail"] = path.tail() ? tail_to_json(*path.tail()) : json(nullptr);
    if (scenario) {
        json s = detail::number_map_to_json(miao_wang_params(*scenario));
        s["model"] = "miao-wang";
        doc["scenario"] = s;
    }
    return doc.dump() + "\n";
}

TailModel parse_tail_spec(std::string_view spec, const std::optional<TailDefaults>& defaults)
{
    spec = trim(spec);
    const auto colon = spec.find(':');
    std::string kind(spec.substr(0, colon));
    const std::vector<double> values =
        colon == std::string_view::npos ? std::vector<double>{}
                                        : split_numbers(spec.substr(colon + 1), spec);
    if (kind == "divergent") {
        kind = "declared-divergent";
    } else if (kind == "convergent") {
        kind = "declared-convergent";
    }

    auto need_defaults = [&]() -> const TailDefaults& {
        if (!defaults) {
            throw Error(ErrorCode::TailUnsupported,
                        "tail '" + kind + "' needs parameters when no path is available");
        }
        return *defaults;
    };
    auto arity = [&](std::size_t n) {
        if (values.size() != n) {
            throw Error(ErrorCode::TailUnsupported, "tail '" + kind + "' takes "
                                                        + std::to_string(n) + " parameter(s), got "
                                                        + std::to_string(values.size()));
        }
    };

    TailModel tail;
    if (kind == "constant-levels") {
        if (values.empty()) {
            const auto& d = need_defaults();
            tail = ConstantLevels{d.price, d.dividend};
        } else {
            arity(2);
            tail = ConstantLevels{values[0], values[1]};
        }
    } else if (kind == "constant-yield") {
        if (values.empty()) {
            const auto& d = need_defaults();
            tail = ConstantYield{d.price > 0.0 ? d.dividend / d.price : 0.0};
        } else {
            arity(1);
            tail = ConstantYield{values[0]};
        }
    } else if (kind == "geometric-yield") {
        arity(2);
        tail = GeometricYield{values[0], values[1]};
    } else if (kind == "power-yield") {
        arity(2);
        tail = PowerYield{values[0], values[1]};
    } else if (kind == "zero-dividends") {
        arity(0);
        tail = ZeroDividends{};
    } else if (kind == "declared-divergent") {
        arity(0);
        tail = DeclaredDivergent{};
    } else if (kind == "declared-convergent") {
        arity(1);
        tail = DeclaredConvergent{values[0]};
    } else {
        throw Error(ErrorCode::TailUnsupported, "unknown tail kind '" + kind + "'");
    }
    validate(tail);
    return tail;
}

ScenarioDocument parse_scenario_json(std::string_view text)
{
    try {
        const auto doc = json::parse(text);
        ScenarioDocument out;
        out.model = doc.at("model").get<std::string>();
        out.params = detail::number_map(doc, {"model"});
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("scenario document: ") + e.what());
    }
}

MiaoWangScenario miao_wang_from_params(const std::map<std::string, double>& params)
{
    auto required = [&](const char* key) {
        const auto it = params.find(key);
        if (it == params.end()) {
            throw Error(ErrorCode::InvalidArgument,
                        std::string("miao-wang scenario requires '") + key + "'");
        }
        return it->second;
    };
    auto optional = [&](const char* key) -> std::optional<double> {
        const auto it = params.find(key);
        return it == params.end() ? std::nullopt : std::optional<double>(it->second);
    };
    MiaoWangScenario s;
    s.marginal_q = required("Q");
    s.capital = required("K");
    s.interpreted_component = required("B_mw");
    s.dividend = required("D");
    s.convergence_rate = optional("lambda").value_or(s.convergence_rate);
    s.horizon = optional("horizon").value_or(s.horizon);
    s.grid_step = optional("grid_step").value_or(s.grid_step);
    s.initial_price = optional("P_init");
    s.initial_dividend = optional("d_init");
    s.validate();
    return s;
}

std::map<std::string, double> miao_wang_params(const MiaoWangScenario& scenario)
{
    std::map<std::string, double> out{
        {"Q", scenario.marginal_q},
        {"K", scenario.capital},
        {"B_mw", scenario.interpreted_component},
        {"D", scenario.dividend},
        {"lambda", scenario.convergence_rate},
        {"horizon", scenario.horizon},
        {"grid_step", scenario.grid_step},
    };
    if (scenario.initial_price) {
        out["P_init"] = *scenario.initial_price;
    }
    if (scenario.initial_dividend) {
        out["d_init"] = *scenario.initial_dividend;
    }
    return out;
}

}  // namespace bubblekit
