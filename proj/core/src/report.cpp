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

#include "bubblekit/report.hpp"

#include "bubblekit/error.hpp"
#include "format.hpp"
#include "json_util.hpp"

#include <sstream>

#ifndef BUBBLEKIT_VERSION
#define BUBBLEKIT_VERSION "0.0.0"
#endif

namespace bubblekit {

namespace {

using detail::format_number;
using detail::real_from_json;
using detail::real_to_json;
using nlohmann::json;

json tail_json(const std::optional<TailModel>& tail)
{
    if (!tail) {
        return nullptr;
    }
    return {{"kind", std::string(tail_kind(*tail))},
            {"params", detail::number_map_to_json(tail_params(*tail))}};
}

std::optional<TailModel> tail_from(const json& j)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return make_tail(j.at("kind").get<std::string>(), detail::number_map(j.at("params"), {}));
}

Classification classification_from(const std::string& s)
{
    if (s == "Bubble") {
        return Classification::Bubble;
    }
    if (s == "NoBubble") {
        return Classification::NoBubble;
    }
    throw Error(ErrorCode::ParseError, "unknown verdict '" + s + "'");
}

TailClass tail_class_from(const std::string& s)
{
    if (s == "Convergent") {
        return TailClass::Convergent;
    }
    if (s == "Divergent") {
        return TailClass::Divergent;
    }
    throw Error(ErrorCode::ParseError, "unknown tail class '" + s + "'");
}

AnalysisReport::Config config_from(const AnalysisOptions& options)
{
    AnalysisReport::Config config;
    config.tol = options.tol;
    config.format = options.format;
    config.jump_side = options.jump_side == PriceSide::Right ? "right" : "left";
    config.horizon = options.horizon;
    return config;
}

void copy_decomposition(const Decomposition& d, AnalysisReport& report)
{
    report.decomposition = {d.price, d.fundamental, d.bubble, d.verdict};
    auto& diag = report.diagnostics;
    diag.checkpoints = d.diagnostics.checkpoints;
    diag.tail_contribution = d.diagnostics.tail_contribution;
    diag.deflated_terminal_price = d.diagnostics.deflated_terminal_price;
    diag.yield_partial_sum = d.diagnostics.yield_partial_sum;
    diag.tail_class = d.diagnostics.tail_class;
    diag.boundary = d.diagnostics.boundary;
    diag.rationale = d.diagnostics.rationale;
}

}  // namespace

std::string_view version() noexcept
{
    return BUBBLEKIT_VERSION;
}

AnalysisReport analyze_discrete(const DiscretePath& path, const std::optional<Deflators>& supplied,
                                const AnalysisOptions& options)
{
    const auto decomposition = decompose(path);

    AnalysisReport report;
    report.version = std::string(version());
    report.config = config_from(options);
    report.input = {"discrete",  options.source, path.horizon() + 1,
                    static_cast<double>(path.horizon()), path.tail(), options.tail_origin};
    copy_decomposition(decomposition, report);
    report.diagnostics.max_arbitrage_residual =
        max_arbitrage_residual(path, supplied ? *supplied : implied_deflators(path));
    report.diagnostics.tail_fit = suggest_tail(path);
    return report;
}

AnalysisReport analyze_continuous(const ContinuousDocument& document,
                                  const AnalysisOptions& options)
{
    const auto& path = document.path;
    const auto decomposition = decompose_continuous(path, options.jump_side);

    AnalysisReport report;
    report.version = std::string(version());
    report.config = config_from(options);
    report.config.grid_step = path.grid_step();
    report.input = {"continuous", options.source, path.intervals() + 1, path.horizon(),
                    path.tail(), options.tail_origin};
    copy_decomposition(decomposition, report);
    report.diagnostics.exponential_identity =
        deflated_price_identity(path, path.horizon(), options.jump_side);
    if (document.scenario) {
        AnalysisReport::Scenario echo;
        echo.model = "miao-wang";
        echo.params = miao_wang_params(*document.scenario);
        echo.interpreted_component = document.scenario->interpreted_component;
        echo.rational_bubble = decomposition.bubble;
        report.scenario = std::move(echo);
    }
    return report;
}

std::string to_json(const AnalysisReport& report, int indent)
{
    json j;
    j["version"] = report.version;

    j["input"] = {{"kind", report.input.kind},
                  {"source", report.input.source},
                  {"path_length", report.input.path_length},
                  {"horizon", report.input.horizon},
                  {"tail", tail_json(report.input.tail)},
                  {"tail_origin", report.input.tail_origin}};

    j["decomposition"] = {{"price", report.decomposition.price},
                          {"fundamental", report.decomposition.fundamental},
                          {"bubble", report.decomposition.bubble},
                          {"verdict", std::string(to_string(report.decomposition.verdict))}};

    const auto& d = report.diagnostics;
    json diag;
    json checkpoints = json::array();
    for (const auto& c : d.checkpoints) {
        checkpoints.push_back({{"at", c.at},
                               {"partial_value", c.partial_value},
                               {"deflated_price", c.deflated_price}});
    }
    diag["checkpoints"] = checkpoints;
    diag["tail_contribution"] = d.tail_contribution;
    diag["deflated_terminal_price"] = d.deflated_terminal_price;
    diag["yield_partial_sum"] = d.yield_partial_sum;
    diag["tail_class"] = std::string(to_string(d.tail_class));
    diag["boundary"] = d.boundary;
    diag["rationale"] = d.rationale;
    if (d.max_arbitrage_residual) {
        diag["max_arbitrage_residual"] = real_to_json(*d.max_arbitrage_residual);
    }
    if (d.exponential_identity) {
        diag["exponential_identity"] = {{"lhs", d.exponential_identity->lhs},
                                        {"rhs", d.exponential_identity->rhs},
                                        {"relative_gap", d.exponential_identity->relative_gap()}};
    }
    if (d.tail_fit) {
        json fits = json::array();
        for (const auto& f : d.tail_fit->fits) {
            fits.push_back(
                {{"kind", f.kind}, {"intercept", f.intercept}, {"slope", f.slope}, {"rss", f.rss}});
        }
        diag["tail_fit"] = {{"model", tail_json(d.tail_fit->model)},
                            {"fits", fits},
                            {"window_start", d.tail_fit->window_start},
                            {"window_size", d.tail_fit->window_size},
                            {"note", d.tail_fit->note}};
    }
    j["diagnostics"] = diag;

    if (report.scenario) {
        j["scenario"] = {{"model", report.scenario->model},
                         {"params", detail::number_map_to_json(report.scenario->params)},
                         {"interpreted_component", report.scenario->interpreted_component},
                         {"rational_bubble", report.scenario->rational_bubble}};
    }

    json config = {{"tol", report.config.tol},
                   {"format", report.config.format},
                   {"jump_side", report.config.jump_side}};
    if (report.config.grid_step) {
        config["grid_step"] = *report.config.grid_step;
    }
    if (report.config.horizon) {
        config["horizon"] = *report.config.horizon;
    }
    j["config"] = config;

    return j.dump(indent) + "\n";
}

AnalysisReport report_from_json(std::string_view text)
{
    try {
        const auto j = json::parse(text);
        AnalysisReport r;
        r.version = j.at("version").get<std::string>();

        const auto& in = j.at("input");
        r.input.kind = in.at("kind").get<std::string>();
        r.input.source = in.at("source").get<std::string>();
        r.input.path_length = in.at("path_length").get<std::size_t>();
        r.input.horizon = in.at("horizon").get<double>();
        r.input.tail = tail_from(in.at("tail"));
        r.input.tail_origin = in.at("tail_origin").get<std::string>();

        const auto& dec = j.at("decomposition");
        r.decomposition.price = dec.at("price").get<double>();
        r.decomposition.fundamental = dec.at("fundamental").get<double>();
        r.decomposition.bubble = dec.at("bubble").get<double>();
        r.decomposition.verdict = classification_from(dec.at("verdict").get<std::string>());

        const auto& diag = j.at("diagnostics");
        auto& d = r.diagnostics;
        for (const auto& c : diag.at("checkpoints")) {
            d.checkpoints.push_back({c.at("at").get<double>(), c.at("partial_value").get<double>(),
                                     c.at("deflated_price").get<double>()});
        }
        d.tail_contribution = diag.at("tail_contribution").get<double>();
        d.deflated_terminal_price = diag.at("deflated_terminal_price").get<double>();
        d.yield_partial_sum = diag.at("yield_partial_sum").get<double>();
        d.tail_class = tail_class_from(diag.at("tail_class").get<std::string>());
        d.boundary = diag.at("boundary").get<bool>();
        d.rationale = diag.at("rationale").get<std::string>();
        if (diag.contains("max_arbitrage_residual")) {
            d.max_arbitrage_residual = real_from_json(diag.at("max_arbitrage_residual"));
        }
        if (diag.contains("exponential_identity")) {
            const auto& e = diag.at("exponential_identity");
            d.exponential_identity = IdentityCheck{e.at("lhs").get<double>(),
                                                   e.at("rhs").get<double>()};
        }
        if (diag.contains("tail_fit")) {
            const auto& tf = diag.at("tail_fit");
            TailSuggestion s;
            s.model = tail_from(tf.at("model"));
            for (const auto& f : tf.at("fits")) {
                s.fits.push_back({f.at("kind").get<std::string>(), f.at("intercept").get<double>(),
                                  f.at("slope").get<double>(), f.at("rss").get<double>()});
            }
            s.window_start = tf.at("window_start").get<std::size_t>();
            s.window_size = tf.at("window_size").get<std::size_t>();
            s.note = tf.at("note").get<std::string>();
            d.tail_fit = std::move(s);
        }

        if (j.contains("scenario")) {
            const auto& s = j.at("scenario");
            AnalysisReport::Scenario echo;
            echo.model = s.at("model").get<std::string>();
            echo.params = detail::number_map(s.at("params"), {});
            echo.interpreted_component = s.at("interpreted_component").get<double>();
            echo.rational_bubble = s.at("rational_bubble").get<double>();
            r.scenario = std::move(echo);
        }

        const auto& cfg = j.at("config");
        r.config.tol = cfg.at("tol").get<double>();
        r.config.format = cfg.at("format").get<std::string>();
        r.config.jump_side = cfg.at("jump_side").get<std::string>();
        if (cfg.contains("grid_step")) {
            r.config.grid_step = cfg.at("grid_step").get<double>();
        }
        if (cfg.contains("horizon")) {
            r.config.horizon = cfg.at("horizon").get<std::size_t>();
        }
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("analysis report: ") + e.what());
    }
}

std::string to_text(const AnalysisReport& report)
{
    std::ostringstream out;
    const auto& dec = report.decomposition;
    const auto& d = report.diagnostics;
    out << "input        " << report.input.kind << " path '" << report.input.source << "', "
        << report.input.path_length << " samples, horizon " << format_number(report.input.horizon)
        << '\n';
    out << "tail         " << (report.input.tail ? describe(*report.input.tail) : "(none)") << " ["
        << report.input.tail_origin << ", " << to_string(d.tail_class) << "]\n";
    out << "verdict      " << to_string(dec.verdict) << (d.boundary ? " (boundary)" : "") << '\n';
    out << "price        " << format_number(dec.price) << '\n';
    out << "fundamental  " << format_number(dec.fundamental) << '\n';
    out << "bubble       " << format_number(dec.bubble) << '\n';
    if (report.scenario) {
        out << "interpreted  " << format_number(report.scenario->interpreted_component)
            << "  (labelled a bubble by the model; rational bubble = "
            << format_number(report.scenario->rational_bubble) << ")\n";
    }
    for (const auto& c : d.checkpoints) {
        out << "checkpoint   t=" << format_number(c.at) << "  PV(dividends)="
            << format_number(c.partial_value) << "  qP=" << format_number(c.deflated_price) << '\n';
    }
    out << "tail PV      " << format_number(d.tail_contribution) << '\n';
    out << "yield sum    " << format_number(d.yield_partial_sum) << " over the sample\n";
    if (d.max_arbitrage_residual) {
        out << "no-arbitrage max residual " << format_number(*d.max_arbitrage_residual) << '\n';
    }
    if (d.exponential_identity) {
        out << "identity     lhs=" << format_number(d.exponential_identity->lhs)
            << " rhs=" << format_number(d.exponential_identity->rhs)
            << " gap=" << format_number(d.exponential_identity->relative_gap()) << '\n';
    }
    if (d.tail_fit) {
        out << "tail fit     "
            << (d.tail_fit->model ? describe(*d.tail_fit->model) : std::string("(none)")) << "  -- "
            << d.tail_fit->note << '\n';
        for (const auto& f : d.tail_fit->fits) {
            out << "             " << f.kind << " rss=" << format_number(f.rss)
                << " slope=" << format_number(f.slope) << '\n';
        }
    }
    out << "rationale    " << d.rationale << '\n';
    out << "version      " << report.version << '\n';
    return out.str();
}

}  // namespace bubblekit
