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


#include "bubblekit/cli.hpp"

#include "bubblekit/error.hpp"
#include "bubblekit/io.hpp"
#include "bubblekit/models.hpp"
#include "bubblekit/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace bubblekit::cli {

namespace {

using nlohmann::json;

struct Outcome {
    int code = kExitNoBubble;
    std::string out;
    std::string err;
};

// Severity order used when several files are analysed at once.
int rank(int code)
{
    switch (code) {
    case kExitInternal: return 3;
    case kExitInvalid: return 2;
    case kExitBubble: return 1;
    default: return 0;
    }
}

int exit_code_for(const Error& e)
{
    return e.code() == ErrorCode::InconsistentClassification ? kExitInternal : kExitInvalid;
}

double parse_real(std::string_view text, std::string_view what)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + ": '" + std::string(text) + "' is not a number");
    }
    return value;
}

double parse_tolerance(std::string_view text, std::string_view what)
{
    const double tol = parse_real(text, what);
    if (!std::isfinite(tol) || tol <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
    }
    return tol;
}

std::string read_stream(std::istream& in)
{
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string read_input(const std::string& source, std::istream& in)
{
    if (source == "-") {
        return read_stream(in);
    }
    std::ifstream file(source, std::ios::binary);
    if (!file) {
        throw Error(ErrorCode::InvalidArgument, "cannot open '" + source + "'");
    }
    return read_stream(file);
}

bool looks_like_json(std::string_view text)
{
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && text[pos] == '{';
}

std::size_t step_ratio(double coarse, double fine)
{
    const double ratio = coarse / fine;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw Error(ErrorCode::StepMismatch, "grid step must be a whole multiple of the path's");
    }
    return static_cast<std::size_t>(rounded);
}

// Keeps every m-th sample; jumps are unaffected.
ContinuousPath coarsen(const ContinuousPath& path, double grid_step)
{
    const std::size_t m = step_ratio(grid_step, path.grid_step());
    if (m == 1) {
        return path;
    }
    if (path.intervals() % m != 0) {
        throw Error(ErrorCode::StepMismatch, "horizon is not a whole number of coarse steps");
    }
    std::vector<double> prices;
    std::vector<double> density;
    const auto fine_density = path.dividends().density();
    for (std::size_t k = 0; k <= path.intervals(); k += m) {
        prices.push_back(path.prices()[k]);
        density.push_back(fine_density[k]);
    }
    std::vector<Jump> jumps(path.dividends().jumps().begin(), path.dividends().jumps().end());
    return ContinuousPath(grid_step, path.horizon(), std::move(prices),
                          CumulativeDividend(std::move(density), std::move(jumps)), path.tail());
}

ContinuousPath truncate(const ContinuousPath& path, std::size_t horizon)
{
    const double T = static_cast<double>(horizon);
    if (T > path.horizon() * (1.0 + 1e-12)) {
        throw Error(ErrorCode::OutOfRange, "--horizon exceeds the path horizon");
    }
    const std::size_t k = step_ratio(T, path.grid_step());
    const auto p = path.prices();
    const auto d = path.dividends().density();
    std::vector<Jump> jumps;
    for (const auto& j : path.dividends().jumps()) {
        if (j.time <= T) {
            jumps.push_back(j);
        }
    }
    return ContinuousPath(path.grid_step(), T, std::vector<double>(p.begin(), p.begin() + k + 1),
                          CumulativeDividend(std::vector<double>(d.begin(), d.begin() + k + 1),
                                             std::move(jumps)),
                          path.tail());
}

std::string describe_suggestion(const TailSuggestion& s)
{
    std::ostringstream out;
    out << "suggested tail: "
        << (s.model ? std::string(tail_kind(*s.model)) : std::string("(none)"));
    if (s.model) {
        const auto params = tail_params(*s.model);
        char sep = ':';
        for (const auto& [key, value] : params) {
            out << sep << value;
            sep = ',';
        }
    }
    out << "  (" << s.note << "; window " << s.window_start << ".." << s.window_start + s.window_size - 1
        << ")\n";
    for (const auto& f : s.fits) {
        out << "  fit " << f.kind << ": intercept=" << f.intercept << " slope=" << f.slope
            << " rss=" << f.rss << '\n';
    }
    return out.str();
}

struct AnalyzeRequest {
    std::optional<std::string> tail;
    bool suggest = false;
    bool accept = false;
    std::optional<std::size_t> horizon;
    std::optional<double> grid_step;
    double tol = kArbitrageTolerance;
    std::string format = "json";
    PriceSide side = PriceSide::Right;
    int indent = 2;
};

AnalysisOptions options_for(const AnalyzeRequest& req, const std::string& source)
{
    AnalysisOptions o;
    o.tol = req.tol;
    o.format = req.format;
    o.jump_side = req.side;
    o.source = source;
    o.horizon = req.horizon;
    return o;
}

std::string render(const AnalysisReport& report, const AnalyzeRequest& req)
{
    return req.format == "text" ? to_text(report) : to_json(report, req.indent);
}

AnalysisReport analyze_text(const std::string& source, const std::string& text,
                            const AnalyzeRequest& req, std::string& notes)
{
    auto options = options_for(req, source);

    if (looks_like_json(text)) {
        auto doc = parse_continuous_json(text);
        if (req.grid_step) {
            doc.path = coarsen(doc.path, *req.grid_step);
        }
        if (req.horizon) {
            doc.path = truncate(doc.path, *req.horizon);
        }
        if (req.tail) {
            const TailDefaults defaults{doc.path.prices().back(),
                                        doc.path.dividends().density().back()};
            doc.path = doc.path.with_tail(parse_tail_spec(*req.tail, defaults));
        } else if (doc.path.tail()) {
            options.tail_origin = "embedded";
        } else {
            throw Error(ErrorCode::MissingTail,
                        "continuous path has no embedded tail; declare one with --tail");
        }
        if (req.suggest) {
            notes += "tail suggestion is only available for discrete paths\n";
        }
        return analyze_continuous(doc, options);
    }

    if (req.grid_step) {
        throw Error(ErrorCode::InvalidArgument, "--grid-step applies to continuous paths only");
    }
    auto parsed = parse_path_csv(text, req.tol);
    DiscretePath path = std::move(parsed.path);
    auto deflators = std::move(parsed.deflators);
    if (req.horizon) {
        path = path.truncated(*req.horizon);
        if (deflators) {
            const auto logs = deflators->log_values();
            deflators = Deflators(std::vector<double>(logs.begin(), logs.begin() + *req.horizon + 1));
        }
    }

    const auto suggestion = suggest_tail(path);
    if (req.suggest) {
        notes += describe_suggestion(suggestion);
    }
    if (req.tail) {
        const TailDefaults defaults{path.prices().back(), path.dividends().back()};
        path = path.with_tail(parse_tail_spec(*req.tail, defaults));
    } else if (req.accept && suggestion.model) {
        path = path.with_tail(*suggestion.model);
        options.tail_origin = "suggested";
    } else {
        std::string hint = "declare one with --tail";
        if (suggestion.model) {
            hint += " or confirm the suggestion with --accept-suggestion";
        }
        throw Error(ErrorCode::MissingTail, "CSV paths carry no tail model; " + hint);
    }
    return analyze_discrete(path, deflators, options);
}

Outcome analyze_source(const std::string& source, const std::string& text,
                       const AnalyzeRequest& req)
{
    Outcome outcome;
    try {
        const auto report = analyze_text(source, text, req, outcome.err);
        outcome.out = render(report, req);
        outcome.code = report.decomposition.verdict == Classification::Bubble ? kExitBubble
                                                                              : kExitNoBubble;
    } catch (const Error& e) {
        outcome.err += "bubblekit: " + source + ": " + e.what() + '\n';
        outcome.code = exit_code_for(e);
    } catch (const std::exception& e) {
        outcome.err += "bubblekit: " + source + ": internal error: " + e.what() + '\n';
        outcome.code = kExitInternal;
    }
    return outcome;
}

int run_analyze(const std::vector<std::string>& files, AnalyzeRequest req, std::istream& in,
                std::ostream& out, std::ostream& err)
{
    const std::vector<std::string> sources = files.empty() ? std::vector<std::string>{"-"} : files;
    if (sources.size() > 1) {
        req.indent = -1;  // one report per line
    }

    std::vector<Outcome> outcomes(sources.size());
    std::vector<std::future<Outcome>> pending(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        std::string text;
        try {
            text = read_input(sources[i], in);
        } catch (const Error& e) {
            outcomes[i] = {kExitInvalid, "", "bubblekit: " + std::string(e.what()) + '\n'};
            continue;
        }
        if (sources.size() == 1) {
            outcomes[i] = analyze_source(sources[i], text, req);
        } else {
            pending[i] = std::async(std::launch::async, analyze_source, sources[i],
                                    std::move(text), req);
        }
    }

    int code = kExitNoBubble;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (pending[i].valid()) {
            outcomes[i] = pending[i].get();
        }
        err << outcomes[i].err;
        out << outcomes[i].out;
        if (req.format == "text" && i + 1 < sources.size() && !outcomes[i].out.empty()) {
            out << '\n';
        }
        if (rank(outcomes[i].code) > rank(code)) {
            code = outcomes[i].code;
        }
    }
    return code;
}

// --- generate --------------------------------------------------------------

const std::map<std::string, std::set<std::string>>& model_params()
{
    static const std::map<std::string, std::set<std::string>> table{
        {"money", {"P0", "horizon"}},
        {"constant", {"P", "D", "horizon"}},
        {"gordon", {"D0", "g", "R", "horizon"}},
        {"convergent-yield", {"alpha", "rho", "horizon"}},
        {"miao-wang",
         {"Q", "K", "B_mw", "D", "lambda", "horizon", "grid_step", "P_init", "d_init"}},
    };
    return table;
}

double required(const std::map<std::string, double>& params, const std::string& model,
                const char* key)
{
    const auto it = params.find(key);
    if (it == params.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "model '" + model + "' requires parameter '" + key + "'");
    }
    return it->second;
}

std::size_t periods(const std::map<std::string, double>& params)
{
    const auto it = params.find("horizon");
    if (it == params.end()) {
        return 100;
    }
    const double h = it->second;
    if (!(h >= 1.0) || h != std::floor(h) || h > 1e9) {
        throw Error(ErrorCode::InvalidArgument, "horizon must be a positive whole number");
    }
    return static_cast<std::size_t>(h);
}

std::string generate(const std::string& model, const std::map<std::string, double>& params,
                     bool with_q)
{
    const auto allowed = model_params().find(model);
    if (allowed == model_params().end()) {
        throw Error(ErrorCode::InvalidArgument, "unknown model '" + model + "'");
    }
    for (const auto& [key, value] : params) {
        if (allowed->second.count(key) == 0) {
            throw Error(ErrorCode::InvalidArgument,
                        "parameter '" + key + "' does not apply to model '" + model + "'");
        }
    }

    if (model == "miao-wang") {
        const auto scenario = miao_wang_from_params(params);
        return write_continuous_json(gen_miao_wang(scenario), scenario);
    }

    std::optional<DiscretePath> path;
    if (model == "money") {
        const auto it = params.find("P0");
        path = gen_money(it == params.end() ? 1.0 : it->second, periods(params));
    } else if (model == "constant") {
        path = gen_constant(required(params, model, "P"), required(params, model, "D"),
                            periods(params));
    } else if (model == "gordon") {
        path = gen_gordon(required(params, model, "D0"), required(params, model, "g"),
                          required(params, model, "R"), periods(params));
    } else {
        path = gen_convergent_yield(required(params, model, "alpha"),
                                    required(params, model, "rho"), periods(params));
    }
    return with_q ? write_path_csv(*path, implied_deflators(*path)) : write_path_csv(*path);
}

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag kGenerateFlags[] = {
    {"--P0", "P0", "initial price (money)"},
    {"--P", "P", "price level (constant)"},
    {"--D", "D", "dividend level (constant, miao-wang)"},
    {"--D0", "D0", "initial dividend (gordon)"},
    {"--g", "g", "gross dividend growth (gordon)"},
    {"--R", "R", "gross return (gordon)"},
    {"--alpha", "alpha", "yield scale (convergent-yield)"},
    {"--rho", "rho", "yield decay ratio (convergent-yield)"},
    {"--Q", "Q", "marginal Q (miao-wang)"},
    {"--K", "K", "capital stock (miao-wang)"},
    {"--Bmw", "B_mw", "interpreted component B (miao-wang)"},
    {"--lambda", "lambda", "convergence rate, 'inf' for a steady start (miao-wang)"},
    {"--P-init", "P_init", "initial price (miao-wang)"},
    {"--d-init", "d_init", "initial dividend density (miao-wang)"},
    {"--horizon", "horizon", "periods, or time units for miao-wang"},
    {"--grid-step", "grid_step", "grid step (miao-wang)"},
};

// --- check-identity --------------------------------------------------------

json identity_document(const std::string& text, std::optional<double> tol,
                       const AnalyzeRequest& req)
{
    json doc;
    if (looks_like_json(text)) {
        auto path = parse_continuous_json(text).path;
        if (req.grid_step) {
            path = coarsen(path, *req.grid_step);
        }
        if (req.horizon) {
            path = truncate(path, *req.horizon);
        }
        const double limit = tol.value_or(1e-6);
        const auto check = deflated_price_identity(path, path.horizon(), req.side);
        doc = {{"kind", "continuous"},
               {"grid_step", path.grid_step()},
               {"horizon", path.horizon()},
               {"lhs", check.lhs},
               {"rhs", check.rhs},
               {"relative_gap", check.relative_gap()},
               {"tolerance", limit},
               {"holds", check.relative_gap() <= limit}};
        // Same path on a twice-as-coarse grid: the gap ratio estimates the order.
        if (path.intervals() % 2 == 0 && path.intervals() >= 2) {
            const auto coarse = coarsen(path, 2.0 * path.grid_step());
            const auto c2 = deflated_price_identity(coarse, coarse.horizon(), req.side);
            doc["coarse_relative_gap"] = c2.relative_gap();
            if (check.relative_gap() > 0.0) {
                doc["refinement_ratio"] = c2.relative_gap() / check.relative_gap();
            }
        }
        return doc;
    }

    auto parsed = parse_path_csv(text, tol.value_or(kArbitrageTolerance));
    auto path = std::move(parsed.path);
    auto q = parsed.deflators ? std::move(*parsed.deflators) : implied_deflators(path);
    std::size_t T = path.horizon();
    if (req.horizon) {
        if (*req.horizon > T || *req.horizon == 0) {
            throw Error(ErrorCode::OutOfRange, "--horizon outside 1..path horizon");
        }
        T = *req.horizon;
    }
    const double limit = tol.value_or(kArbitrageTolerance);
    const double lhs = path.price(0);
    const double rhs = partial_value(path, q, T) + deflated_price(path, q, T);
    const double gap = lhs == 0.0 ? std::abs(rhs) : std::abs(lhs - rhs) / std::abs(lhs);
    doc = {{"kind", "discrete"},
           {"horizon", T},
           {"lhs", lhs},
           {"rhs", rhs},
           {"relative_gap", gap},
           {"max_arbitrage_residual", max_arbitrage_residual(path, q)},
           {"tolerance", limit},
           {"holds", gap <= limit}};
    return doc;
}

std::string identity_text(const json& doc)
{
    std::ostringstream out;
    out << doc.at("kind").get<std::string>() << " identity: lhs=" << doc.at("lhs").dump()
        << " rhs=" << doc.at("rhs").dump() << " relative_gap=" << doc.at("relative_gap").dump()
        << " tolerance=" << doc.at("tolerance").dump() << " -> "
        << (doc.at("holds").get<bool>() ? "holds" : "FAILS") << '\n';
    if (doc.contains("refinement_ratio")) {
        out << "gap on a 2x coarser grid: " << doc.at("coarse_relative_gap").dump()
            << " (ratio " << doc.at("refinement_ratio").dump() << ")\n";
    }
    return out.str();
}

}  // namespace

Environment Environment::from_process()
{
    Environment env;
    if (const char* tol = std::getenv("BUBBLEKIT_TOL"); tol != nullptr && *tol != '\0') {
        env.tolerance = tol;
    }
    return env;
}

int run_analysis(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                 std::ostream& err, const Environment& env)
{
    CLI::App app{"Rational-bubble decomposition of price/dividend paths", "bubblekit"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    std::optional<std::string> tol_flag;
    std::string format = "json";
    std::string jump_side = "right";
    std::optional<std::size_t> horizon;
    std::optional<double> grid_step;

    auto* analyze = app.add_subcommand("analyze", "Decompose price into fundamental and bubble");
    std::vector<std::string> files;
    std::optional<std::string> tail;
    bool suggest = false;
    bool accept = false;
    analyze->add_option("files", files, "CSV or JSON paths ('-' or none reads stdin)");
    analyze->add_option("--tail", tail, "tail model, e.g. constant-levels or power-yield:1,2");
    analyze->add_flag("--tail-suggest", suggest, "print a fitted tail suggestion to stderr");
    analyze->add_flag("--accept-suggestion", accept, "use the suggested tail when --tail is absent");

    auto* check = app.add_subcommand("check-identity",
                                     "Verify the present-value identity on a path");
    std::string check_file = "-";
    check->add_option("file", check_file, "CSV or JSON path ('-' reads stdin)");

    for (auto* sub : {analyze, check}) {
        sub->add_option("--horizon", horizon, "truncate the path at this horizon");
        sub->add_option("--tol", tol_flag, "tolerance (overrides BUBBLEKIT_TOL)");
        sub->add_option("--grid-step", grid_step, "resample a continuous path to this step");
        sub->add_option("--jump-side", jump_side, "price used at dividend jumps")
            ->check(CLI::IsMember({"right", "left"}));
    }
    analyze->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    check->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

    auto* gen = app.add_subcommand("generate", "Write a model path (CSV, or JSON for miao-wang)");
    std::string model;
    std::optional<std::string> scenario_file;
    bool with_q = false;
    std::map<std::string, std::string> raw_values;
    gen->add_option("model", model, "money | constant | gordon | convergent-yield | miao-wang");
    gen->add_option("--scenario", scenario_file, "JSON scenario document");
    gen->add_flag("--with-q", with_q, "append the implied state-price column");
    std::vector<std::pair<const Flag*, CLI::Option*>> gen_options;
    for (const auto& flag : kGenerateFlags) {
        gen_options.emplace_back(&flag, gen->add_option(flag.name, raw_values[flag.key], flag.help));
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitNoBubble : kExitInvalid;
    }

    try {
        std::optional<double> tol;
        if (tol_flag) {
            tol = parse_tolerance(*tol_flag, "--tol");
        } else if (env.tolerance) {
            tol = parse_tolerance(*env.tolerance, "BUBBLEKIT_TOL");
        }

        AnalyzeRequest req;
        req.tail = tail;
        req.suggest = suggest;
        req.accept = accept;
        req.horizon = horizon;
        req.grid_step = grid_step;
        req.tol = tol.value_or(kArbitrageTolerance);
        req.format = format;
        req.side = jump_side == "left" ? PriceSide::Left : PriceSide::Right;
        if (grid_step && !(*grid_step > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "--grid-step must be positive");
        }

        if (analyze->parsed()) {
            return run_analyze(files, req, in, out, err);
        }

        if (check->parsed()) {
            const auto doc = identity_document(read_input(check_file, in), tol, req);
            out << (format == "text" ? identity_text(doc) : doc.dump(2) + "\n");
            return doc.at("holds").get<bool>() ? kExitNoBubble : kExitInternal;
        }

        std::map<std::string, double> params;
        if (scenario_file) {
            auto doc = parse_scenario_json(read_input(*scenario_file, in));
            if (!model.empty() && model != doc.model) {
                throw Error(ErrorCode::InvalidArgument,
                            "model '" + model + "' conflicts with scenario model '" + doc.model + "'");
            }
            model = doc.model;
            params = std::move(doc.params);
        }
        if (model.empty()) {
            throw Error(ErrorCode::InvalidArgument, "generate needs a model name");
        }
        for (const auto& [flag, option] : gen_options) {
            if (option->count() > 0) {
                params[flag->key] = parse_real(raw_values[flag->key], flag->name);
            }
        }
        out << generate(model, params, with_q);
        return kExitNoBubble;
    } catch (const Error& e) {
        err << "bubblekit: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "bubblekit: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace bubblekit::cli
