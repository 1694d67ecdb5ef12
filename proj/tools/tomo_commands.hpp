// Copyright 2026 The Tomoplane Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Subcommand implementations for the `tomo` CLI. Everything writes to the
// given streams so tests can drive the commands in-process.

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "json.hpp"

#include "tomoplane/errors.hpp"
#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/pairing.hpp"
#include "tomoplane/parse.hpp"
#include "tomoplane/symbols.hpp"
#include "tomoplane/tomography.hpp"
#include "tomoplane/verification.hpp"

namespace tomoplane::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_input_error = 2,
    exit_io_error = 3,
    exit_numerical_error = 4,
};

using json = nlohmann::json;

inline std::string monomial_key(int i, int j) { return "x^" + std::to_string(i) + " y^" + std::to_string(j); }

inline json symbols_json(int degree) {
    const auto& sys = biorthogonal_system(degree);
    json symbols = json::array();
    for (int k = 0; k <= degree; ++k) {
        json coeffs = json::object();
        for (const auto& [key, c] : sys.symbols[k].coefficients()) coeffs[monomial_key(key.first, key.second)] = c;
        symbols.push_back({{"k", k}, {"coeffs", coeffs}});
    }
    return {{"degree", degree}, {"symbols", symbols}};
}

inline std::string symbols_csv(int degree) {
    const auto& sys = biorthogonal_system(degree);
    std::string out = "k,i,j,value\n";
    for (int k = 0; k <= degree; ++k)
        for (const auto& [key, c] : sys.symbols[k].coefficients())
            out += std::to_string(k) + "," + std::to_string(key.first) + "," + std::to_string(key.second) + "," +
                   format_double(c) + "\n";
    return out;
}

struct SymbolsOptions {
    int degree = 2;
    std::string format = "json";
};

inline int run_symbols(const SymbolsOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.format != "json" && opt.format != "csv") {
        err << "error: unknown format '" << opt.format << "' (expected json or csv)\n";
        return exit_input_error;
    }
    try {
        if (opt.format == "json")
            out << symbols_json(opt.degree).dump() << "\n";
        else
            out << symbols_csv(opt.degree);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_ok;
}

/// "min:max:step".
inline AxisSpec parse_range(std::string_view text) {
    double bounds[3] = {0.0, 0.0, 0.0};
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
        if (k > 0) {
            if (pos >= text.size() || text[pos] != ':') throw ParseError(std::string(text), pos, "range must be min:max:step");
            ++pos;
        }
        const char* first = text.data() + pos;
        const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), bounds[k]);
        if (ec != std::errc() || ptr == first) throw ParseError(std::string(text), pos, "malformed range bound");
        pos += static_cast<std::size_t>(ptr - first);
    }
    if (pos != text.size()) throw ParseError(std::string(text), pos, "unexpected trailing characters");
    return AxisSpec::from_step(bounds[0], bounds[1], bounds[2]);
}

struct GridOptions {
    std::string kind = "planar";
    std::string state;
    std::optional<std::string> range;
    std::optional<std::string> x;
    std::optional<std::string> y;
    int phi = 64;
    std::string out;  // empty writes to the output stream
    int dim = default_dimension;
};

inline std::string grid_csv(const TomogramGrid& grid) {
    std::string out = "axis1,axis2,value\n";
    for (std::size_t i = 0; i < grid.rows(); ++i)
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const auto [u, v] = grid.coordinate(i, j);
            out += format_double(u) + "," + format_double(v) + "," + format_double(grid.at(i, j)) + "\n";
        }
    return out;
}

inline int run_grid(const GridOptions& opt, std::ostream& out, std::ostream& err) {
    TomogramGrid grid;
    try {
        const StateSpec state = parse_state(opt.state, opt.dim);
        if (opt.kind == "tomogram") {
            const AxisSpec xs = parse_range(opt.x.value_or(opt.range.value_or("-6:6:0.05")));
            if (opt.phi <= 0) throw Error(ErrorKind::invalid_grid, "--phi must be positive");
            grid = sample_grid(state, Representation::optical, xs, AxisSpec::periodic(opt.phi));
        } else if (opt.kind == "planar" || opt.kind == "wigner") {
            const std::string fallback = opt.range.value_or("-5:5:0.1");
            const AxisSpec xs = parse_range(opt.x.value_or(fallback));
            const AxisSpec ys = parse_range(opt.y.value_or(fallback));
            grid = sample_grid(state, opt.kind == "planar" ? Representation::planar : Representation::wigner, xs, ys);
        } else {
            err << "error: unknown grid kind '" << opt.kind << "' (expected tomogram, planar or wigner)\n";
            return exit_input_error;
        }
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    const std::string csv = grid_csv(grid);
    if (opt.out.empty()) {
        out << csv;
        return exit_ok;
    }
    std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot write '" << opt.out << "'\n";
        return exit_io_error;
    }
    file << csv;
    file.close();
    if (!file) {
        err << "error: write to '" << opt.out << "' failed\n";
        return exit_io_error;
    }
    return exit_ok;
}

struct ExpectOptions {
    std::string state;
    std::string observable;
    std::string method = "all";
    double kappa = 2.0;
    int dim = default_dimension;
    double tol = 1e-8;
    int phi_points = 256;
    int radial_panels = 16;
    double cutoff = 0.0;
};

inline int run_expect(const ExpectOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.method != "planar" && opt.method != "optical" && opt.method != "trace" && opt.method != "all") {
        err << "error: unknown method '" << opt.method << "'\n";
        return exit_input_error;
    }
    PairingConfig config;
    config.kappa = opt.kappa;
    config.tolerance = opt.tol;
    config.phi_points = opt.phi_points;
    config.radial_panels = opt.radial_panels;
    config.radial_cutoff = opt.cutoff;

    std::optional<StateSpec> state;
    ObservableExpr expr;
    try {
        config.validate();
        state = parse_state(opt.state, opt.dim);
        expr = parse_observable(opt.observable);
        if (opt.method == "trace" || opt.method == "all")
            if (4 * expr.max_degree() > opt.dim)
                throw Error(ErrorKind::degree_overflow, "observable degree too large for --dim " + std::to_string(opt.dim));
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    json result = {{"state", state->descriptor()}, {"observable", opt.observable}, {"method", opt.method}, {"kappa", opt.kappa}};
    try {
        std::optional<PairingEngine> engine;
        if (opt.method != "trace") engine.emplace(*state, config);
        std::optional<double> planar_value, optical_value, trace_value;
        if (opt.method == "planar" || opt.method == "all") planar_value = engine->planar(expr);
        if (opt.method == "optical" || opt.method == "all") optical_value = engine->optical(expr);
        if (opt.method == "trace" || opt.method == "all") trace_value = trace_expectation(*state, expr);
        for (const auto& v : {planar_value, optical_value, trace_value})
            if (v && !std::isfinite(*v)) throw IntegrationError("non-finite expectation value", *v, *v, opt.tol);
        if (planar_value) result["planar"] = *planar_value;
        if (optical_value) result["optical"] = *optical_value;
        if (trace_value) result["trace"] = *trace_value;
        if (opt.method == "all") {
            const double dp = std::abs(*planar_value - *trace_value);
            const double dopt = std::abs(*optical_value - *trace_value);
            result["deviations"] = {
                {"planar_abs", dp},
                {"planar_rel", relative_deviation(dp, *trace_value)},
                {"optical_abs", dopt},
                {"optical_rel", relative_deviation(dopt, *trace_value)},
            };
        }
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << "\n";
        result["error"] = std::string(to_string(e.kind()));
        result["fine"] = std::isfinite(e.fine()) ? json(e.fine()) : json(nullptr);
        result["coarse"] = std::isfinite(e.coarse()) ? json(e.coarse()) : json(nullptr);
        out << result.dump() << "\n";
        return exit_numerical_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    out << result.dump() << "\n";
    return exit_ok;
}

struct VerifyOptions {
    std::string suite = "all";
    std::optional<double> tol;
    bool json_output = false;
};

inline int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    VerificationContext ctx(opt.tol);
    if (!run_verification(opt.suite, ctx)) {
        err << "error: unknown suite '" << opt.suite << "'\n";
        return exit_input_error;
    }
    if (opt.json_output) {
        json checks = json::array();
        for (const auto& r : ctx.results())
            checks.push_back({{"suite", r.suite},
                              {"name", r.name},
                              {"passed", r.passed},
                              {"deviation", std::isfinite(r.deviation) ? json(r.deviation) : json(nullptr)},
                              {"tolerance", r.tolerance},
                              {"detail", r.detail}});
        out << json{{"suite", opt.suite}, {"passed", ctx.all_passed()}, {"checks", checks}}.dump() << "\n";
    } else {
        for (const auto& r : ctx.results()) {
            out << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << "  deviation=" << format_double(r.deviation)
                << " tol=" << format_double(r.tolerance);
            if (!r.detail.empty()) out << "  " << r.detail;
            out << "\n";
        }
        std::size_t failed = 0;
        for (const auto& r : ctx.results()) failed += r.passed ? 0 : 1;
        out << (failed == 0 ? "all " + std::to_string(ctx.results().size()) + " checks passed"
                            : std::to_string(failed) + " of " + std::to_string(ctx.results().size()) + " checks failed")
            << "\n";
    }
    return ctx.all_passed() ? exit_ok : exit_verification_failed;
}

}  // namespace tomoplane::cli
