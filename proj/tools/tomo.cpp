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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "tomo_commands.hpp"

int main(int argc, char** argv) {
    using namespace tomoplane::cli;

    CLI::App app{"Tomographic distributions on the plane: tomograms, symbols and observable averages"};
    app.require_subcommand(1);

    SymbolsOptions symbols;
    auto* symbols_cmd = app.add_subcommand("symbols", "Emit the biorthogonal symbol coefficients of one degree");
    symbols_cmd->add_option("--degree", symbols.degree, "Polynomial degree N (0..40)")->required();
    symbols_cmd->add_option("--format", symbols.format, "json or csv")->capture_default_str();

    GridOptions grid;
    auto* grid_cmd = app.add_subcommand("grid", "Sample a tomogram, planar distribution or Wigner function to CSV");
    grid_cmd->add_option("kind", grid.kind, "tomogram | planar | wigner")->required();
    grid_cmd->add_option("--state", grid.state, "fock:<n> | coherent:<re>+<im>i | super:<c0>,<c1>,...")->required();
    grid_cmd->add_option("--range", grid.range, "min:max:step for both axes");
    grid_cmd->add_option("--x", grid.x, "min:max:step for the first axis");
    grid_cmd->add_option("--y", grid.y, "min:max:step for the second axis (planar, wigner)");
    grid_cmd->add_option("--phi", grid.phi, "number of phi samples on [0, 2pi) (tomogram)")->capture_default_str();
    grid_cmd->add_option("--out", grid.out, "output CSV path (default stdout)");
    grid_cmd->add_option("--dim", grid.dim, "number-basis truncation D")->capture_default_str();

    ExpectOptions expect;
    auto* expect_cmd = app.add_subcommand("expect", "Average an observable by planar, optical or trace evaluation");
    expect_cmd->add_option("--state", expect.state, "state string")->required();
    expect_cmd->add_option("--observable", expect.observable, "e.g. N or 0.5*S(2,0)+0.5*S(0,2)-0.5*I")->required();
    expect_cmd->add_option("--method", expect.method, "planar | optical | trace | all")->capture_default_str();
    expect_cmd->add_option("--kappa", expect.kappa, "planar pairing constant")->capture_default_str();
    expect_cmd->add_option("--dim", expect.dim, "number-basis truncation D")->capture_default_str();
    expect_cmd->add_option("--tol", expect.tol, "radial panel-doubling tolerance")->capture_default_str();
    expect_cmd->add_option("--phi-points", expect.phi_points, "angular nodes")->capture_default_str();
    expect_cmd->add_option("--radial-panels", expect.radial_panels, "radial Gauss-Legendre panels")->capture_default_str();
    expect_cmd->add_option("--cutoff", expect.cutoff, "radial cutoff R (0 = automatic)")->capture_default_str();

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the built-in verification suites");
    verify_cmd->add_option("--suite", verify.suite, "all | symbols | tomography | pairing | oracle")->capture_default_str();
    verify_cmd->add_option("--tol", verify.tol, "override every check tolerance");
    verify_cmd->add_flag("--json", verify.json_output, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    if (*symbols_cmd) return run_symbols(symbols, std::cout, std::cerr);
    if (*grid_cmd) return run_grid(grid, std::cout, std::cerr);
    if (*expect_cmd) return run_expect(expect, std::cout, std::cerr);
    if (*verify_cmd) return run_verify(verify, std::cout, std::cerr);
    return exit_input_error;
}
