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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "tomo_commands.hpp"
#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/pairing.hpp"
#include "tomoplane/quadrature.hpp"
#include "tomoplane/state_models.hpp"
#include "tomoplane/symbols.hpp"
#include "tomoplane/tomography.hpp"

using namespace tomoplane;

namespace {

constexpr double pi = std::numbers::pi;

// Worst observed deviation against the criterion's tolerance.
struct Tally {
    double worst = 0.0;
    double tolerance;
    int checks = 0;
    std::string note;

    explicit Tally(double tol) : tolerance(tol) {}
    void add(double got, double want) { observe(std::abs(got - want)); }
    void observe(double deviation) {
        ++checks;
        if (!(deviation <= worst)) worst = std::isnan(deviation) ? INFINITY : deviation;
    }
    bool passed() const { return checks > 0 && worst <= tolerance; }
};

struct Criterion {
    int id;
    std::string title;
    std::function<void(std::vector<Tally>&)> body;
};

const complex coherent_set[] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {-0.5, 2.0}};

double gaussian_line(double shift, double scale2) {
    return std::exp(-shift * shift / scale2) / std::sqrt(pi * scale2);
}

double fock_line(int n, double X) {
    double norm = 1.0;
    for (int k = 1; k <= n; ++k) norm *= 2.0 * k;
    const double h = hermite(n, X);
    return h * h * std::exp(-X * X) / (norm * std::sqrt(pi));
}

std::vector<StateSpec> normalization_states() {
    std::vector<StateSpec> states;
    for (int n = 0; n <= 5; ++n) states.push_back(StateSpec::fock(n));
    for (const complex a : coherent_set) states.push_back(StateSpec::coherent(a));
    return states;
}

std::vector<StateSpec> oracle_states() {
    return {StateSpec::fock(0),
            StateSpec::fock(1),
            StateSpec::fock(2),
            StateSpec::fock(3),
            StateSpec::fock(4),
            StateSpec::coherent({1.0, 0.0}),
            StateSpec::coherent({1.0, 1.0}),
            StateSpec::superposition({1.0, 1.0})};
}

struct Run {
    int code = -1;
    std::string out;
};

Run run_binary(const std::string& args) {
    const std::string command = std::string(TOMO_BINARY) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void reference_fixtures(std::vector<Tally>& out) {
    Tally t(1e-12);
    const double g2[3][3] = {{3, 0, 1}, {0, 1, 0}, {1, 0, 3}};
    const double g3[4][4] = {{5, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 5}};
    const auto gram2 = gram_matrix(2).entries;
    const auto gram3 = gram_matrix(3).entries;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.add(gram2(i, j), pi / 4.0 * g2[i][j]);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.add(gram3(i, j), pi / 8.0 * g3[i][j]);

    using Terms = std::map<SymbolPolynomial::Key, double>;
    const double c = 2.0 / pi;
    const std::vector<std::vector<Terms>> printed = {
        {{{{1, 0}, 1.0 / pi}}, {{{0, 1}, 1.0 / pi}}},
        {{{{2, 0}, 3.0 / (2 * pi)}, {{0, 2}, -1.0 / (2 * pi)}},
         {{{1, 1}, 4.0 / pi}},
         {{{0, 2}, 3.0 / (2 * pi)}, {{2, 0}, -1.0 / (2 * pi)}}},
        {{{{3, 0}, c}, {{1, 2}, -c}},
         {{{2, 1}, 5 * c}, {{0, 3}, -c}},
         {{{1, 2}, 5 * c}, {{3, 0}, -c}},
         {{{0, 3}, c}, {{2, 1}, -c}}},
    };
    for (int N = 1; N <= 3; ++N) {
        const auto& symbols = biorthogonal_system(N).symbols;
        for (int k = 0; k <= N; ++k) {
            const auto& want = printed[N - 1][k];
            for (int i = 0; i <= N; ++i) {
                const auto it = want.find({N - i, i});
                t.add(symbols[k].coefficient(N - i, i), it == want.end() ? 0.0 : it->second);
            }
        }
    }
    out.push_back(t);
}

void biorthogonality(std::vector<Tally>& out) {
    Tally weighted(1e-12);
    weighted.note = "weighted, N<=8";
    for (int N = 0; N <= 8; ++N)
        for (int k = 0; k <= N; ++k)
            for (int s = 0; s <= N; ++s)
                weighted.add(weighted_product(biorthogonal_system(N).symbols[k], SymbolPolynomial::monomial(N - s, s), N),
                             k == s ? 1.0 : 0.0);
    Tally circle(1e-10);
    circle.note = "circle, N<=6";
    for (int N = 0; N <= 6; ++N)
        for (int k = 0; k <= N; ++k) {
            const auto H = circle_restriction(biorthogonal_system(N).symbols[k]);
            for (int s = 0; s <= N; ++s)
                circle.add(integrate_periodic(
                               [&](double t) { return std::pow(std::cos(t), N - s) * std::pow(std::sin(t), s) * H(t); },
                               2 * pi, 512),
                           k == s ? 1.0 : 0.0);
        }
    out.push_back(weighted);
    out.push_back(circle);
}

void closed_forms(std::vector<Tally>& out) {
    Tally t(1e-10);
    for (const complex a : coherent_set) {
        const Tomogram tomo(StateSpec::coherent(a));
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const double X = -4.0 + 8.0 * i / 19.0;
                const double phi = 2 * pi * j / 20.0;
                const double shift = X - std::sqrt(2.0) * (a.real() * std::cos(phi) + a.imag() * std::sin(phi));
                t.add(tomo.optical(X, phi), gaussian_line(shift, 1.0));

                const double lambda = 0.4 + 1.6 * j / 19.0;
                const double mu = lambda * std::cos(phi + 0.1), nu = lambda * std::sin(phi + 0.1);
                const double s_shift = X - std::sqrt(2.0) * a.real() * mu - std::sqrt(2.0) * a.imag() * nu;
                t.add(tomo.symplectic(X, mu, nu), gaussian_line(s_shift, mu * mu + nu * nu));

                const double x = -3.0 + 6.0 * (i + 0.5) / 20.0;
                const double y = -3.0 + 6.0 * (j + 0.3) / 20.0;
                const double r2 = x * x + y * y;
                const double p_shift = r2 - std::sqrt(2.0) * (a.real() * x + a.imag() * y);
                t.add(tomo.planar(x, y), gaussian_line(p_shift, r2));
                if (a == complex(0.0, 0.0)) {
                    t.add(tomo.planar(x, y), std::exp(-r2) / std::sqrt(pi * r2));
                    t.add(tomo.symplectic(X, mu, nu), std::exp(-X * X / (mu * mu + nu * nu)) / std::sqrt(pi * (mu * mu + nu * nu)));
                }
            }
    }
    for (int n = 0; n <= 5; ++n) {
        const Tomogram tomo(StateSpec::fock(n));
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const double x = -3.0 + 6.0 * (i + 0.5) / 20.0;
                const double y = -3.0 + 6.0 * (j + 0.3) / 20.0;
                const double r = std::hypot(x, y);
                t.add(tomo.planar(x, y), fock_line(n, r) / r);
                const double mu = 0.5 + x * x, nu = y;
                const double s = std::sqrt(mu * mu + nu * nu);
                t.add(tomo.symplectic(x, mu, nu), fock_line(n, x / s) / s);
            }
    }
    out.push_back(t);
}

void normalizations(std::vector<Tally>& out) {
    Tally optical_norm(1e-8), planar_norm(1e-8), symmetry(1e-12);
    optical_norm.note = "(1/2pi) int w";
    planar_norm.note = "(1/pi) int Omega";
    symmetry.note = "w(-X,phi)=w(X,phi+pi)";
    for (const auto& state : normalization_states()) {
        const Tomogram tomo(state);
        const double R = 8.0 + 2.0 * state.extent();
        const auto line = composite_legendre(-R, R, 32, 16);
        const auto half = composite_legendre(0.0, R, 16, 16);
        const double total = integrate_periodic([&](double phi) { return line.apply([&](double X) { return tomo.optical(X, phi); }); },
                                                2 * pi, 256);
        optical_norm.add(total / (2 * pi), 1.0);
        const double polar = integrate_periodic([&](double phi) { return half.apply([&](double r) { return tomo.optical(r, phi); }); },
                                                2 * pi, 256);
        planar_norm.add(polar / pi, 1.0);
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                const double X = -5.0 + 10.0 * i / 31.0;
                const double phi = 2 * pi * j / 32.0;
                symmetry.add(tomo.optical(-X, phi), tomo.optical(X, phi + pi));
            }
    }
    out.push_back(optical_norm);
    out.push_back(planar_norm);
    out.push_back(symmetry);
}

void radon_consistency(std::vector<Tally>& out) {
    Tally radon(1e-6), marginals(1e-6), norm(1e-6);
    radon.note = "12x8 Radon";
    marginals.note = "q and p marginals";
    norm.note = "int W";
    std::vector<StateSpec> states;
    for (int n = 0; n <= 3; ++n) states.push_back(StateSpec::fock(n));
    states.push_back(StateSpec::coherent({1.0, 0.5}));
    const auto line = composite_legendre(-9.0, 9.0, 12, 16);
    const auto plane = composite_legendre(-9.0, 9.0, 6, 12);
    for (const auto& state : states) {
        const Tomogram tomo(state);
        const WignerEvaluator W(state);
        const WavefunctionEvaluator psi(state);
        const auto field = [&](double q, double p) { return W(q, p); };
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 8; ++j) {
                const double X = -3.3 + 6.6 * i / 11.0;
                const double phi = pi * j / 8.0;
                radon.add(radon_line_integral(field, X, phi, 9.0, {12, 16, 1e-7}), tomo.optical(X, phi));
            }
        for (double x : {-1.7, -0.4, 0.0, 0.9, 2.1}) {
            marginals.add(line.apply([&](double p) { return W(x, p); }), std::norm(psi(x)));
            marginals.add(line.apply([&](double q) { return W(q, x); }), std::norm(psi.momentum(x)));
        }
        double total = 0.0;
        for (std::size_t i = 0; i < plane.size(); ++i)
            for (std::size_t j = 0; j < plane.size(); ++j)
                total += plane.weights[i] * plane.weights[j] * W(plane.nodes[i], plane.nodes[j]);
        norm.add(total, 1.0);
    }
    out.push_back(radon);
    out.push_back(marginals);
    out.push_back(norm);
}

void oracle_equivalence(std::vector<Tally>& out) {
    Tally planar(1e-6), optical(1e-6), kappa(1e-6), spread(1e-6);
    planar.note = "planar vs trace";
    optical.note = "optical vs trace";
    kappa.note = "kappa";
    spread.note = "spread";
    for (const auto& state : oracle_states()) {
        const PairingEngine engine(state, {});
        for (int N = 0; N <= 4; ++N)
            for (int n = 0; n <= N; ++n) {
                const auto expr = ObservableExpr::word(N - n, n);
                const double trace = expectation_trace(state, symmetric_word_sum(N - n, n, state.dim()));
                planar.add(engine.planar(expr), trace);
                optical.add(engine.optical(expr), trace);
            }
    }
    std::vector<StateSpec> cal_states;
    for (int n = 0; n <= 3; ++n) cal_states.push_back(StateSpec::fock(n));
    cal_states.push_back(StateSpec::coherent({1.0, 0.0}));
    cal_states.push_back(StateSpec::coherent({1.0, 1.0}));
    std::vector<std::pair<int, int>> degrees;
    for (int N = 2; N <= 4; ++N)
        for (int n = 0; n <= N; ++n) degrees.emplace_back(N - n, n);
    const auto cal = calibrate_kappa(cal_states, degrees);
    kappa.add(cal.kappa, 2.0);
    spread.observe(cal.spread);
    kappa.note = "kappa=" + format_double(cal.kappa) + " from " + std::to_string(cal.pairs_used) + " pairs";
    out.push_back(planar);
    out.push_back(optical);
    out.push_back(kappa);
    out.push_back(spread);
}

void number_operator(std::vector<Tally>& out) {
    Tally excited(1e-6), vacuum(1e-8);
    excited.note = "n=1..5";
    vacuum.note = "n=0";
    const auto fN = observable_symbol(ObservableExpr::number());
    vacuum.add(pair_planar(fN, StateSpec::fock(0)), 0.0);
    for (int n = 1; n <= 5; ++n) excited.add(pair_planar(fN, StateSpec::fock(n)), n);
    out.push_back(excited);
    out.push_back(vacuum);
}

void ordering_identity(std::vector<Tally>& out) {
    // Independent of the library recursion: every word enumerated directly.
    constexpr int D = 64;
    using Op = BasicFockOperator<long double>;
    const auto q = position_op<long double>(D);
    const auto p = momentum_op<long double>(D);
    Tally t(1e-12);
    for (int N = 0; N <= 5; ++N)
        for (int n = 0; n <= N; ++n) {
            const int m = N - n;
            auto words = Op::zero(D);
            for (unsigned mask = 0; mask < (1u << N); ++mask) {
                if (std::popcount(mask) != n) continue;
                auto w = Op::identity(D);
                for (int k = 0; k < N; ++k) w = w * ((mask >> k) & 1u ? p : q);
                words = words + w;
            }
            const long double ratio = std::pow(2.0L, n) / static_cast<long double>(binomial(N, n));
            const auto lhs = binomial_sandwich<long double>(m, n, D);
            t.observe(static_cast<double>(lhs.max_deviation(ratio * words, D - N)));
            t.observe(static_cast<double>(symmetric_word_sum<long double>(m, n, D).max_deviation(words, D - N)));
        }
    out.push_back(t);
}

void cli_determinism(std::vector<Tally>& out) {
    Tally repeat(0.0), roundtrip(0.0);
    repeat.note = "byte-identical reruns";
    roundtrip.note = "symbols JSON round-trip";
    const char* invocations[] = {
        "symbols --degree 0",
        "symbols --degree 3",
        "symbols --degree 6 --format csv",
        "grid planar --state fock:0 --range -5:5:0.1",
        "grid tomogram --state coherent:1+0i --x -6:6:0.05 --phi 64",
        "grid wigner --state super:1,1i --range -2:2:0.25",
        "grid planar --state coherent:-0.5+2i --x -4:4:0.2 --y -1:5:0.2",
        "expect --state fock:3 --observable N --method all",
        "expect --state coherent:0+0i --observable 'S(1,0)' --method planar",
        "expect --state coherent:1+1i --observable 'S(1,1)' --method all --kappa 1",
        "expect --state super:1,0,1i --observable '2*S(2,1)-0.5*I' --method optical",
        "expect --state fock:2 --observable 'S(0,2)' --method trace",
        "verify --suite all --tol 1e-2",
        "verify --suite symbols --json",
    };
    for (const char* args : invocations) {
        const auto a = run_binary(args);
        const auto b = run_binary(args);
        const bool ok = a.code == 0 && b.code == 0 && !a.out.empty() && a.out == b.out;
        repeat.observe(ok ? 0.0 : 1.0);
        if (!ok) repeat.note += std::string(" [differs: ") + args + "]";
    }
    for (int degree : {0, 1, 2, 3, 5, 8, 12}) {
        const auto r = run_binary("symbols --degree " + std::to_string(degree));
        if (r.code != 0 || r.out.empty() || r.out.back() != '\n') {
            roundtrip.observe(1.0);
            continue;
        }
        const std::string text = r.out.substr(0, r.out.size() - 1);
        roundtrip.observe(cli::json::parse(text).dump() == text ? 0.0 : 1.0);
    }
    out.push_back(repeat);
    out.push_back(roundtrip);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Gram matrices and printed symbols", reference_fixtures},
        {2, "biorthogonality (weighted and circle)", biorthogonality},
        {3, "tomogram closed forms", closed_forms},
        {4, "normalizations and symmetry", normalizations},
        {5, "Radon consistency and Wigner marginals", radon_consistency},
        {6, "pairing against trace oracle; kappa calibration", oracle_equivalence},
        {7, "number operator averages", number_operator},
        {8, "operator-ordering identity", ordering_identity},
        {9, "CLI determinism and JSON round-trip", cli_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::vector<Tally> parts;
        std::string detail;
        bool passed = true;
        try {
            c.body(parts);
            for (const auto& t : parts) {
                passed = passed && t.passed();
                char tol[32];
                if (t.tolerance == 0.0)
                    std::snprintf(tol, sizeof tol, "exact");
                else
                    std::snprintf(tol, sizeof tol, "tol %.0e", t.tolerance);
                char buf[200];
                std::snprintf(buf, sizeof buf, "%s%s%d checks, max dev %.3g (%s)", detail.empty() ? "" : "; ",
                              t.note.empty() ? "" : (t.note + ": ").c_str(), t.checks, t.worst, tol);
                detail += buf;
            }
            passed = passed && !parts.empty();
        } catch (const std::exception& e) {
            passed = false;
            detail = std::string("exception: ") + e.what();
        }
        failures += passed ? 0 : 1;
        std::printf("%s AC%d %s: %s\n", passed ? "PASS" : "FAIL", c.id, c.title.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
