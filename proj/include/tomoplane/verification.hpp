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

// Self-check suites behind `tomo verify`. Each check records the measured
// deviation and the tolerance it was held to.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/pairing.hpp"
#include "tomoplane/parse.hpp"
#include "tomoplane/quadrature.hpp"
#include "tomoplane/state_models.hpp"
#include "tomoplane/symbols.hpp"
#include "tomoplane/tomography.hpp"

namespace tomoplane {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

class VerificationContext {
public:
    explicit VerificationContext(std::optional<double> tolerance_override = std::nullopt)
        : override_(tolerance_override) {}

    double tolerance(double nominal) const { return override_ ? *override_ : nominal; }

    void record(const std::string& suite, const std::string& name, double deviation, double nominal,
                std::string detail = {}) {
        const double tol = tolerance(nominal);
        results_.push_back({suite, name, std::isfinite(deviation) && deviation <= tol, deviation, tol, std::move(detail)});
    }

    void record_failure(const std::string& suite, const std::string& name, const std::string& detail) {
        results_.push_back({suite, name, false, 0.0, 0.0, detail});
    }

    const std::vector<CheckResult>& results() const noexcept { return results_; }

    bool all_passed() const {
        for (const auto& r : results_)
            if (!r.passed) return false;
        return true;
    }

private:
    std::optional<double> override_;
    std::vector<CheckResult> results_;
};

namespace verify_detail {

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

inline std::vector<StateSpec> fock_states(int top) {
    std::vector<StateSpec> out;
    for (int n = 0; n <= top; ++n) out.push_back(StateSpec::fock(n));
    return out;
}

inline std::vector<complex> alpha_set() { return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {-0.5, 2.0}}; }

inline std::vector<StateSpec> pairing_states() {
    std::vector<StateSpec> out = fock_states(4);
    out.push_back(StateSpec::coherent({1.0, 0.0}));
    out.push_back(StateSpec::coherent({1.0, 1.0}));
    out.push_back(StateSpec::superposition({1.0, 1.0}));
    return out;
}

}  // namespace verify_detail

inline void verify_symbols(VerificationContext& ctx) {
    const std::string suite = "symbols";
    const double pi = std::numbers::pi;

    Eigen::MatrixXd g2(3, 3);
    g2 << 3, 0, 1, 0, 1, 0, 1, 0, 3;
    g2 *= pi / 4.0;
    ctx.record(suite, "gram N=2 fixture", verify_detail::max_abs(gram_matrix(2).entries - g2), 1e-12);

    Eigen::MatrixXd g3(4, 4);
    g3 << 5, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 5;
    g3 *= pi / 8.0;
    ctx.record(suite, "gram N=3 fixture", verify_detail::max_abs(gram_matrix(3).entries - g3), 1e-12);

    using P = SymbolPolynomial;
    const std::vector<std::pair<int, std::vector<P>>> fixtures = {
        {1, {P({{{1, 0}, 1 / pi}}), P({{{0, 1}, 1 / pi}})}},
        {2,
         {P({{{2, 0}, 3 / (2 * pi)}, {{0, 2}, -1 / (2 * pi)}}), P({{{1, 1}, 4 / pi}}),
          P({{{2, 0}, -1 / (2 * pi)}, {{0, 2}, 3 / (2 * pi)}})}},
        {3,
         {P({{{3, 0}, 2 / pi}, {{1, 2}, -2 / pi}}), P({{{2, 1}, 10 / pi}, {{0, 3}, -2 / pi}}),
          P({{{1, 2}, 10 / pi}, {{3, 0}, -2 / pi}}), P({{{0, 3}, 2 / pi}, {{2, 1}, -2 / pi}})}},
    };
    for (const auto& [degree, expected] : fixtures) {
        const auto got = biorthogonal_symbols(degree);
        double dev = 0.0;
        for (std::size_t k = 0; k < expected.size(); ++k) {
            const P diff = got[k] + (-1.0) * expected[k];
            for (const auto& [key, c] : diff.coefficients()) dev = std::max(dev, std::abs(c));
        }
        ctx.record(suite, "symbols N=" + std::to_string(degree) + " fixture", dev, 1e-12);
    }

    double weighted = 0.0;
    for (int degree = 0; degree <= 8; ++degree) {
        const auto f = biorthogonal_symbols(degree);
        for (int k = 0; k <= degree; ++k)
            for (int s = 0; s <= degree; ++s) {
                const double v = weighted_product(f[k], SymbolPolynomial::monomial(degree - s, s), degree);
                weighted = std::max(weighted, std::abs(v - (k == s ? 1.0 : 0.0)));
            }
    }
    ctx.record(suite, "weighted biorthogonality N<=8", weighted, 1e-12);

    double circle = 0.0;
    for (int degree = 0; degree <= 6; ++degree) {
        const auto f = biorthogonal_symbols(degree);
        for (int s = 0; s <= degree; ++s) {
            const auto H = circle_restriction(f[s]);
            for (int k = 0; k <= degree; ++k) {
                const double v = integrate_periodic(
                    [&](double phi) { return std::pow(std::cos(phi), degree - k) * std::pow(std::sin(phi), k) * H(phi); },
                    2 * pi, 512);
                circle = std::max(circle, std::abs(v - (k == s ? 1.0 : 0.0)));
            }
        }
    }
    ctx.record(suite, "circle biorthogonality N<=6", circle, 1e-10);

    double checker = 0.0;
    for (int degree = 0; degree <= 8; ++degree) {
        const auto f = biorthogonal_symbols(degree);
        for (int k = 0; k <= degree; ++k)
            for (const auto& [key, c] : f[k].coefficients())
                if ((key.second - k) % 2 != 0 || key.first + key.second != degree) checker = std::max(checker, std::abs(c));
    }
    ctx.record(suite, "checkerboard sparsity N<=8", checker, 0.0);

    const auto number = observable_symbol(ObservableExpr::number());
    const SymbolPolynomial expected_number({{{2, 0}, 1 / (2 * pi)}, {{0, 2}, 1 / (2 * pi)}, {{0, 0}, -1 / (4 * pi)}});
    double ndev = 0.0;
    const SymbolPolynomial number_diff = number + (-1.0) * expected_number;
    for (const auto& [key, c] : number_diff.coefficients()) ndev = std::max(ndev, std::abs(c));
    ctx.record(suite, "number operator symbol", ndev, 1e-15);
}

inline void verify_tomography(VerificationContext& ctx) {
    const std::string suite = "tomography";
    const double pi = std::numbers::pi;

    for (const complex alpha : verify_detail::alpha_set()) {
        const StateSpec state = StateSpec::coherent(alpha);
        const Tomogram tomo(state);
        double dev_opt = 0.0;
        double dev_sym = 0.0;
        double dev_plan = 0.0;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const double X = -5.0 + 10.0 * (i + 0.5) / 20.0;
                const double phi = 2 * pi * j / 20.0;
                dev_opt = std::max(dev_opt, std::abs(tomo.optical(X, phi) - closed_form::coherent_optical(alpha, X, phi)));
                const double mu = 0.3 + 1.7 * i / 19.0;
                const double nu = -1.0 + 2.0 * j / 19.0;
                dev_sym = std::max(dev_sym, std::abs(tomo.symplectic(X, mu, nu) - closed_form::coherent_symplectic(alpha, X, mu, nu)));
                const double x = -3.0 + 6.0 * (i + 0.5) / 20.0;
                const double y = -3.0 + 6.0 * (j + 0.5) / 20.0;
                dev_plan = std::max(dev_plan, std::abs(tomo.planar(x, y) - closed_form::coherent_planar(alpha, x, y)));
            }
        const std::string tag = " alpha=" + format_complex(alpha);
        ctx.record(suite, "coherent optical closed form" + tag, dev_opt, 1e-10);
        ctx.record(suite, "coherent symplectic closed form" + tag, dev_sym, 1e-10);
        ctx.record(suite, "coherent planar closed form" + tag, dev_plan, 1e-10);
    }

    for (int n = 0; n <= 5; ++n) {
        const Tomogram tomo(StateSpec::fock(n));
        double dev = 0.0;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const double x = -3.0 + 6.0 * (i + 0.5) / 20.0;
                const double y = -3.0 + 6.0 * (j + 0.5) / 20.0;
                dev = std::max(dev, std::abs(tomo.planar(x, y) - closed_form::fock_planar(n, x, y)));
            }
        ctx.record(suite, "fock planar closed form n=" + std::to_string(n), dev, 1e-10);
    }

    std::vector<StateSpec> states = verify_detail::fock_states(5);
    for (const complex alpha : verify_detail::alpha_set()) states.push_back(StateSpec::coherent(alpha));
    for (const auto& state : states) {
        const Tomogram tomo(state);
        const double R = radial_cutoff_for(state);
        const auto line = composite_legendre(-R, R, 32, 16);
        const auto half = composite_legendre(0.0, R, 16, 16);
        const auto phis = periodic_rule(2 * pi, 256);
        double total = 0.0;
        double half_total = 0.0;
        double per_phi = 0.0;
        for (std::size_t j = 0; j < phis.size(); ++j) {
            const double phi = phis.nodes[j];
            const double inner = line.apply([&](double X) { return tomo.optical(X, phi); });
            total += phis.weights[j] * inner;
            half_total += phis.weights[j] * half.apply([&](double r) { return tomo.optical(r, phi); });
            if (j % 16 == 0) per_phi = std::max(per_phi, std::abs(inner - 1.0));
        }
        double symmetry = 0.0;
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                const double X = -4.0 + 8.0 * i / 31.0;
                const double phi = 2 * pi * j / 32.0;
                symmetry = std::max(symmetry, std::abs(tomo.optical(-X, phi) - tomo.optical(X, phi + pi)));
            }
        const std::string tag = " " + state.descriptor();
        ctx.record(suite, "optical normalization" + tag, std::abs(total / (2 * pi) - 1.0), 1e-8);
        ctx.record(suite, "per-phi normalization" + tag, per_phi, 1e-8);
        ctx.record(suite, "planar normalization" + tag, std::abs(half_total / pi - 1.0), 1e-8);
        ctx.record(suite, "reflection symmetry" + tag, symmetry, 1e-12);
    }

    std::vector<StateSpec> radon_states = verify_detail::fock_states(3);
    radon_states.push_back(StateSpec::coherent({1.0, 0.5}));
    for (const auto& state : radon_states) {
        const WignerEvaluator W(state);
        const Tomogram tomo(state);
        const double R = radial_cutoff_for(state);
        double dev = 0.0;
        try {
            for (int i = 0; i < 12; ++i)
                for (int j = 0; j < 8; ++j) {
                    const double X = -3.0 + 6.0 * i / 11.0;
                    const double phi = pi * j / 8.0;
                    const double radon = radon_line_integral(W, X, phi, R, {12, 16, 1e-7});
                    dev = std::max(dev, std::abs(radon - tomo.optical(X, phi)));
                }
            ctx.record(suite, "radon consistency " + state.descriptor(), dev, 1e-6);
        } catch (const Error& e) {
            ctx.record_failure(suite, "radon consistency " + state.descriptor(), e.what());
        }
    }
}

inline void verify_pairing(VerificationContext& ctx) {
    const std::string suite = "pairing";
    const auto states = verify_detail::pairing_states();
    std::vector<std::pair<int, int>> degrees;
    for (int N = 2; N <= 4; ++N)
        for (int n = 0; n <= N; ++n) degrees.emplace_back(N - n, n);
    std::vector<StateSpec> calibration_states = verify_detail::fock_states(3);
    calibration_states.push_back(StateSpec::coherent({1.0, 0.0}));
    calibration_states.push_back(StateSpec::coherent({1.0, 1.0}));
    const KappaCalibration cal = calibrate_kappa(calibration_states, degrees);
    ctx.record(suite, "kappa calibration", std::abs(cal.kappa - 2.0), 1e-6,
               "kappa=" + format_double(cal.kappa) + " spread=" + format_double(cal.spread));
    ctx.record(suite, "kappa spread", cal.spread, 1e-6);

    for (const auto& state : states) {
        const PairingEngine engine(state, PairingConfig{});
        double planar_dev = 0.0;
        double optical_dev = 0.0;
        for (int N = 0; N <= 4; ++N)
            for (int n = 0; n <= N; ++n) {
                const int m = N - n;
                const double trace = expectation_trace(state, symmetric_word_sum(m, n, state.dim()));
                planar_dev = std::max(planar_dev, std::abs(engine.planar(word_symbol(m, n)) - trace));
                optical_dev = std::max(optical_dev, std::abs(engine.optical(word_symbol(m, n)) - trace));
            }
        ctx.record(suite, "planar vs trace m+n<=4 " + state.descriptor(), planar_dev, 1e-6);
        ctx.record(suite, "optical vs trace m+n<=4 " + state.descriptor(), optical_dev, 1e-6);
    }

    const auto number = observable_symbol(ObservableExpr::number());
    for (int n = 0; n <= 5; ++n) {
        const double value = pair_planar(number, StateSpec::fock(n));
        ctx.record(suite, "<N> planar fock:" + std::to_string(n), std::abs(value - n), n == 0 ? 1e-8 : 1e-6);
    }
}

inline void verify_oracle(VerificationContext& ctx) {
    const std::string suite = "oracle";
    const int D = default_dimension;
    const FockOperator a = annihilation_op(D);
    ctx.record(suite, "ladder commutator", (a * a.adjoint() - a.adjoint() * a).max_deviation(FockOperator::identity(D), D - 2), 1e-12);
    const FockOperator q = position_op(D);
    const FockOperator p = momentum_op(D);
    ctx.record(suite, "canonical commutator",
               (q * p - p * q).max_deviation(complex(0.0, 1.0) * FockOperator::identity(D), D - 2), 1e-12);
    const FockOperator n_from_qp = 0.5 * (q * q + p * p - FockOperator::identity(D));
    ctx.record(suite, "number operator (q^2+p^2-1)/2", n_from_qp.max_deviation(number_op(D), D - 2), 1e-12);

    double herm = 0.0;
    double ordering = 0.0;
    for (int N = 0; N <= 5; ++N)
        for (int n = 0; n <= N; ++n) {
            const int m = N - n;
            const int interior = D - N;
            const auto S = symmetric_word_sum<long double>(m, n, D);
            const auto P = binomial_sandwich<long double>(m, n, D);
            herm = std::max({herm, S.hermiticity_defect(interior), P.hermiticity_defect(interior)});
            const long double ratio = std::pow(2.0L, n) / static_cast<long double>(binomial(N, n));
            ordering = std::max(ordering, P.max_deviation(ratio * S, interior));
        }
    ctx.record(suite, "hermiticity m+n<=5 (extended precision)", herm, 1e-12);
    ctx.record(suite, "ordering identity m+n<=5 (extended precision)", ordering, 1e-12);

    const FockOperator energy = symmetric_word_sum(2, 0, D) + symmetric_word_sum(0, 2, D);
    double level = 0.0;
    for (int n = 0; n <= 5; ++n)
        level = std::max(level, std::abs(expectation_trace(StateSpec::fock(n), energy) - (2.0 * n + 1.0)));
    ctx.record(suite, "<q^2+p^2> = 2n+1", level, 1e-8);
}

inline const std::vector<std::string>& verification_suites() {
    static const std::vector<std::string> names = {"symbols", "tomography", "pairing", "oracle"};
    return names;
}

/// Runs one suite by name, or every suite for "all". Returns false for an
/// unknown name.
inline bool run_verification(const std::string& suite, VerificationContext& ctx) {
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body(ctx);
        } catch (const std::exception& e) {
            ctx.record_failure(name, "suite aborted", e.what());
        }
    };
    if (suite == "symbols" || suite == "all") guarded("symbols", verify_symbols);
    if (suite == "tomography" || suite == "all") guarded("tomography", verify_tomography);
    if (suite == "pairing" || suite == "all") guarded("pairing", verify_pairing);
    if (suite == "oracle" || suite == "all") guarded("oracle", verify_oracle);
    return suite == "all" || suite == "symbols" || suite == "tomography" || suite == "pairing" || suite == "oracle";
}

}  // namespace tomoplane
