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

// Coordinate wavefunctions and the Wigner function of number-basis states.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/quadrature.hpp"

namespace tomoplane {

/// Physicists' Hermite polynomial by the three-term recurrence. Overflows to
/// Inf for large n*|x|; use eval_fock for normalized values.
inline double hermite(int n, double x) {
    if (n < 0) throw Error(ErrorKind::invalid_dimension, "Hermite degree must be non-negative");
    if (n == 0) return 1.0;
    double h0 = 1.0;
    double h1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

/// <X|alpha> for the untruncated coherent state.
inline complex eval_coherent(complex alpha, double X) {
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    return pi_quarter * std::exp(-0.5 * X * X + std::sqrt(2.0) * alpha * X - 0.5 * alpha * alpha - 0.5 * std::norm(alpha));
}

namespace detail {

// Normalized Hermite functions psi_0..psi_{count-1} at X via
// psi_{k+1} = sqrt(2/(k+1)) X psi_k - sqrt(k/(k+1)) psi_{k-1}.
inline void hermite_functions(double X, int count, std::vector<double>& out) {
    out.resize(count);
    if (count == 0) return;
    out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * X * X);
    if (count == 1) return;
    out[1] = std::sqrt(2.0) * X * out[0];
    for (int k = 1; k + 1 < count; ++k)
        out[k + 1] = std::sqrt(2.0 / (k + 1)) * X * out[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
}

}  // namespace detail

/// <X|n> = pi^(-1/4) (2^n n!)^(-1/2) H_n(X) exp(-X^2/2), evaluated by the
/// normalized recurrence so it stays finite for large n.
inline double eval_fock(int n, double X) {
    std::vector<double> psi;
    detail::hermite_functions(X, n + 1, psi);
    return psi[n];
}

/// Evaluates sum_n c_n z^n psi_n(X) for a unit phase z. z = 1 gives the
/// position wavefunction, z = exp(-i phi) the rotated-quadrature amplitude.
class WavefunctionEvaluator {
public:
    explicit WavefunctionEvaluator(const StateSpec& state) : state_(state) {
        state.check_normalized();
        const int top = state.highest_occupied(1e-18);
        coefficients_.assign(state.coefficients().begin(), state.coefficients().begin() + top + 1);
        for (int k = 0; k <= top; ++k) {
            up_.push_back(std::sqrt(2.0 / (k + 1)));
            down_.push_back(std::sqrt(static_cast<double>(k) / (k + 1)));
        }
    }

    const StateSpec& state() const noexcept { return state_; }
    int terms() const noexcept { return static_cast<int>(coefficients_.size()); }

    complex operator()(double X) const { return amplitude(X, complex(1.0, 0.0)); }

    /// Amplitude of the rotated quadrature q cos(phi) + p sin(phi).
    complex rotated(double X, double phi) const { return amplitude(X, std::polar(1.0, -phi)); }

    /// Momentum-space wavefunction (the phi = pi/2 quadrature).
    complex momentum(double p) const { return amplitude(p, complex(0.0, -1.0)); }

    complex amplitude(double X, complex phase) const {
        // Same recurrence as detail::hermite_functions, fused with the sum.
        double prev = 0.0;
        double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * X * X);
        complex acc = coefficients_[0] * cur;
        complex z{1.0, 0.0};
        for (int n = 1; n < terms(); ++n) {
            const double next = up_[n - 1] * X * cur - down_[n - 1] * prev;
            prev = cur;
            cur = next;
            z *= phase;
            acc += coefficients_[n] * z * cur;
        }
        return acc;
    }

private:
    StateSpec state_;
    std::vector<complex> coefficients_;
    std::vector<double> up_;
    std::vector<double> down_;
};

struct WignerValue {
    double value = 0.0;
    double imaginary = 0.0;
    double error = 0.0;
};

struct WignerRuleSpec {
    int panels = 16;
    int order = 16;
    double tolerance = 1e-9;
};

/// W(q,p) = (1/2pi) int psi(q+u/2) conj(psi(q-u/2)) exp(-ipu) du over
/// |u| <= 2(8 + 2a), a = |alpha| (coherent) or sqrt(n_max). The error
/// estimate compares `panels` against 2*`panels`.
class WignerEvaluator {
public:
    explicit WignerEvaluator(const StateSpec& state, WignerRuleSpec spec = {}) : psi_(state), spec_(spec) {
        half_width_ = 2.0 * (8.0 + 2.0 * state.displacement_scale());
        fine_ = half_rule(composite_legendre(-half_width_, half_width_, 2 * spec.panels, spec.order));
        coarse_ = half_rule(composite_legendre(-half_width_, half_width_, spec.panels, spec.order));
    }

    const WavefunctionEvaluator& wavefunction() const noexcept { return psi_; }
    double half_width() const noexcept { return half_width_; }

    WignerValue evaluate(double q, double p) const {
        const complex fine = integrate(fine_, q, p);
        const complex coarse = integrate(coarse_, q, p);
        return {fine.real(), fine.imag(), std::abs(fine - coarse)};
    }

    /// Fine-rule value only, no error estimate.
    double operator()(double q, double p) const { return integrate(fine_, q, p).real(); }

    double checked(double q, double p) const {
        const complex fine = integrate(fine_, q, p);
        const complex coarse = integrate(coarse_, q, p);
        if (std::abs(fine - coarse) > spec_.tolerance)
            throw IntegrationError("Wigner u-integral did not converge", fine.real(), coarse.real(), spec_.tolerance);
        return fine.real();
    }

private:
    // The composite rule is symmetric about u = 0, and the nodes u and -u
    // share psi(q + u/2) and psi(q - u/2); keep only u >= 0 (the centre node,
    // if any, is flagged by a zero node).
    static QuadratureRule half_rule(const QuadratureRule& full) {
        QuadratureRule half;
        half.domain = full.domain;
        for (std::size_t i = full.size() / 2; i < full.size(); ++i) {
            half.nodes.push_back(full.nodes[i]);
            half.weights.push_back(full.weights[i]);
        }
        if (full.size() % 2 == 1) half.nodes.front() = 0.0;
        return half;
    }

    complex integrate(const QuadratureRule& rule, double q, double p) const {
        complex acc{};
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double u = rule.nodes[i];
            const complex plus = psi_(q + 0.5 * u);
            const complex minus = psi_(q - 0.5 * u);
            const complex phase = std::polar(1.0, -p * u);
            acc += rule.weights[i] * plus * std::conj(minus) * phase;
            if (u != 0.0) acc += rule.weights[i] * minus * std::conj(plus) * std::conj(phase);
        }
        return acc / (2.0 * std::numbers::pi);
    }

    WavefunctionEvaluator psi_;
    WignerRuleSpec spec_;
    double half_width_ = 0.0;
    QuadratureRule fine_;
    QuadratureRule coarse_;
};

inline double wigner(const StateSpec& state, double q, double p) { return WignerEvaluator(state).checked(q, p); }

}  // namespace tomoplane
