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

// Gaussian, periodic and panelized line integration shared by every other
// module. Rules are plain node/weight lists and can be reused freely.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tomoplane/errors.hpp"

namespace tomoplane {

enum class QuadratureDomain { finite_panel, gaussian_line, periodic_circle };

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadratureDomain domain = QuadratureDomain::finite_panel;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    auto apply(F&& f) const {
        using R = decltype(f(0.0));
        R sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }

    /// Affine map of a rule defined on [-1, 1] onto [a, b].
    QuadratureRule mapped(double a, double b) const {
        QuadratureRule out;
        out.domain = QuadratureDomain::finite_panel;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        out.nodes.reserve(size());
        out.weights.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) {
            out.nodes.push_back(mid + half * nodes[i]);
            out.weights.push_back(half * weights[i]);
        }
        return out;
    }
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw Error(ErrorKind::rule_construction_error, "Gauss-Legendre order must be >= 1");
    const auto n = static_cast<std::size_t>(order);
    QuadratureRule rule;
    rule.domain = QuadratureDomain::finite_panel;
    if (n == 1) {
        rule.nodes = {0.0};
        rule.weights = {2.0};
        return rule;
    }
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Newton roots come out descending; store ascending.
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

// Implicit QL on a symmetric tridiagonal matrix, tracking only the first
// component of each eigenvector (all Golub-Welsch needs).
inline bool tridiagonal_ql(std::vector<double>& diag, std::vector<double> offdiag,
                           std::vector<double>& first_components) {
    const std::size_t n = diag.size();
    offdiag.push_back(0.0);
    first_components.assign(n, 0.0);
    first_components[0] = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m = l;
        for (;;) {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(offdiag[m]) <= 1e-16 * dd) break;
            }
            if (m == l) break;
            if (++iterations > 60) return false;
            double g = (diag[l + 1] - diag[l]) / (2.0 * offdiag[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + offdiag[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            std::size_t i = m;
            bool underflow = false;
            while (i-- > l) {
                double f = s * offdiag[i];
                const double b = c * offdiag[i];
                r = std::hypot(f, g);
                offdiag[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    offdiag[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = first_components[i + 1];
                first_components[i + 1] = s * first_components[i] + c * f;
                first_components[i] = c * first_components[i] - s * f;
            }
            if (underflow) continue;
            diag[l] -= p;
            offdiag[l] = g;
            offdiag[m] = 0.0;
        }
    }
    return true;
}

}  // namespace detail

/// Gauss-Hermite rule for the weight exp(-x^2) via the Golub-Welsch
/// eigenproblem of the Hermite Jacobi matrix.
inline QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw Error(ErrorKind::rule_construction_error, "Gauss-Hermite order must be >= 1");
    const auto n = static_cast<std::size_t>(order);
    std::vector<double> diag(n, 0.0);
    std::vector<double> offdiag;
    for (std::size_t k = 1; k < n; ++k) offdiag.push_back(std::sqrt(static_cast<double>(k) / 2.0));
    std::vector<double> first;
    if (!detail::tridiagonal_ql(diag, offdiag, first))
        throw Error(ErrorKind::rule_construction_error,
                    "Golub-Welsch eigen-solve did not converge for order " + std::to_string(order));

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

    QuadratureRule rule;
    rule.domain = QuadratureDomain::gaussian_line;
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (std::size_t i : idx) {
        rule.nodes.push_back(diag[i]);
        rule.weights.push_back(sqrt_pi * first[i] * first[i]);
    }
    // Exact symmetry about zero.
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Composite Gauss-Legendre rule: `panels` equal panels on [a, b].
inline QuadratureRule composite_legendre(double a, double b, int panels, int order) {
    if (!(a < b)) throw Error(ErrorKind::rule_construction_error, "composite rule needs a < b");
    if (panels < 1) throw Error(ErrorKind::rule_construction_error, "composite rule needs >= 1 panel");
    const QuadratureRule base = gauss_legendre(order);
    QuadratureRule out;
    out.domain = QuadratureDomain::finite_panel;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + h * p;
        const QuadratureRule panel = base.mapped(lo, p + 1 == panels ? b : lo + h);
        out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return out;
}

/// Uniform trapezoid nodes on [0, period).
inline QuadratureRule periodic_rule(double period, int points) {
    if (points < 4) throw Error(ErrorKind::rule_construction_error, "periodic rule needs >= 4 points");
    QuadratureRule out;
    out.domain = QuadratureDomain::periodic_circle;
    const double h = period / points;
    for (int j = 0; j < points; ++j) {
        out.nodes.push_back(h * j);
        out.weights.push_back(h);
    }
    return out;
}

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// Composite Gauss-Legendre on [a, b]. The returned value uses 2*panels; the
/// error estimate is its distance from the `panels` result.
template <class F>
PanelEstimate integrate_panels(F&& f, double a, double b, int panels, int order) {
    const double coarse = composite_legendre(a, b, panels, order).apply(f);
    const double fine = composite_legendre(a, b, 2 * panels, order).apply(f);
    return {fine, std::abs(fine - coarse)};
}

/// As above but raises IntegrationError when the estimate exceeds
/// `tolerance * max(1, |value|)`.
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int order, double tolerance) {
    const double coarse = composite_legendre(a, b, panels, order).apply(f);
    const double fine = composite_legendre(a, b, 2 * panels, order).apply(f);
    if (std::abs(fine - coarse) > tolerance * std::max(1.0, std::abs(fine)))
        throw IntegrationError("panel integration did not converge", fine, coarse, tolerance);
    return fine;
}

template <class F>
double integrate_periodic(F&& f, double period, int points) {
    return periodic_rule(period, points).apply(f);
}

struct LineRuleSpec {
    int panels = 16;
    int order = 16;
    double tolerance = 1e-8;
};

/// Integral of a phase-space function along the line
/// q cos(phi) + p sin(phi) = X, parametrized as
/// q = X cos(phi) - t sin(phi), p = X sin(phi) + t cos(phi), t in [-h, h].
template <class W>
double radon_line_integral(W&& field, double X, double phi, double half_width, LineRuleSpec spec = {}) {
    if (!(half_width > 0.0)) throw Error(ErrorKind::rule_construction_error, "half-width must be positive");
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    auto along = [&](double t) { return field(X * c - t * s, X * s + t * c); };
    return integrate_panels(along, -half_width, half_width, spec.panels, spec.order, spec.tolerance);
}

}  // namespace tomoplane
