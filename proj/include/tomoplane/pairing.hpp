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

// Observable averages from tomograms. The planar average is computed in polar
// form, kappa * int_0^2pi int_0^R f(r cos phi, r sin phi) w(r, phi) dr dphi,
// which removes the 1/r singularity of Omega at the origin. The optical
// average integrates X^N H(phi) w(X, phi) over the full line.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/quadrature.hpp"
#include "tomoplane/symbols.hpp"
#include "tomoplane/tomography.hpp"

namespace tomoplane {

struct PairingConfig {
    double kappa = 2.0;
    double radial_cutoff = 0.0;  // 0 selects 8 + 2 * state extent
    int phi_points = 256;
    int radial_panels = 16;
    int radial_order = 16;
    double tolerance = 1e-8;

    void validate() const {
        if (!(kappa > 0.0)) throw Error(ErrorKind::invalid_config, "kappa must be positive");
        if (radial_cutoff != 0.0 && !(radial_cutoff >= 6.0))
            throw Error(ErrorKind::invalid_config, "radial cutoff must be >= 6");
        if (phi_points < 4) throw Error(ErrorKind::invalid_config, "need at least 4 phi points");
        if (radial_panels < 1 || radial_order < 1) throw Error(ErrorKind::invalid_config, "radial rule must be non-empty");
        if (!(tolerance > 0.0)) throw Error(ErrorKind::invalid_config, "tolerance must be positive");
    }
};

inline double radial_cutoff_for(const StateSpec& state) { return 8.0 + 2.0 * state.extent(); }

/// Tomogram tabulated once on polar quadrature nodes and reused for any
/// number of symbols.
class PairingEngine {
public:
    PairingEngine(const StateSpec& state, PairingConfig config) : state_(state), config_(config) {
        config_.validate();
        cutoff_ = config_.radial_cutoff != 0.0 ? config_.radial_cutoff : radial_cutoff_for(state);
        phi_ = periodic_rule(2.0 * std::numbers::pi, config_.phi_points);
        const Tomogram tomogram(state);
        const int p = config_.radial_panels;
        const int o = config_.radial_order;
        half_[0] = tabulate(tomogram, composite_legendre(0.0, cutoff_, p, o));
        half_[1] = tabulate(tomogram, composite_legendre(0.0, cutoff_, 2 * p, o));
        full_[0] = tabulate(tomogram, composite_legendre(-cutoff_, cutoff_, 2 * p, o));
        full_[1] = tabulate(tomogram, composite_legendre(-cutoff_, cutoff_, 4 * p, o));
    }

    const PairingConfig& config() const noexcept { return config_; }
    const StateSpec& state() const noexcept { return state_; }
    double cutoff() const noexcept { return cutoff_; }

    /// int_0^2pi int_0^R f w dr dphi, without kappa.
    PanelEstimate raw_planar(const SymbolPolynomial& f) const {
        auto integrand = [&](double r, double phi) { return f(r * std::cos(phi), r * std::sin(phi)); };
        const double coarse = integrate(half_[0], integrand);
        const double fine = integrate(half_[1], integrand);
        return {fine, std::abs(fine - coarse)};
    }

    double planar(const SymbolPolynomial& f) const {
        return config_.kappa * checked(raw_planar(f), "planar pairing");
    }

    /// int_0^2pi int_-R^R f w dX dphi over the full line.
    PanelEstimate raw_full_line(const SymbolPolynomial& f) const {
        auto integrand = [&](double r, double phi) { return f(r * std::cos(phi), r * std::sin(phi)); };
        const double coarse = integrate(full_[0], integrand);
        const double fine = integrate(full_[1], integrand);
        return {fine, std::abs(fine - coarse)};
    }

    /// int_0^2pi int_-R^R X^N H(phi) w(X, phi) dX dphi.
    double optical(int degree, const std::function<double(double)>& H) const {
        std::vector<double> angular(phi_.size());
        for (std::size_t j = 0; j < phi_.size(); ++j) angular[j] = H(phi_.nodes[j]);
        auto integrand = [&](double X, std::size_t j) { return ipow(X, degree) * angular[j]; };
        const double coarse = integrate_indexed(full_[0], integrand);
        const double fine = integrate_indexed(full_[1], integrand);
        return checked({fine, std::abs(fine - coarse)}, "optical pairing");
    }

    double optical(const SymbolPolynomial& f) const {
        if (f.empty()) return 0.0;
        return optical(f.degree(), circle_restriction(f));
    }

    /// Term-by-term optical average of a linear combination.
    double optical(const ObservableExpr& expr) const {
        double acc = 0.0;
        for (const auto& [key, c] : expr.words) acc += c * optical(word_symbol(key.first, key.second));
        if (expr.identity != 0.0) acc += expr.identity * optical(identity_symbol());
        return acc;
    }

    double planar(const ObservableExpr& expr) const { return planar(observable_symbol(expr)); }

private:
    struct Table {
        QuadratureRule radial;
        std::vector<double> values;  // phi-major: values[j * radial.size() + i]
    };

    Table tabulate(const Tomogram& tomogram, QuadratureRule radial) const {
        Table t{std::move(radial), {}};
        t.values.resize(phi_.size() * t.radial.size());
        for (std::size_t j = 0; j < phi_.size(); ++j)
            for (std::size_t i = 0; i < t.radial.size(); ++i)
                t.values[j * t.radial.size() + i] = tomogram.optical(t.radial.nodes[i], phi_.nodes[j]);
        return t;
    }

    template <class F>
    double integrate(const Table& t, F&& integrand) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < phi_.size(); ++j) {
            double inner = 0.0;
            for (std::size_t i = 0; i < t.radial.size(); ++i)
                inner += t.radial.weights[i] * integrand(t.radial.nodes[i], phi_.nodes[j]) * t.values[j * t.radial.size() + i];
            acc += phi_.weights[j] * inner;
        }
        return acc;
    }

    template <class F>
    double integrate_indexed(const Table& t, F&& integrand) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < phi_.size(); ++j) {
            double inner = 0.0;
            for (std::size_t i = 0; i < t.radial.size(); ++i)
                inner += t.radial.weights[i] * integrand(t.radial.nodes[i], j) * t.values[j * t.radial.size() + i];
            acc += phi_.weights[j] * inner;
        }
        return acc;
    }

    double checked(PanelEstimate e, const char* what) const {
        if (e.error > config_.tolerance * std::max(1.0, std::abs(e.value)))
            throw IntegrationError(std::string(what) + " radial panel doubling disagrees", e.value, e.value + e.error,
                                   config_.tolerance);
        return e.value;
    }

    static double ipow(double base, int e) {
        double r = 1.0;
        for (int k = 0; k < e; ++k) r *= base;
        return r;
    }

    StateSpec state_;
    PairingConfig config_;
    double cutoff_ = 0.0;
    QuadratureRule phi_;
    Table half_[2];
    Table full_[2];
};

inline double pair_planar(const SymbolPolynomial& f, const StateSpec& state, const PairingConfig& config = {}) {
    return PairingEngine(state, config).planar(f);
}

inline double pair_optical(int degree, const std::function<double(double)>& H, const StateSpec& state,
                           const PairingConfig& config = {}) {
    return PairingEngine(state, config).optical(degree, H);
}

/// Tr(rho A) for A = sum c S(m,n) + c_I I in the state's truncation.
inline double trace_expectation(const StateSpec& state, const ObservableExpr& expr) {
    double acc = expr.identity;
    for (const auto& [key, c] : expr.words)
        acc += c * expectation_trace(state, symmetric_word_sum(key.first, key.second, state.dim()));
    return acc;
}

struct KappaCalibration {
    double kappa = 0.0;
    double spread = 0.0;
    int pairs_used = 0;
};

/// Median of Tr(rho S)/raw-planar over state/degree pairs with a non-zero
/// trace. Spread is the largest distance of a ratio from the median.
inline KappaCalibration calibrate_kappa(const std::vector<StateSpec>& states, const std::vector<std::pair<int, int>>& degrees,
                                        PairingConfig config = {}, double nonzero_threshold = 1e-6) {
    std::vector<double> ratios;
    for (const auto& state : states) {
        const PairingEngine engine(state, config);
        for (const auto& [m, n] : degrees) {
            const double trace = expectation_trace(state, symmetric_word_sum(m, n, state.dim()));
            if (std::abs(trace) <= nonzero_threshold) continue;
            const double raw = engine.raw_planar(word_symbol(m, n)).value;
            if (raw == 0.0) continue;
            ratios.push_back(trace / raw);
        }
    }
    if (ratios.empty())
        throw Error(ErrorKind::calibration_degenerate, "every trace expectation is zero; kappa is undetermined");
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    const double median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    double spread = 0.0;
    for (double r : ratios) spread = std::max(spread, std::abs(r - median));
    return {median, spread, static_cast<int>(ratios.size())};
}

struct ExpectationReport {
    std::string state;
    std::string observable;
    double value_planar = 0.0;
    double value_optical = 0.0;
    double value_trace = 0.0;
    double planar_abs_deviation = 0.0;
    double planar_rel_deviation = 0.0;
    double optical_abs_deviation = 0.0;
    double optical_rel_deviation = 0.0;
};

inline double relative_deviation(double abs_dev, double reference) {
    return abs_dev / std::max(std::abs(reference), 1e-12);
}

inline ExpectationReport expectation_report(const StateSpec& state, const ObservableExpr& observable,
                                            const PairingConfig& config = {}) {
    const PairingEngine engine(state, config);
    ExpectationReport r;
    r.state = state.descriptor();
    r.observable = observable.describe();
    r.value_planar = engine.planar(observable);
    r.value_optical = engine.optical(observable);
    r.value_trace = trace_expectation(state, observable);
    r.planar_abs_deviation = std::abs(r.value_planar - r.value_trace);
    r.optical_abs_deviation = std::abs(r.value_optical - r.value_trace);
    r.planar_rel_deviation = relative_deviation(r.planar_abs_deviation, r.value_trace);
    r.optical_rel_deviation = relative_deviation(r.optical_abs_deviation, r.value_trace);
    return r;
}

}  // namespace tomoplane
