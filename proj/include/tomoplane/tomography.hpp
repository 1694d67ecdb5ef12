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

// Optical, symplectic and planar tomograms of number-basis states, plus the
// closed forms for coherent and Fock states and dense grid sampling.

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/state_models.hpp"

namespace tomoplane {

enum class Representation { optical, symplectic, planar, wigner };

inline std::string to_string(Representation r) {
    switch (r) {
        case Representation::optical: return "optical";
        case Representation::symplectic: return "symplectic";
        case Representation::planar: return "planar";
        case Representation::wigner: return "wigner";
    }
    return "unknown";
}

/// Distribution view of a state, evaluated by the Fock sum
/// w(X, phi) = |sum_n c_n exp(-i n phi) psi_n(X)|^2.
class Tomogram {
public:
    explicit Tomogram(const StateSpec& state) : psi_(state) {}

    const StateSpec& state() const noexcept { return psi_.state(); }

    double optical(double X, double phi) const { return std::norm(psi_.rotated(X, phi)); }

    /// omega(X, mu, nu) = w(X/r, atan2(nu, mu)) / r with r = |(mu, nu)|.
    double symplectic(double X, double mu, double nu) const {
        const double r = std::hypot(mu, nu);
        if (r == 0.0) throw Error(ErrorKind::degenerate_direction, "symplectic tomogram needs (mu, nu) != (0, 0)");
        return optical(X / r, std::atan2(nu, mu)) / r;
    }

    /// Omega(x, y) = omega(x^2 + y^2, x, y). Singular at the origin.
    double planar(double x, double y) const {
        const double r = std::hypot(x, y);
        if (r == 0.0) throw Error(ErrorKind::degenerate_point, "planar distribution is undefined at the origin");
        return optical(r, std::atan2(y, x)) / r;
    }

private:
    WavefunctionEvaluator psi_;
};

inline double optical(const StateSpec& state, double X, double phi) { return Tomogram(state).optical(X, phi); }
inline double symplectic(const StateSpec& state, double X, double mu, double nu) {
    return Tomogram(state).symplectic(X, mu, nu);
}
inline double planar(const StateSpec& state, double x, double y) { return Tomogram(state).planar(x, y); }

namespace closed_form {

inline double coherent_symplectic(complex alpha, double X, double mu, double nu) {
    const double s = mu * mu + nu * nu;
    const double shift = X - std::sqrt(2.0) * alpha.real() * mu - std::sqrt(2.0) * alpha.imag() * nu;
    return std::exp(-shift * shift / s) / std::sqrt(std::numbers::pi * s);
}

inline double coherent_optical(complex alpha, double X, double phi) {
    return coherent_symplectic(alpha, X, std::cos(phi), std::sin(phi));
}

inline double coherent_planar(complex alpha, double x, double y) {
    const double s = x * x + y * y;
    const double shift = s - std::sqrt(2.0) * alpha.real() * x - std::sqrt(2.0) * alpha.imag() * y;
    return std::exp(-shift * shift / s) / std::sqrt(std::numbers::pi * s);
}

inline double vacuum_planar(double x, double y) {
    const double s = x * x + y * y;
    return std::exp(-s) / std::sqrt(std::numbers::pi * s);
}

namespace detail {
inline double fock_norm(int n) {
    double d = 1.0;
    for (int k = 1; k <= n; ++k) d *= 2.0 * k;
    return d;
}
}  // namespace detail

/// Fock symplectic tomogram with Hermite argument X / sqrt(mu^2 + nu^2).
/// (A pi inside the square root of that argument breaks normalization.)
inline double fock_symplectic(int n, double X, double mu, double nu) {
    const double s = mu * mu + nu * nu;
    const double h = hermite(n, X / std::sqrt(s));
    return h * h * std::exp(-X * X / s) / (detail::fock_norm(n) * std::sqrt(std::numbers::pi * s));
}

inline double fock_optical(int n, double X) { return fock_symplectic(n, X, 1.0, 0.0); }

/// Fock planar distribution with Hermite argument sqrt(x^2 + y^2).
inline double fock_planar(int n, double x, double y) {
    const double s = x * x + y * y;
    const double h = hermite(n, std::sqrt(s));
    return h * h * std::exp(-s) / (detail::fock_norm(n) * std::sqrt(std::numbers::pi * s));
}

}  // namespace closed_form

/// Sampling axis. With `endpoint` the nodes are min..max inclusive, otherwise
/// max is excluded (periodic axes).
struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 1;
    bool endpoint = true;

    std::vector<double> nodes() const {
        if (count <= 0) throw Error(ErrorKind::invalid_grid, "axis needs a positive number of steps");
        if (!std::isfinite(min) || !std::isfinite(max) || max < min)
            throw Error(ErrorKind::invalid_grid, "axis bounds must be finite with min <= max");
        std::vector<double> out(count);
        const int denom = endpoint ? count - 1 : count;
        for (int i = 0; i < count; ++i)
            out[i] = denom == 0 ? min : (min * (denom - i) + max * i) / denom;
        return out;
    }

    double step() const {
        const int denom = endpoint ? count - 1 : count;
        return denom > 0 ? (max - min) / denom : 0.0;
    }

    /// Inclusive axis from min:max:step.
    static AxisSpec from_step(double min, double max, double step) {
        if (!(step > 0.0) || !(max >= min)) throw Error(ErrorKind::invalid_grid, "axis step must be positive and max >= min");
        const double span = (max - min) / step;
        return {min, max, static_cast<int>(std::llround(span)) + 1, true};
    }

    static AxisSpec periodic(int count) { return {0.0, 2.0 * std::numbers::pi, count, false}; }
};

struct TomogramGrid {
    Representation representation = Representation::optical;
    std::string state;
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<double> values;  // row-major, axis1 outer
    // Planar grids move the cell that would sit on the origin by half a step
    // along axis1; this records which cell and where it was evaluated.
    std::optional<std::size_t> shifted_cell;
    double shifted_axis1 = 0.0;

    std::size_t rows() const noexcept { return axis1.size(); }
    std::size_t cols() const noexcept { return axis2.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }

    std::pair<double, double> coordinate(std::size_t i, std::size_t j) const {
        if (shifted_cell && *shifted_cell == i * cols() + j) return {shifted_axis1, axis2[j]};
        return {axis1[i], axis2[j]};
    }
};

/// Worker count for grid evaluation: TOMO_NUM_THREADS if set and positive,
/// otherwise hardware concurrency.
inline unsigned grid_threads() {
    if (const char* env = std::getenv("TOMO_NUM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Dense evaluation; axes are (X, phi) for optical and (x, y) for planar and
/// wigner. Output placement is independent of the thread count.
inline TomogramGrid sample_grid(const StateSpec& state, Representation rep, const AxisSpec& a1, const AxisSpec& a2) {
    if (rep == Representation::symplectic)
        throw Error(ErrorKind::invalid_grid, "symplectic tomograms have three arguments; sample optical instead");
    TomogramGrid grid;
    grid.representation = rep;
    grid.state = state.descriptor();
    grid.axis1 = a1.nodes();
    grid.axis2 = a2.nodes();
    grid.values.assign(grid.rows() * grid.cols(), 0.0);

    if (rep == Representation::planar) {
        const double tiny = 1e-12 * std::max(1.0, std::abs(a1.step()));
        for (std::size_t i = 0; i < grid.rows(); ++i)
            for (std::size_t j = 0; j < grid.cols(); ++j)
                if (std::abs(grid.axis1[i]) < tiny && std::abs(grid.axis2[j]) < tiny) {
                    grid.shifted_cell = i * grid.cols() + j;
                    grid.shifted_axis1 = 0.5 * (a1.step() > 0.0 ? a1.step() : a2.step() > 0.0 ? a2.step() : 1.0);
                }
    }

    const Tomogram tomogram(state);
    std::optional<WignerEvaluator> wigner_eval;
    if (rep == Representation::wigner) wigner_eval.emplace(state);

    auto fill_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const auto [u, v] = grid.coordinate(i, j);
            double value = 0.0;
            switch (rep) {
                case Representation::optical: value = tomogram.optical(u, v); break;
                case Representation::planar: value = tomogram.planar(u, v); break;
                case Representation::wigner: value = wigner_eval->checked(u, v); break;
                case Representation::symplectic: break;
            }
            grid.values[i * grid.cols() + j] = value;
        }
    };

    const unsigned workers = std::min<unsigned>(grid_threads(), static_cast<unsigned>(std::max<std::size_t>(1, grid.rows())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.rows(); ++i) fill_row(i);
        return grid;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < grid.rows(); i += workers) fill_row(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

}  // namespace tomoplane
