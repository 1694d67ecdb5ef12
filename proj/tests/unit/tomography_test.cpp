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

#include "tomoplane/tomography.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "gtest/gtest.h"

#include "tomoplane/quadrature.hpp"
#include "tomoplane/state_models.hpp"

using namespace tomoplane;

namespace {

constexpr double pi = std::numbers::pi;

const complex coherent_set[] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {-0.5, 2.0}};

double gaussian_line(double shift, double scale2) {
    return std::exp(-shift * shift / scale2) / std::sqrt(pi * scale2);
}

double fock_density(int n, double X) {
    double norm = 1.0;
    for (int k = 1; k <= n; ++k) norm *= 2.0 * k;
    const double h = hermite(n, X);
    return h * h * std::exp(-X * X) / (norm * std::sqrt(pi));
}

}  // namespace

TEST(Optical, VacuumIsPhaseIndependent) {
    const Tomogram t(StateSpec::fock(0));
    for (double X : {-2.0, 0.0, 0.9})
        for (double phi : {0.0, 1.0, 2.5, 4.0}) EXPECT_NEAR(t.optical(X, phi), std::exp(-X * X) / std::sqrt(pi), 1e-14);
}

TEST(Optical, CoherentGaussian) {
    for (const complex alpha : coherent_set) {
        const Tomogram t(StateSpec::coherent(alpha));
        for (double X = -4.0; X <= 4.0; X += 0.43)
            for (double phi = 0.0; phi < 2 * pi; phi += 0.37) {
                const double shift = X - std::sqrt(2.0) * (alpha.real() * std::cos(phi) + alpha.imag() * std::sin(phi));
                EXPECT_NEAR(t.optical(X, phi), gaussian_line(shift, 1.0), 1e-10);
            }
    }
}

TEST(Optical, FockDensity) {
    for (int n = 0; n <= 6; ++n) {
        const Tomogram t(StateSpec::fock(n));
        for (double X : {-3.1, -0.4, 0.0, 1.3, 2.7}) {
            EXPECT_NEAR(t.optical(X, 0.0), fock_density(n, X), 1e-12);
            EXPECT_NEAR(t.optical(X, 1.7), fock_density(n, X), 1e-12);
            EXPECT_NEAR(closed_form::fock_optical(n, X), fock_density(n, X), 1e-13);
        }
    }
}

TEST(Symplectic, ClosedFormsAndHomogeneity) {
    for (const complex alpha : coherent_set) {
        const Tomogram t(StateSpec::coherent(alpha));
        for (double X : {-1.2, 0.3, 2.0})
            for (const auto& [mu, nu] : {std::pair{1.0, 0.0}, {0.3, -1.4}, {-2.0, 0.5}, {0.0, 0.7}}) {
                const double s = mu * mu + nu * nu;
                const double shift = X - std::sqrt(2.0) * alpha.real() * mu - std::sqrt(2.0) * alpha.imag() * nu;
                EXPECT_NEAR(t.symplectic(X, mu, nu), gaussian_line(shift, s), 1e-12);
                for (double lambda : {-2.0, 0.5, 3.0})
                    EXPECT_NEAR(t.symplectic(lambda * X, lambda * mu, lambda * nu),
                                t.symplectic(X, mu, nu) / std::abs(lambda), 1e-12);
            }
    }
    const Tomogram vacuum(StateSpec::fock(0));
    EXPECT_NEAR(vacuum.symplectic(0.0, 0.6, 0.8), 1.0 / std::sqrt(pi), 1e-14);
    EXPECT_NEAR(vacuum.symplectic(0.0, 2.0, -1.0), 1.0 / std::sqrt(5.0 * pi), 1e-14);
}

TEST(Symplectic, DegenerateDirection) {
    try {
        symplectic(StateSpec::fock(0), 1.0, 0.0, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_direction);
    }
}

TEST(Planar, ClosedForms) {
    for (double x : {-2.0, -0.3, 0.5, 1.0})
        for (double y : {-1.1, 0.0, 0.8}) {
            const double s = x * x + y * y;
            EXPECT_NEAR(planar(StateSpec::fock(0), x, y), std::exp(-s) / std::sqrt(pi * s), 1e-12);
            for (int n = 1; n <= 5; ++n) {
                const double r = std::sqrt(s);
                EXPECT_NEAR(planar(StateSpec::fock(n), x, y), fock_density(n, r) / r, 1e-12);
            }
        }
    for (const complex alpha : coherent_set) {
        const Tomogram t(StateSpec::coherent(alpha));
        for (double x : {-1.5, 0.2, 1.9})
            for (double y : {-0.7, 0.4, 2.2}) {
                const double s = x * x + y * y;
                const double shift = s - std::sqrt(2.0) * (alpha.real() * x + alpha.imag() * y);
                EXPECT_NEAR(t.planar(x, y), gaussian_line(shift, s), 1e-12);
            }
    }
    EXPECT_NEAR(planar(StateSpec::fock(1), 1.0, 0.0), 4.0 * std::exp(-1.0) / (2.0 * std::sqrt(pi)), 1e-12);
}

TEST(Planar, IsSymplecticOnTheParabola) {
    const Tomogram t(StateSpec::coherent({0.7, -0.4}));
    for (double x : {-1.0, 0.6, 1.3})
        for (double y : {-0.2, 0.9}) EXPECT_NEAR(t.planar(x, y), t.symplectic(x * x + y * y, x, y), 1e-14);
}

TEST(Planar, DegeneratePoint) {
    try {
        planar(StateSpec::fock(0), 0.0, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_point);
    }
}

TEST(Properties, SymmetryAndNormalization) {
    std::vector<StateSpec> states;
    for (int n = 0; n <= 5; ++n) states.push_back(StateSpec::fock(n));
    for (const complex alpha : coherent_set) states.push_back(StateSpec::coherent(alpha));
    for (const auto& state : states) {
        const Tomogram t(state);
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                const double X = -5.0 + 10.0 * i / 31.0;
                const double phi = 2 * pi * j / 32.0;
                ASSERT_NEAR(t.optical(-X, phi), t.optical(X, phi + pi), 1e-12);
                ASSERT_GE(t.optical(X, phi), 0.0);
            }
        const double R = 8.0 + 2.0 * state.extent();
        for (int j = 0; j < 16; ++j) {
            const double phi = 2 * pi * j / 16.0;
            EXPECT_NEAR(integrate_panels([&](double X) { return t.optical(X, phi); }, -R, R, 16, 16).value, 1.0, 1e-8);
        }
        const auto radial = composite_legendre(0.0, R, 16, 16);
        const double polar = integrate_periodic(
            [&](double phi) { return radial.apply([&](double r) { return t.optical(r, phi); }); }, 2 * pi, 256);
        EXPECT_NEAR(polar / pi, 1.0, 1e-8) << state.descriptor();
    }
}

TEST(Properties, RadonOfWigner) {
    std::vector<StateSpec> states;
    for (int n = 0; n <= 3; ++n) states.push_back(StateSpec::fock(n));
    states.push_back(StateSpec::coherent({1.0, 0.5}));
    for (const auto& state : states) {
        const Tomogram t(state);
        const WignerEvaluator W(state);
        const auto field = [&](double q, double p) { return W(q, p); };
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 8; ++j) {
                const double X = -3.3 + 6.6 * i / 11.0;
                const double phi = pi * j / 8.0;
                EXPECT_NEAR(t.optical(X, phi), radon_line_integral(field, X, phi, 9.0, {12, 16, 1e-7}), 1e-6)
                    << state.descriptor() << " X=" << X << " phi=" << phi;
            }
    }
}

TEST(Axis, NodesAndErrors) {
    const auto a = AxisSpec::from_step(-5.0, 5.0, 0.1).nodes();
    ASSERT_EQ(a.size(), 101u);
    EXPECT_EQ(a.front(), -5.0);
    EXPECT_EQ(a.back(), 5.0);
    EXPECT_EQ(a[50], 0.0);
    const auto p = AxisSpec::periodic(4).nodes();
    ASSERT_EQ(p.size(), 4u);
    EXPECT_NEAR(p[1], pi / 2, 1e-15);
    EXPECT_THROW((AxisSpec{0.0, 1.0, 0, true}).nodes(), Error);
    EXPECT_THROW(AxisSpec::from_step(0.0, 1.0, 0.0), Error);
    EXPECT_THROW(AxisSpec::from_step(1.0, 0.0, 0.1), Error);
}

TEST(Grid, VacuumPlanarIsNonNegative) {
    const AxisSpec axis{-5.0, 5.0, 200, true};
    const auto grid = sample_grid(StateSpec::fock(0), Representation::planar, axis, axis);
    ASSERT_EQ(grid.values.size(), 200u * 200u);
    for (double v : grid.values) {
        ASSERT_TRUE(std::isfinite(v));
        ASSERT_GE(v, 0.0);
    }
}

TEST(Grid, OriginCellIsShifted) {
    const auto axis = AxisSpec::from_step(-5.0, 5.0, 0.1);
    const auto grid = sample_grid(StateSpec::fock(0), Representation::planar, axis, axis);
    ASSERT_TRUE(grid.shifted_cell.has_value());
    EXPECT_EQ(*grid.shifted_cell, 50u * grid.cols() + 50u);
    EXPECT_NEAR(grid.coordinate(50, 50).first, 0.05, 1e-15);
    EXPECT_NEAR(grid.at(50, 50), closed_form::vacuum_planar(0.05, 0.0), 1e-12);
    EXPECT_NEAR(grid.at(60, 50), std::exp(-1.0) / std::sqrt(pi), 1e-12);
}

TEST(Grid, VacuumOpticalRowSums) {
    const auto grid = sample_grid(StateSpec::fock(0), Representation::optical, AxisSpec::from_step(-6.0, 6.0, 0.05),
                                  AxisSpec::periodic(64));
    for (std::size_t j = 0; j < grid.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.rows(); ++i) sum += grid.at(i, j);
        EXPECT_NEAR(sum * 0.05, 1.0, 1e-6);
    }
}

TEST(Grid, FockOnePlanarAtUnitRadius) {
    const auto axis = AxisSpec::from_step(-2.0, 2.0, 0.25);
    const auto grid = sample_grid(StateSpec::fock(1), Representation::planar, axis, axis);
    EXPECT_NEAR(grid.at(12, 8), 4.0 * std::exp(-1.0) / (2.0 * std::sqrt(pi)), 1e-10);
    EXPECT_NEAR(grid.at(8, 4), 4.0 * std::exp(-1.0) / (2.0 * std::sqrt(pi)), 1e-10);
}

TEST(Grid, WignerRepresentation) {
    const AxisSpec axis{-1.0, 1.0, 5, true};
    const auto grid = sample_grid(StateSpec::fock(1), Representation::wigner, axis, axis);
    EXPECT_NEAR(grid.at(2, 2), -1.0 / pi, 1e-8);
    EXPECT_THROW(sample_grid(StateSpec::fock(0), Representation::symplectic, axis, axis), Error);
}

TEST(Grid, IndependentOfThreadCount) {
    const auto state = StateSpec::coherent({0.8, -0.6});
    const auto axis = AxisSpec::from_step(-3.0, 3.0, 0.2);
    ::setenv("TOMO_NUM_THREADS", "1", 1);
    EXPECT_EQ(grid_threads(), 1u);
    const auto serial = sample_grid(state, Representation::planar, axis, axis);
    ::setenv("TOMO_NUM_THREADS", "7", 1);
    EXPECT_EQ(grid_threads(), 7u);
    const auto parallel = sample_grid(state, Representation::planar, axis, axis);
    ::unsetenv("TOMO_NUM_THREADS");
    EXPECT_EQ(serial.values, parallel.values);
}
