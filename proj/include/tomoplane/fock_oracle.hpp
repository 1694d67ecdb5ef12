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

// Truncated number-basis operators and pure states. This is the exact
// reference every tomographic average is checked against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tomoplane/errors.hpp"

namespace tomoplane {

using complex = std::complex<double>;

inline constexpr int default_dimension = 64;

/// Binomial coefficient as a double; exact for the degrees used here.
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

/// Dense operator on the truncated number basis. The scalar type is a
/// template parameter so identities can be checked in extended precision;
/// entries of degree-5 words reach ~1e4 at D = 64, where double rounding alone
/// is ~1e-11.
template <class Real = double>
class BasicFockOperator {
public:
    using scalar = std::complex<Real>;
    using matrix = Eigen::Matrix<scalar, Eigen::Dynamic, Eigen::Dynamic>;

    BasicFockOperator() = default;
    explicit BasicFockOperator(matrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols())
            throw Error(ErrorKind::dimension_mismatch, "operator matrix must be square");
    }

    static BasicFockOperator zero(int dim) { return BasicFockOperator(matrix::Zero(dim, dim)); }
    static BasicFockOperator identity(int dim) { return BasicFockOperator(matrix::Identity(dim, dim)); }

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const matrix& entries() const noexcept { return entries_; }
    scalar operator()(int row, int col) const { return entries_(row, col); }

    BasicFockOperator adjoint() const { return BasicFockOperator(entries_.adjoint()); }

    friend BasicFockOperator operator*(const BasicFockOperator& a, const BasicFockOperator& b) {
        check_same(a, b);
        return BasicFockOperator(a.entries_ * b.entries_);
    }
    friend BasicFockOperator operator+(const BasicFockOperator& a, const BasicFockOperator& b) {
        check_same(a, b);
        return BasicFockOperator(a.entries_ + b.entries_);
    }
    friend BasicFockOperator operator-(const BasicFockOperator& a, const BasicFockOperator& b) {
        check_same(a, b);
        return BasicFockOperator(a.entries_ - b.entries_);
    }
    friend BasicFockOperator operator*(scalar s, const BasicFockOperator& a) { return BasicFockOperator(s * a.entries_); }
    friend BasicFockOperator operator*(Real s, const BasicFockOperator& a) {
        return BasicFockOperator(scalar(s, Real(0)) * a.entries_);
    }

    /// Largest |entry| of (this - other) over indices < interior.
    double max_deviation(const BasicFockOperator& other, int interior) const {
        check_same(*this, other);
        const int k = std::clamp(interior, 0, dim());
        if (k == 0) return 0.0;
        return static_cast<double>((entries_.topLeftCorner(k, k) - other.entries_.topLeftCorner(k, k)).cwiseAbs().maxCoeff());
    }

    double hermiticity_defect(int interior) const { return max_deviation(adjoint(), interior); }

    bool all_finite() const { return entries_.allFinite(); }

    /// Rounded copy in another precision.
    template <class Other>
    BasicFockOperator<Other> cast() const {
        return BasicFockOperator<Other>(entries_.template cast<std::complex<Other>>());
    }

private:
    static void check_same(const BasicFockOperator& a, const BasicFockOperator& b) {
        if (a.dim() != b.dim())
            throw Error(ErrorKind::dimension_mismatch,
                        "operator dimensions differ: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }

    matrix entries_;
};

using FockOperator = BasicFockOperator<double>;
using ComplexMatrix = FockOperator::matrix;

namespace detail {
inline void require_dimension(int dim) {
    if (dim < 2) throw Error(ErrorKind::invalid_dimension, "truncation dimension must be >= 2, got " + std::to_string(dim));
}
inline void require_degree(int m, int n, int dim) {
    if (m < 0 || n < 0) throw Error(ErrorKind::degree_overflow, "negative operator degree");
    if (4 * (m + n) > dim)
        throw Error(ErrorKind::degree_overflow, "degree " + std::to_string(m + n) + " too large for dimension " +
                                                    std::to_string(dim) + " (need 4(m+n) <= D)");
}
}  // namespace detail

/// a|n> = sqrt(n)|n-1>.
template <class Real = double>
BasicFockOperator<Real> annihilation_op(int dim) {
    detail::require_dimension(dim);
    using Op = BasicFockOperator<Real>;
    typename Op::matrix a = Op::matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<Real>(n));
    return Op(std::move(a));
}

template <class Real = double>
BasicFockOperator<Real> creation_op(int dim) {
    return annihilation_op<Real>(dim).adjoint();
}

/// q = (a + a^dagger) / sqrt(2).
template <class Real = double>
BasicFockOperator<Real> position_op(int dim) {
    const auto a = annihilation_op<Real>(dim);
    return (Real(1) / std::sqrt(Real(2))) * (a + a.adjoint());
}

/// p = (a - a^dagger) / (i sqrt(2)).
template <class Real = double>
BasicFockOperator<Real> momentum_op(int dim) {
    const auto a = annihilation_op<Real>(dim);
    return std::complex<Real>(Real(0), Real(-1) / std::sqrt(Real(2))) * (a - a.adjoint());
}

/// Diagonal (0, 1, ..., D-1). Exact on the whole truncated space, unlike
/// (q^2 + p^2 - 1)/2 which is corrupted in the top corner.
template <class Real = double>
BasicFockOperator<Real> number_op(int dim) {
    detail::require_dimension(dim);
    using Op = BasicFockOperator<Real>;
    typename Op::matrix n = Op::matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<Real>(k);
    return Op(std::move(n));
}

/// Sum of all C(m+n, n) distinct orderings of m q's and n p's. Built by the
/// recursion S(m,n) = q S(m-1,n) + p S(m,n-1) (split on the first letter).
template <class Real = double>
BasicFockOperator<Real> symmetric_word_sum(int m, int n, int dim) {
    detail::require_dimension(dim);
    detail::require_degree(m, n, dim);
    using Op = BasicFockOperator<Real>;
    const Op q = position_op<Real>(dim);
    const Op p = momentum_op<Real>(dim);
    // table[i][j] = S(i, j)
    std::vector<std::vector<Op>> table(m + 1, std::vector<Op>(n + 1));
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == 0 && j == 0) {
                table[i][j] = Op::identity(dim);
                continue;
            }
            Op acc = Op::zero(dim);
            if (i > 0) acc = acc + q * table[i - 1][j];
            if (j > 0) acc = acc + p * table[i][j - 1];
            table[i][j] = std::move(acc);
        }
    }
    return table[m][n];
}

/// sum_s C(n,s) p^s q^m p^(n-s), equal to
/// 2^n / C(m+n,n) times symmetric_word_sum(m, n) away from the truncation edge.
template <class Real = double>
BasicFockOperator<Real> binomial_sandwich(int m, int n, int dim) {
    detail::require_dimension(dim);
    detail::require_degree(m, n, dim);
    using Op = BasicFockOperator<Real>;
    const Op q = position_op<Real>(dim);
    const Op p = momentum_op<Real>(dim);
    std::vector<Op> p_pow{Op::identity(dim)};
    for (int s = 1; s <= n; ++s) p_pow.push_back(p * p_pow.back());
    Op q_m = Op::identity(dim);
    for (int s = 0; s < m; ++s) q_m = q * q_m;
    Op acc = Op::zero(dim);
    for (int s = 0; s <= n; ++s) acc = acc + static_cast<Real>(binomial(n, s)) * (p_pow[s] * q_m * p_pow[n - s]);
    return acc;
}

enum class StateKind { coherent, fock, superposition };

/// A pure state as a coefficient vector over |0>, ..., |D-1>.
class StateSpec {
public:
    static StateSpec coherent(complex alpha, int dim = default_dimension) {
        detail::require_dimension(dim);
        std::vector<complex> c(dim);
        c[0] = std::exp(-0.5 * std::norm(alpha));
        for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        StateSpec s(StateKind::coherent, std::move(c));
        s.alpha_ = alpha;
        s.normalize();
        return s;
    }

    static StateSpec fock(int n, int dim = default_dimension) {
        detail::require_dimension(dim);
        if (n < 0 || n >= dim)
            throw Error(ErrorKind::invalid_dimension,
                        "fock(" + std::to_string(n) + ") needs n < D = " + std::to_string(dim));
        std::vector<complex> c(dim);
        c[n] = 1.0;
        StateSpec s(StateKind::fock, std::move(c));
        s.fock_index_ = n;
        return s;
    }

    /// Explicit coefficients, zero-padded to `dim`. With `normalize` false the
    /// input must already have unit norm.
    static StateSpec superposition(std::vector<complex> coefficients, int dim = default_dimension,
                                   bool normalize = true) {
        detail::require_dimension(dim);
        if (coefficients.empty() || static_cast<int>(coefficients.size()) > dim)
            throw Error(ErrorKind::invalid_dimension, "superposition needs 1..D coefficients");
        coefficients.resize(dim);
        StateSpec s(StateKind::superposition, std::move(coefficients));
        if (normalize) s.normalize();
        s.check_normalized();
        return s;
    }

    StateKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return static_cast<int>(coefficients_.size()); }
    const std::vector<complex>& coefficients() const noexcept { return coefficients_; }
    complex alpha() const noexcept { return alpha_; }
    int fock_index() const noexcept { return fock_index_; }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto& c : coefficients_) acc += std::norm(c);
        return acc;
    }

    /// Highest index whose coefficient is not negligible.
    int highest_occupied(double cutoff = 1e-14) const {
        for (int n = dim() - 1; n >= 0; --n)
            if (std::abs(coefficients_[n]) > cutoff) return n;
        return 0;
    }

    /// Phase-space scale: coherent displacement |alpha| sqrt(2), otherwise the
    /// turning point sqrt(2n+1) of the highest occupied level.
    double extent() const {
        if (kind_ == StateKind::coherent) return std::abs(alpha_) * std::sqrt(2.0);
        return std::sqrt(2.0 * highest_occupied() + 1.0);
    }

    /// Displacement-like scale: |alpha| for coherent states, sqrt(n) for the
    /// highest occupied level otherwise.
    double displacement_scale() const {
        if (kind_ == StateKind::coherent) return std::abs(alpha_);
        return std::sqrt(static_cast<double>(highest_occupied()));
    }

    std::string descriptor() const {
        char buf[96];
        switch (kind_) {
            case StateKind::coherent:
                std::snprintf(buf, sizeof buf, "coherent:%.17g%+.17gi", alpha_.real(), alpha_.imag());
                return buf;
            case StateKind::fock:
                return "fock:" + std::to_string(fock_index_);
            case StateKind::superposition: {
                std::string out = "super:";
                const int top = highest_occupied(0.0);
                for (int n = 0; n <= top; ++n) {
                    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", coefficients_[n].real(), coefficients_[n].imag());
                    if (n) out += ',';
                    out += buf;
                }
                return out;
            }
        }
        return {};
    }

    void check_normalized(double tolerance = 1e-10) const {
        const double norm = norm_squared();
        if (!(std::abs(norm - 1.0) <= tolerance))
            throw Error(ErrorKind::normalization_error, "state norm^2 = " + std::to_string(norm));
    }

private:
    StateSpec(StateKind kind, std::vector<complex> c) : kind_(kind), coefficients_(std::move(c)) {}

    void normalize() {
        const double norm = std::sqrt(norm_squared());
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw Error(ErrorKind::normalization_error, "state has zero or non-finite norm");
        for (auto& c : coefficients_) c /= norm;
    }

    StateKind kind_;
    std::vector<complex> coefficients_;
    complex alpha_{0.0, 0.0};
    int fock_index_ = -1;
};

/// |psi><psi|.
inline FockOperator density_matrix(const StateSpec& state) {
    state.check_normalized();
    Eigen::VectorXcd psi(state.dim());
    for (int n = 0; n < state.dim(); ++n) psi(n) = state.coefficients()[n];
    return FockOperator(psi * psi.adjoint());
}

/// Tr(rho A) = <psi|A|psi>, with the imaginary part kept for diagnostics.
inline complex expectation_trace_complex(const StateSpec& state, const FockOperator& op) {
    if (state.dim() != op.dim())
        throw Error(ErrorKind::dimension_mismatch, "state dimension " + std::to_string(state.dim()) +
                                                       " vs operator dimension " + std::to_string(op.dim()));
    state.check_normalized();
    Eigen::VectorXcd psi(state.dim());
    for (int n = 0; n < state.dim(); ++n) psi(n) = state.coefficients()[n];
    return psi.dot(op.entries() * psi);
}

inline double expectation_trace(const StateSpec& state, const FockOperator& op) {
    return expectation_trace_complex(state, op).real();
}

}  // namespace tomoplane
