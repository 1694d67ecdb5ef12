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

// Biorthogonal symbol polynomials. For each degree N the monomials
// g_s = x^(N-s) y^s are paired with polynomials f_k under
//
//   (f, g)_N = (2 / N!) * integral exp(-x^2 - y^2) f(x, y) g(x, y) dx dy
//
// so that (f_k, g_s)_N = delta_ks. f_k is the symbol of the symmetric word sum
// S(N-k, k).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tomoplane/errors.hpp"

namespace tomoplane {

inline constexpr int max_symbol_degree = 40;

/// Real bivariate polynomial sum c_ij x^i y^j, stored without zero terms.
class SymbolPolynomial {
public:
    using Key = std::pair<int, int>;  // (x power, y power)

    SymbolPolynomial() = default;
    explicit SymbolPolynomial(std::map<Key, double> coefficients) : coefficients_(std::move(coefficients)) {
        canonicalize();
    }

    static SymbolPolynomial constant(double c) { return SymbolPolynomial({{{0, 0}, c}}); }
    static SymbolPolynomial monomial(int i, int j, double c = 1.0) { return SymbolPolynomial({{{i, j}, c}}); }

    const std::map<Key, double>& coefficients() const noexcept { return coefficients_; }

    double coefficient(int i, int j) const {
        const auto it = coefficients_.find({i, j});
        return it == coefficients_.end() ? 0.0 : it->second;
    }

    bool empty() const noexcept { return coefficients_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [key, c] : coefficients_) d = std::max(d, key.first + key.second);
        return d;
    }

    bool is_homogeneous() const {
        if (coefficients_.empty()) return true;
        const int d = coefficients_.begin()->first.first + coefficients_.begin()->first.second;
        for (const auto& [key, c] : coefficients_)
            if (key.first + key.second != d) return false;
        return true;
    }

    double operator()(double x, double y) const {
        double acc = 0.0;
        for (const auto& [key, c] : coefficients_) acc += c * ipow(x, key.first) * ipow(y, key.second);
        return acc;
    }

    SymbolPolynomial& operator+=(const SymbolPolynomial& other) {
        for (const auto& [key, c] : other.coefficients_) coefficients_[key] += c;
        canonicalize();
        return *this;
    }
    friend SymbolPolynomial operator+(SymbolPolynomial a, const SymbolPolynomial& b) { return a += b; }
    friend SymbolPolynomial operator*(double s, SymbolPolynomial a) {
        for (auto& [key, c] : a.coefficients_) c *= s;
        a.canonicalize();
        return a;
    }

    friend bool operator==(const SymbolPolynomial&, const SymbolPolynomial&) = default;

private:
    static double ipow(double base, int e) {
        double r = 1.0;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    void canonicalize() { std::erase_if(coefficients_, [](const auto& kv) { return kv.second == 0.0; }); }

    std::map<Key, double> coefficients_;
};

/// int x^k exp(-x^2) dx over the real line.
inline double gaussian_moment(int k) {
    if (k < 0 || k % 2 == 1) return 0.0;
    double v = std::sqrt(std::numbers::pi);
    for (int j = 1; j < k; j += 2) v *= j / 2.0;
    return v;
}

struct GramMatrix {
    int degree = 0;
    Eigen::MatrixXd entries;  // includes the 2/N! prefactor
};

inline GramMatrix gram_matrix(int degree) {
    if (degree < 0) throw Error(ErrorKind::ill_conditioned_degree, "degree must be non-negative");
    double factorial = 1.0;
    for (int k = 2; k <= degree; ++k) factorial *= k;
    GramMatrix g{degree, Eigen::MatrixXd::Zero(degree + 1, degree + 1)};
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= degree; ++j)
            g.entries(i, j) = 2.0 / factorial * gaussian_moment(2 * degree - i - j) * gaussian_moment(i + j);
    return g;
}

struct BiorthogonalSystem {
    int degree = 0;
    std::vector<SymbolPolynomial> symbols;  // symbols[k] pairs with x^(N-k) y^k
    double condition_number = 0.0;          // 1-norm condition of the Gram matrix
};

namespace detail {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int double_factorial(int n) {
    cpp_int r = 1;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

// Exact inverse by Gauss-Jordan elimination.
inline std::vector<std::vector<cpp_rational>> invert(std::vector<std::vector<cpp_rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<cpp_rational>> inv(n, std::vector<cpp_rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw Error(ErrorKind::ill_conditioned_degree, "singular Gram block");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const cpp_rational scale = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= scale;
            inv[col][j] /= scale;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const cpp_rational factor = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] -= factor * a[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

inline BiorthogonalSystem solve_biorthogonal(int degree) {
    const int size = degree + 1;
    // Gram = pi / (2^(N-1) N!) * M with integer entries
    // M_ij = (2N-i-j-1)!! (i+j-1)!! for even i+j, zero otherwise.
    // The zero pattern splits M into even- and odd-index blocks.
    std::vector<std::vector<cpp_rational>> inverse(size, std::vector<cpp_rational>(size, 0));
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<int> idx;
        for (int i = parity; i < size; i += 2) idx.push_back(i);
        if (idx.empty()) continue;
        std::vector<std::vector<cpp_rational>> block(idx.size(), std::vector<cpp_rational>(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) {
                const int s = idx[a] + idx[b];
                block[a][b] = cpp_rational(double_factorial(2 * degree - s - 1) * double_factorial(s - 1));
            }
        const auto block_inv = invert(std::move(block));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) inverse[idx[a]][idx[b]] = block_inv[a][b];
    }

    // Gram^-1 = 2^(N-1) N! / pi * M^-1.
    cpp_rational scale = 1;
    for (int k = 2; k <= degree; ++k) scale *= k;
    if (degree == 0)
        scale /= 2;
    else
        scale *= cpp_rational(cpp_int(1) << (degree - 1));

    BiorthogonalSystem sys;
    sys.degree = degree;
    double inverse_norm = 0.0;
    for (int k = 0; k < size; ++k) {
        std::map<SymbolPolynomial::Key, double> coeffs;
        double column = 0.0;
        for (int i = 0; i < size; ++i) {
            if (inverse[i][k] == 0) continue;
            const double value = static_cast<double>(cpp_rational(scale * inverse[i][k])) / std::numbers::pi;
            coeffs[{degree - i, i}] = value;
            column += std::abs(value);
        }
        inverse_norm = std::max(inverse_norm, column);
        sys.symbols.emplace_back(std::move(coeffs));
    }
    const GramMatrix gram = gram_matrix(degree);
    sys.condition_number = gram.entries.cwiseAbs().colwise().sum().maxCoeff() * inverse_norm;
    return sys;
}

}  // namespace detail

/// Solves the Gram system of degree N exactly in rational arithmetic, then
/// rounds once to double. Results are memoized.
inline const BiorthogonalSystem& biorthogonal_system(int degree) {
    if (degree < 0 || degree > max_symbol_degree)
        throw Error(ErrorKind::ill_conditioned_degree,
                    "degree " + std::to_string(degree) + " outside supported range 0.." + std::to_string(max_symbol_degree));
    static std::mutex mutex;
    static std::map<int, BiorthogonalSystem> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(degree);
    if (it == cache.end()) it = cache.emplace(degree, detail::solve_biorthogonal(degree)).first;
    return it->second;
}

inline std::vector<SymbolPolynomial> biorthogonal_symbols(int degree) { return biorthogonal_system(degree).symbols; }

/// (f, g)_N with exact Gaussian moments.
inline double weighted_product(const SymbolPolynomial& f, const SymbolPolynomial& g, int degree) {
    double factorial = 1.0;
    for (int k = 2; k <= degree; ++k) factorial *= k;
    double acc = 0.0;
    for (const auto& [kf, cf] : f.coefficients())
        for (const auto& [kg, cg] : g.coefficients())
            acc += cf * cg * gaussian_moment(kf.first + kg.first) * gaussian_moment(kf.second + kg.second);
    return 2.0 / factorial * acc;
}

/// Symbol of the symmetric word sum S(m, n).
inline const SymbolPolynomial& word_symbol(int m, int n) {
    if (m < 0 || n < 0 || m + n > max_symbol_degree)
        throw Error(ErrorKind::unsupported_observable,
                    "S(" + std::to_string(m) + "," + std::to_string(n) + ") outside supported degree range");
    return biorthogonal_system(m + n).symbols[n];
}

/// The degree-zero symbol, 1/(2 pi).
inline const SymbolPolynomial& identity_symbol() { return biorthogonal_system(0).symbols[0]; }

/// H(phi) = f(cos phi, sin phi) for homogeneous f.
inline std::function<double(double)> circle_restriction(const SymbolPolynomial& f) {
    if (!f.is_homogeneous()) throw Error(ErrorKind::invalid_symbol, "circle restriction needs a homogeneous symbol");
    return [f](double phi) { return f(std::cos(phi), std::sin(phi)); };
}

/// Real linear combination of word sums S(m, n) and the identity.
struct ObservableExpr {
    std::map<std::pair<int, int>, double> words;
    double identity = 0.0;

    static ObservableExpr word(int m, int n, double coefficient = 1.0) {
        ObservableExpr e;
        e.words[{m, n}] = coefficient;
        return e;
    }
    static ObservableExpr unit(double coefficient = 1.0) {
        ObservableExpr e;
        e.identity = coefficient;
        return e;
    }
    /// N = (q^2 + p^2 - 1) / 2 = (S(2,0) + S(0,2) - I) / 2.
    static ObservableExpr number() {
        ObservableExpr e;
        e.words[{2, 0}] = 0.5;
        e.words[{0, 2}] = 0.5;
        e.identity = -0.5;
        return e;
    }

    ObservableExpr& operator+=(const ObservableExpr& other) {
        for (const auto& [key, c] : other.words) words[key] += c;
        identity += other.identity;
        return *this;
    }
    friend ObservableExpr operator+(ObservableExpr a, const ObservableExpr& b) { return a += b; }
    friend ObservableExpr operator*(double s, ObservableExpr e) {
        for (auto& [key, c] : e.words) c *= s;
        e.identity *= s;
        return e;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [key, c] : words) d = std::max(d, key.first + key.second);
        return d;
    }

    std::string describe() const {
        std::string out;
        char buf[64];
        for (const auto& [key, c] : words) {
            std::snprintf(buf, sizeof buf, "%+.17g*S(%d,%d)", c, key.first, key.second);
            out += buf;
        }
        if (identity != 0.0 || out.empty()) {
            std::snprintf(buf, sizeof buf, "%+.17g*I", identity);
            out += buf;
        }
        return out;
    }
};

inline SymbolPolynomial observable_symbol(const ObservableExpr& expr) {
    SymbolPolynomial out;
    for (const auto& [key, c] : expr.words) out += c * word_symbol(key.first, key.second);
    if (expr.identity != 0.0) out += expr.identity * identity_symbol();
    return out;
}

}  // namespace tomoplane
