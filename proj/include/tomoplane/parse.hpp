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

// Text forms used on the command line:
//
//   state:      fock:<n> | coherent:<re>[+<im>i] | super:<c0>,<c1>,...
//   observable: linear combination of S(m,n), N and I, e.g.
//               0.5*S(2,0) + 0.5*S(0,2) - 0.5*I

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tomoplane/errors.hpp"
#include "tomoplane/fock_oracle.hpp"
#include "tomoplane/symbols.hpp"

namespace tomoplane {

/// "%.17g"; round-trips every finite double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_complex(complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

namespace detail {

class Cursor {
public:
    Cursor(std::string_view text, std::string_view whole, std::size_t offset)
        : text_(text), whole_(whole), offset_(offset) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    std::size_t position() const { return offset_ + pos_; }
    void advance(std::size_t n = 1) { pos_ += n; }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(std::string(whole_), position(), message);
    }

    bool at_number() const {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    double number() {
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr == first) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    int integer() {
        int v = 0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr == first) fail("expected an integer");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

private:
    std::string_view text_;
    std::string_view whole_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

// a | a+bi | a-bi | bi | -bi | i
inline complex parse_complex(Cursor& cur) {
    double sign = 1.0;
    if (cur.accept('-'))
        sign = -1.0;
    else
        cur.accept('+');
    double first = 1.0;
    const bool has_number = cur.at_number();
    if (has_number) first = cur.number();
    if (cur.accept('i')) return {0.0, sign * first};
    if (!has_number) cur.fail("expected a number");
    const double re = sign * first;
    if (cur.peek() != '+' && cur.peek() != '-') return {re, 0.0};
    const double im_sign = cur.peek() == '-' ? -1.0 : 1.0;
    cur.advance();
    const double im = cur.at_number() ? cur.number() : 1.0;
    cur.expect('i');
    return {re, im_sign * im};
}

}  // namespace detail

inline complex parse_complex(std::string_view text) {
    detail::Cursor cur(text, text, 0);
    const complex z = detail::parse_complex(cur);
    if (!cur.done()) cur.fail("unexpected trailing characters");
    return z;
}

/// Parses a state string. Superposition coefficients are normalized.
inline StateSpec parse_state(std::string_view text, int dim = default_dimension) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError(std::string(text), 0, "state needs a 'kind:' prefix");
    const std::string_view kind = text.substr(0, colon);
    const std::string_view body = text.substr(colon + 1);
    detail::Cursor cur(body, text, colon + 1);
    if (kind == "fock") {
        const int n = cur.integer();
        if (!cur.done()) cur.fail("unexpected trailing characters");
        if (n < 0) throw ParseError(std::string(text), colon + 1, "Fock index must be non-negative");
        return StateSpec::fock(n, dim);
    }
    if (kind == "coherent") {
        const complex alpha = detail::parse_complex(cur);
        if (!cur.done()) cur.fail("unexpected trailing characters");
        return StateSpec::coherent(alpha, dim);
    }
    if (kind == "super") {
        std::vector<complex> coeffs;
        coeffs.push_back(detail::parse_complex(cur));
        while (cur.accept(',')) coeffs.push_back(detail::parse_complex(cur));
        if (!cur.done()) cur.fail("unexpected trailing characters");
        if (static_cast<int>(coeffs.size()) > dim)
            throw Error(ErrorKind::invalid_dimension, "superposition has more coefficients than D = " + std::to_string(dim));
        return StateSpec::superposition(std::move(coeffs), dim);
    }
    throw ParseError(std::string(text), 0, "unknown state kind '" + std::string(kind) + "'");
}

inline ObservableExpr parse_observable(std::string_view text) {
    // Strip whitespace, remembering original offsets for error positions.
    std::string compact;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
        compact.push_back(text[i]);
        origin.push_back(i);
    }
    if (compact.empty()) throw ParseError(std::string(text), 0, "empty observable");
    origin.push_back(text.size());

    detail::Cursor cur(compact, compact, 0);
    auto fail_at = [&](const std::string& message) -> void {
        throw ParseError(std::string(text), origin[std::min(cur.position(), origin.size() - 1)], message);
    };

    ObservableExpr expr;
    bool first = true;
    while (!cur.done()) {
        double sign = 1.0;
        if (cur.accept('+')) {
        } else if (cur.accept('-')) {
            sign = -1.0;
        } else if (!first) {
            fail_at("expected '+' or '-'");
        }
        first = false;
        double coefficient = 1.0;
        if (cur.at_number()) {
            try {
                coefficient = cur.number();
            } catch (const ParseError&) {
                fail_at("malformed number");
            }
            if (!cur.accept('*')) {
                // A bare number is a multiple of the identity.
                expr.identity += sign * coefficient;
                continue;
            }
        }
        const char atom = cur.peek();
        if (atom == 'S') {
            cur.advance();
            if (!cur.accept('(')) fail_at("expected '(' after S");
            int m = 0;
            int n = 0;
            try {
                m = cur.integer();
                cur.expect(',');
                n = cur.integer();
                cur.expect(')');
            } catch (const ParseError&) {
                fail_at("malformed S(m,n)");
            }
            if (m < 0 || n < 0 || m + n > max_symbol_degree)
                throw Error(ErrorKind::unsupported_observable,
                            "S(" + std::to_string(m) + "," + std::to_string(n) + ") outside degree range 0.." +
                                std::to_string(max_symbol_degree));
            expr += (sign * coefficient) * ObservableExpr::word(m, n);
        } else if (atom == 'N') {
            cur.advance();
            expr += (sign * coefficient) * ObservableExpr::number();
        } else if (atom == 'I') {
            cur.advance();
            expr.identity += sign * coefficient;
        } else if (std::isalpha(static_cast<unsigned char>(atom))) {
            throw Error(ErrorKind::unsupported_observable,
                        std::string("unsupported generator '") + atom + "' at position " +
                            std::to_string(origin[cur.position()]) + " in '" + std::string(text) + "'");
        } else {
            fail_at(atom == '\0' ? "unexpected end of observable" : std::string("unsupported generator '") + atom + "'");
        }
    }
    return expr;
}

}  // namespace tomoplane
