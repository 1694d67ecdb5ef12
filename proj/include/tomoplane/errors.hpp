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

#include <stdexcept>
#include <string>
#include <string_view>

namespace tomoplane {

enum class ErrorKind {
    invalid_dimension,
    degree_overflow,
    normalization_error,
    dimension_mismatch,
    integration_error,
    rule_construction_error,
    degenerate_direction,
    degenerate_point,
    invalid_grid,
    ill_conditioned_degree,
    invalid_symbol,
    unsupported_observable,
    calibration_degenerate,
    invalid_config,
    parse_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_dimension: return "invalid-dimension";
        case ErrorKind::degree_overflow: return "degree-overflow";
        case ErrorKind::normalization_error: return "normalization-error";
        case ErrorKind::dimension_mismatch: return "dimension-mismatch";
        case ErrorKind::integration_error: return "integration-error";
        case ErrorKind::rule_construction_error: return "rule-construction-error";
        case ErrorKind::degenerate_direction: return "degenerate-direction";
        case ErrorKind::degenerate_point: return "degenerate-point";
        case ErrorKind::invalid_grid: return "invalid-grid";
        case ErrorKind::ill_conditioned_degree: return "ill-conditioned-degree";
        case ErrorKind::invalid_symbol: return "invalid-symbol";
        case ErrorKind::unsupported_observable: return "unsupported-observable";
        case ErrorKind::calibration_degenerate: return "calibration-degenerate";
        case ErrorKind::invalid_config: return "invalid-config";
        case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

/// Base exception for every failure raised by the library. The kind is the
/// stable, machine-readable part; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a panel-doubling estimate disagrees beyond the caller's
/// tolerance. Both estimates are kept for diagnostics.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double fine, double coarse, double tolerance)
        : Error(ErrorKind::integration_error,
                what + " (fine=" + std::to_string(fine) + ", coarse=" + std::to_string(coarse) +
                    ", tolerance=" + std::to_string(tolerance) + ")"),
          fine_(fine),
          coarse_(coarse),
          tolerance_(tolerance) {}

    double fine() const noexcept { return fine_; }
    double coarse() const noexcept { return coarse_; }
    double tolerance() const noexcept { return tolerance_; }

private:
    double fine_;
    double coarse_;
    double tolerance_;
};

/// Parse failure with the byte offset into the offending input.
class ParseError : public Error {
public:
    ParseError(const std::string& input, std::size_t position, const std::string& message)
        : Error(ErrorKind::parse_error,
                message + " at position " + std::to_string(position) + " in '" + input + "'"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace tomoplane
