/*
   Copyright 2026 The canon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace canon {

/// Failure categories. Every throwing operation in the library raises
/// canon::error with one of these codes, so callers can branch on the
/// cause without string matching.
enum class errc {
    field_mismatch,
    division_by_zero,
    zero_denominator,
    parse_error,
    composite_modulus,
    invalid_argument,
    non_square,
    shape_mismatch,
    singular_matrix,
    inconsistent_system,
    not_invariant,
    degenerate_pairing,
    not_coprime,
    both_zero,
    constant_polynomial,
    degree_bound_exceeded,
    not_a_factor,
    internal_invariant,
    budget_exceeded,
    infinite_field,
};

inline const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::field_mismatch: return "field mismatch";
        case errc::division_by_zero: return "division by zero";
        case errc::zero_denominator: return "zero denominator";
        case errc::parse_error: return "parse error";
        case errc::composite_modulus: return "composite modulus";
        case errc::invalid_argument: return "invalid argument";
        case errc::non_square: return "non-square matrix";
        case errc::shape_mismatch: return "shape mismatch";
        case errc::singular_matrix: return "singular matrix";
        case errc::inconsistent_system: return "inconsistent system";
        case errc::not_invariant: return "subspace not invariant";
        case errc::degenerate_pairing: return "degenerate pairing";
        case errc::not_coprime: return "polynomials not coprime";
        case errc::both_zero: return "both arguments zero";
        case errc::constant_polynomial: return "constant polynomial";
        case errc::degree_bound_exceeded: return "degree bound exceeded";
        case errc::not_a_factor: return "not a factor";
        case errc::internal_invariant: return "internal invariant violated";
        case errc::budget_exceeded: return "enumeration budget exceeded";
        case errc::infinite_field: return "field is infinite";
    }
    return "unknown error";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace canon
