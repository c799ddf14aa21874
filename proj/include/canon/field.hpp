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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "canon/errors.hpp"

namespace canon {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class FieldKind { rationals, prime_field };

/// The coefficient field: the rationals or GF(p) for a prime p.
/// Instances are small values, freely copyable and comparable.
class FieldSpec {
  public:
    static FieldSpec rationals() noexcept { return FieldSpec(FieldKind::rationals, 0); }

    /// GF(p). The modulus is certified prime by trial division; anything
    /// composite (or < 2) is rejected here so no later code has to care.
    static FieldSpec gf(std::int64_t p) {
        if (p < 2) fail(errc::composite_modulus, "GF modulus must be at least 2, got " + std::to_string(p));
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                fail(errc::composite_modulus,
                     "GF modulus " + std::to_string(p) + " is divisible by " + std::to_string(d));
        return FieldSpec(FieldKind::prime_field, p);
    }

    FieldKind kind() const noexcept { return kind_; }
    bool is_rationals() const noexcept { return kind_ == FieldKind::rationals; }
    bool is_prime_field() const noexcept { return kind_ == FieldKind::prime_field; }

    std::int64_t modulus() const {
        if (!is_prime_field()) fail(errc::invalid_argument, "the rationals have no modulus");
        return p_;
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept = default;

    std::string str() const { return is_rationals() ? std::string("q") : "gf " + std::to_string(p_); }

  private:
    FieldSpec(FieldKind k, std::int64_t p) : kind_(k), p_(p) {}

    FieldKind kind_;
    std::int64_t p_;
};

namespace detail {

inline Int mod_p(Int x, const Int& p) {
    x %= p;
    if (x < 0) x += p;
    return x;
}

/// num/den as a fully normalized rational (sign moved to the numerator,
/// gcd divided out); the raw two-argument constructor rejects negative
/// denominators.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) fail(errc::zero_denominator, "rational with zero denominator");
    return Rat(num) / Rat(den);
}

/// a^{-1} mod p by the extended Euclidean algorithm.
inline Int inv_mod(Int a, const Int& p) {
    a = mod_p(std::move(a), p);
    if (a == 0) fail(errc::division_by_zero, "zero has no inverse mod " + p.str());
    Int r0 = a, r1 = p, s0 = 1, s1 = 0;
    while (r1 != 0) {
        Int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    // r0 = gcd(a, p) = 1 because p is prime and a is nonzero mod p
    return mod_p(std::move(s0), p);
}

}  // namespace detail

/// A field element kept in canonical form: a reduced fraction with
/// positive denominator over Q, a residue in [0, p) over GF(p).
/// Scalars carry their FieldSpec; mixing fields raises field_mismatch.
class Scalar {
  public:
    Scalar(FieldSpec field, Rat value) : field_(field), v_(std::move(value)) { canonicalize(); }
    Scalar(FieldSpec field, Int value) : Scalar(field, Rat(std::move(value))) {}

    static Scalar zero(FieldSpec f) { return Scalar(f, Rat(0)); }
    static Scalar one(FieldSpec f) { return Scalar(f, Rat(1)); }
    static Scalar of(FieldSpec f, long long v) { return Scalar(f, Rat(v)); }

    /// Parses "n", "-n" or "n/d" (fractions over the rationals only).
    static Scalar parse(std::string_view text, FieldSpec field) {
        auto all_digits = [](std::string_view s) {
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
        if (text.empty()) fail(errc::parse_error, "empty scalar");
        std::string_view body = text;
        bool neg = false;
        if (body.front() == '-') {
            neg = true;
            body.remove_prefix(1);
        }
        auto slash = body.find('/');
        std::string_view num_s = slash == std::string_view::npos ? body : body.substr(0, slash);
        if (!all_digits(num_s)) fail(errc::parse_error, "bad scalar '" + std::string(text) + "'");
        Int n{std::string(num_s)};
        if (neg) n = -n;
        if (slash == std::string_view::npos) return Scalar(field, Rat(n));
        if (field.is_prime_field())
            fail(errc::parse_error, "fraction '" + std::string(text) + "' not allowed over " + field.str());
        std::string_view den_s = body.substr(slash + 1);
        if (!all_digits(den_s)) fail(errc::parse_error, "bad scalar '" + std::string(text) + "'");
        Int d{std::string(den_s)};
        if (d == 0) fail(errc::zero_denominator, "zero denominator in '" + std::string(text) + "'");
        return Scalar(field, detail::make_rat(n, d));
    }

    const FieldSpec& field() const noexcept { return field_; }
    const Rat& value() const noexcept { return v_; }
    Int num() const { return numerator(v_); }
    Int den() const { return denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator-() const { return Scalar(field_, -v_); }

    Scalar inverse() const {
        if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
        if (field_.is_prime_field())
            return Scalar(field_, Rat(detail::inv_mod(num(), Int(field_.modulus()))));
        return Scalar(field_, detail::make_rat(den(), num()));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_fields(a, b);
        return Scalar(a.field_, a.v_ + b.v_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        check_fields(a, b);
        return Scalar(a.field_, a.v_ - b.v_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_fields(a, b);
        return Scalar(a.field_, a.v_ * b.v_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        check_fields(a, b);
        if (b.is_zero()) fail(errc::division_by_zero, "scalar division by zero");
        return a * b.inverse();
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        check_fields(a, b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const {
        Int d = den();
        return d == 1 ? num().str() : num().str() + "/" + d.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

  private:
    static void check_fields(const Scalar& a, const Scalar& b) {
        if (!(a.field_ == b.field_))
            fail(errc::field_mismatch, "scalars from " + a.field_.str() + " and " + b.field_.str());
    }

    void canonicalize() {
        if (field_.is_prime_field()) {
            const Int p(field_.modulus());
            Int n = detail::mod_p(numerator(v_), p);
            Int d = detail::mod_p(denominator(v_), p);
            if (d == 0) fail(errc::division_by_zero, "denominator vanishes mod " + p.str());
            if (d != 1) n = detail::mod_p(n * detail::inv_mod(d, p), p);
            v_ = Rat(n);
        }
        // cpp_rational keeps rational values reduced with positive denominator
    }

    FieldSpec field_;
    Rat v_;
};

/// Strict order on scalars of one field (rational order of the canonical
/// representatives; residues compare as integers).
inline bool scalar_less(const Scalar& a, const Scalar& b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "ordering scalars from different fields");
    return a.value() < b.value();
}

}  // namespace canon
