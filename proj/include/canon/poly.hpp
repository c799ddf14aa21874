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

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "canon/field.hpp"

namespace canon {

/// Dense univariate polynomial over a FieldSpec field. Coefficients are
/// stored from the constant term upward with no trailing zeros, so the
/// zero polynomial is the empty list and degree() is well defined (-1
/// for zero).
class Polynomial {
  public:
    explicit Polynomial(FieldSpec field) : field_(field) {}

    Polynomial(FieldSpec field, std::vector<Scalar> coeffs) : field_(field), c_(std::move(coeffs)) {
        for (const Scalar& c : c_)
            if (!(c.field() == field_)) fail(errc::field_mismatch, "coefficient from wrong field");
        trim();
    }

    static Polynomial zero(FieldSpec f) { return Polynomial(f); }
    static Polynomial one(FieldSpec f) { return constant(Scalar::one(f)); }
    static Polynomial x(FieldSpec f) { return Polynomial(f, {Scalar::zero(f), Scalar::one(f)}); }

    static Polynomial constant(Scalar c) {
        FieldSpec f = c.field();
        return Polynomial(f, std::vector<Scalar>{std::move(c)});
    }

    static Polynomial from_ints(FieldSpec f, const std::vector<long long>& coeffs) {
        std::vector<Scalar> cs;
        cs.reserve(coeffs.size());
        for (long long c : coeffs) cs.push_back(Scalar::of(f, c));
        return Polynomial(f, std::move(cs));
    }

    const FieldSpec& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const { return degree() == 0 && c_[0].is_one(); }
    const std::vector<Scalar>& coeffs() const noexcept { return c_; }

    Scalar coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Scalar::zero(field_);
        return c_[static_cast<std::size_t>(i)];
    }

    Scalar lc() const {
        if (is_zero()) fail(errc::invalid_argument, "zero polynomial has no leading coefficient");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && c_.back().is_one(); }

    Polynomial monic() const { return *this * lc().inverse(); }

    Polynomial derivative() const {
        std::vector<Scalar> d;
        for (int i = 1; i <= degree(); ++i) d.push_back(coeff(i) * Scalar::of(field_, i));
        return Polynomial(field_, std::move(d));
    }

    Scalar eval(const Scalar& at) const {
        Scalar r = Scalar::zero(field_);
        for (int i = degree(); i >= 0; --i) r = r * at + coeff(i);
        return r;
    }

    Polynomial pow(int e) const {
        if (e < 0) fail(errc::invalid_argument, "negative polynomial power");
        Polynomial r = one(field_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_fields(a, b);
        std::vector<Scalar> c;
        int n = std::max(a.degree(), b.degree());
        for (int i = 0; i <= n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
        return Polynomial(a.field_, std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_fields(a, b);
        std::vector<Scalar> c;
        int n = std::max(a.degree(), b.degree());
        for (int i = 0; i <= n; ++i) c.push_back(a.coeff(i) - b.coeff(i));
        return Polynomial(a.field_, std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_fields(a, b);
        if (a.is_zero() || b.is_zero()) return zero(a.field_);
        std::vector<Scalar> c(static_cast<std::size_t>(a.degree() + b.degree() + 1),
                              Scalar::zero(a.field_));
        for (int i = 0; i <= a.degree(); ++i)
            for (int j = 0; j <= b.degree(); ++j)
                c[static_cast<std::size_t>(i + j)] =
                    c[static_cast<std::size_t>(i + j)] + a.coeff(i) * b.coeff(j);
        return Polynomial(a.field_, std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Scalar& s) {
        if (!(a.field_ == s.field())) fail(errc::field_mismatch, "scalar from wrong field");
        std::vector<Scalar> c;
        c.reserve(a.c_.size());
        for (const Scalar& ci : a.c_) c.push_back(ci * s);
        return Polynomial(a.field_, std::move(c));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        check_fields(a, b);
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// High-degree-first rendering, e.g. "x^2 - 2/3x + 1"; "0" for zero.
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int d = degree(); d >= 0; --d) {
            Scalar c = coeff(d);
            if (c.is_zero()) continue;
            bool neg = c.value() < 0;
            if (first) {
                if (neg) os << '-';
            } else {
                os << (neg ? " - " : " + ");
            }
            Scalar mag = neg ? -c : c;
            std::string ms = mag.str();
            if (d == 0) {
                os << ms;
            } else {
                if (ms != "1") os << ms;
                os << 'x';
                if (d > 1) os << '^' << d;
            }
            first = false;
        }
        return os.str();
    }

    /// Accepts the str() syntax ("x^2 - 2/3x + 1", optional '*' between a
    /// coefficient and x) and the coefficient-list form "poly: c0 c1 c2 ...".
    static Polynomial parse(std::string_view text, FieldSpec field);

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

  private:
    static void check_fields(const Polynomial& a, const Polynomial& b) {
        if (!(a.field_ == b.field_))
            fail(errc::field_mismatch, "polynomials over " + a.field_.str() + " and " + b.field_.str());
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldSpec field_;
    std::vector<Scalar> c_;
};

/// Exact division with remainder: a = q*b + r, deg r < deg b.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "divmod over different fields");
    if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    const FieldSpec f = a.field();
    Polynomial r = a;
    std::vector<Scalar> q(static_cast<std::size_t>(std::max(0, a.degree() - b.degree() + 1)),
                          Scalar::zero(f));
    const Scalar lb_inv = b.lc().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Scalar t = r.lc() * lb_inv;
        int k = r.degree() - b.degree();
        q[static_cast<std::size_t>(k)] = t;
        // r -= t * x^k * b
        std::vector<Scalar> shifted(static_cast<std::size_t>(k), Scalar::zero(f));
        for (const Scalar& c : b.coeffs()) shifted.push_back(c * t);
        r = r - Polynomial(f, std::move(shifted));
    }
    return {Polynomial(f, std::move(q)), r};
}

/// Monic gcd. Any common divisor of a and b divides the result.
inline Polynomial gcd(Polynomial a, Polynomial b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "gcd over different fields");
    if (a.is_zero() && b.is_zero()) fail(errc::both_zero, "gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

struct ExtendedGcd {
    Polynomial g;  // monic gcd
    Polynomial s;  // s*a + t*b = g
    Polynomial t;
};

inline ExtendedGcd ext_gcd(const Polynomial& a, const Polynomial& b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "ext_gcd over different fields");
    if (a.is_zero() && b.is_zero()) fail(errc::both_zero, "ext_gcd(0, 0) is undefined");
    const FieldSpec f = a.field();
    Polynomial r0 = a, r1 = b;
    Polynomial s0 = Polynomial::one(f), s1 = Polynomial::zero(f);
    Polynomial t0 = Polynomial::zero(f), t1 = Polynomial::one(f);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Polynomial s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Polynomial t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Scalar u = r0.lc().inverse();
    return {r0 * u, s0 * u, t0 * u};
}

/// Cofactors h_i with sum g_i * h_i = 1, aligned with the input list.
struct BezoutCertificate {
    std::vector<Polynomial> cofactors;
};

inline BezoutCertificate bezout_multi(const std::vector<Polynomial>& g) {
    if (g.empty()) fail(errc::invalid_argument, "bezout_multi needs at least one polynomial");
    const FieldSpec f = g[0].field();
    Polynomial d = g[0];
    std::vector<Polynomial> cof{Polynomial::one(f)};
    for (std::size_t i = 1; i < g.size(); ++i) {
        ExtendedGcd e = ext_gcd(d, g[i]);
        for (Polynomial& c : cof) c = c * e.s;
        cof.push_back(e.t);
        d = e.g;
    }
    if (d.is_zero() || d.degree() > 0)
        fail(errc::not_coprime, "gcd of the list is " + d.str() + ", expected 1");
    Scalar u = d.lc().inverse();  // rescale in case no ext_gcd step ran
    Polynomial check = Polynomial::zero(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
        cof[i] = cof[i] * u;
        check = check + g[i] * cof[i];
    }
    if (!check.is_one()) fail(errc::internal_invariant, "bezout identity failed to verify");
    return {std::move(cof)};
}

/// Total order used wherever factors or blocks need a canonical sequence:
/// by degree, then by the coefficient tuple from the constant term up.
inline bool poly_canonical_less(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) != b.coeff(i)) return scalar_less(a.coeff(i), b.coeff(i));
    }
    return false;
}

inline Polynomial Polynomial::parse(std::string_view text, FieldSpec field) {
    std::string s(text);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    // coefficient-list form
    if (s.compare(i, 5, "poly:") == 0) {
        std::istringstream in(s.substr(i + 5));
        std::vector<Scalar> cs;
        std::string tok;
        while (in >> tok) cs.push_back(Scalar::parse(tok, field));
        return Polynomial(field, std::move(cs));
    }
    if (i == s.size()) fail(errc::parse_error, "empty polynomial");
    std::vector<Scalar> acc;
    auto bump = [&](int e, const Scalar& c) {
        while (static_cast<int>(acc.size()) <= e) acc.push_back(Scalar::zero(field));
        acc[static_cast<std::size_t>(e)] = acc[static_cast<std::size_t>(e)] + c;
    };
    bool any = false;
    while (true) {
        skip_ws();
        if (i == s.size()) break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (any) {
            fail(errc::parse_error, "expected '+' or '-' before '" + s.substr(i) + "'");
        }
        std::string tok;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) tok += s[i++];
        if (!tok.empty() && i < s.size() && s[i] == '/') {
            tok += s[i++];
            if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                fail(errc::parse_error, "bad fraction in polynomial");
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) tok += s[i++];
        }
        bool have_coeff = !tok.empty();
        skip_ws();
        if (have_coeff && i < s.size() && s[i] == '*') {
            ++i;
            skip_ws();
        }
        int exp = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            exp = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                std::string es;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) es += s[i++];
                if (es.empty()) fail(errc::parse_error, "missing exponent after '^'");
                if (es.size() > 4) fail(errc::parse_error, "exponent too large: " + es);
                exp = std::stoi(es);
            }
        } else if (!have_coeff) {
            fail(errc::parse_error, "expected coefficient or 'x' at '" + s.substr(i) + "'");
        }
        Scalar c = have_coeff ? Scalar::parse(tok, field) : Scalar::one(field);
        if (sign < 0) c = -c;
        bump(exp, c);
        any = true;
    }
    return Polynomial(field, std::move(acc));
}

}  // namespace canon
