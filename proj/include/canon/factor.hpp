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
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "canon/poly.hpp"

namespace canon {

/// unit * prod prime_i^power_i reproduces the factored polynomial exactly.
/// Primes are monic, irreducible and pairwise distinct, listed in the
/// canonical polynomial order.
struct PrimePowerFactorization {
    Scalar unit;
    std::vector<std::pair<Polynomial, int>> factors;

    Polynomial reassemble() const {
        Polynomial r = Polynomial::constant(unit);
        for (const auto& [prime, power] : factors) r = r * prime.pow(power);
        return r;
    }
};

struct FactorOptions {
    std::uint64_t seed = 0;          // drives the randomized equal-degree step
    int max_degree_rationals = 12;   // cap for factoring over Q
};

namespace detail {

// ---------------------------------------------------------------------
// Dense polynomials mod p on raw coefficient vectors (constant term
// first, trailing zeros trimmed). The modulus is a cpp_int so the same
// engine serves GF(p) inputs and the large primes picked internally for
// rational factorization.
// ---------------------------------------------------------------------

using ZPoly = std::vector<Int>;

inline void zp_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int zp_deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ZPoly zp_reduce(ZPoly f, const Int& p) {
    for (Int& c : f) c = mod_p(std::move(c), p);
    zp_trim(f);
    return f;
}

inline ZPoly zp_x() { return ZPoly{0, 1}; }

inline ZPoly zp_add(const ZPoly& a, const ZPoly& b, const Int& p) {
    ZPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] += b[i];
        c[i] = mod_p(std::move(c[i]), p);
    }
    zp_trim(c);
    return c;
}

inline ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const Int& p) {
    ZPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] -= b[i];
        c[i] = mod_p(std::move(c[i]), p);
    }
    zp_trim(c);
    return c;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return zp_reduce(std::move(c), p);
}

inline ZPoly zp_scale(ZPoly f, const Int& c, const Int& p) {
    for (Int& x : f) x = mod_p(x * c, p);
    zp_trim(f);
    return f;
}

inline std::pair<ZPoly, ZPoly> zp_divmod(const ZPoly& a, const ZPoly& b, const Int& p) {
    if (b.empty()) fail(errc::division_by_zero, "mod-p polynomial division by zero");
    ZPoly r = a;
    if (zp_deg(a) < zp_deg(b)) return {ZPoly{}, r};
    ZPoly q(a.size() - b.size() + 1, 0);
    const Int lb_inv = inv_mod(b.back(), p);
    for (int k = zp_deg(a) - zp_deg(b); k >= 0; --k) {
        std::size_t top = static_cast<std::size_t>(k) + b.size() - 1;
        if (top >= r.size() || r[top] == 0) continue;
        Int t = mod_p(r[top] * lb_inv, p);
        q[static_cast<std::size_t>(k)] = t;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[static_cast<std::size_t>(k) + i] = mod_p(r[static_cast<std::size_t>(k) + i] - t * b[i], p);
    }
    zp_trim(q);
    zp_trim(r);
    return {q, r};
}

inline ZPoly zp_mod(const ZPoly& a, const ZPoly& b, const Int& p) { return zp_divmod(a, b, p).second; }

inline ZPoly zp_monic(ZPoly f, const Int& p) {
    if (f.empty() || f.back() == 1) return f;
    return zp_scale(std::move(f), inv_mod(f.back(), p), p);
}

inline ZPoly zp_gcd(ZPoly a, ZPoly b, const Int& p) {
    while (!b.empty()) {
        ZPoly r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(std::move(a), p);
}

inline ZPoly zp_deriv(const ZPoly& f, const Int& p) {
    ZPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mod_p(f[i] * Int(i), p));
    zp_trim(d);
    return d;
}

inline ZPoly zp_powmod(ZPoly base, Int e, const ZPoly& mod, const Int& p) {
    ZPoly r{1};
    base = zp_mod(base, mod, p);
    while (e > 0) {
        if ((e & 1) != 0) r = zp_mod(zp_mul(r, base, p), mod, p);
        base = zp_mod(zp_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

inline Int random_int_mod(std::mt19937_64& rng, const Int& p) {
    unsigned bits = static_cast<unsigned>(msb(p)) + 1;
    Int r = 0;
    for (unsigned got = 0; got < bits + 64; got += 64) r = (r << 64) | Int(rng());
    return mod_p(std::move(r), p);
}

inline ZPoly zp_random_nonconstant(std::mt19937_64& rng, int max_deg, const Int& p) {
    int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg));
    ZPoly f(static_cast<std::size_t>(d) + 1);
    for (Int& c : f) c = random_int_mod(rng, p);
    if (f.back() == 0) f.back() = 1;
    return f;
}

/// Squarefree decomposition over GF(p); emits pairwise-coprime monic
/// squarefree parts with their multiplicities. Multiplicities divisible
/// by p surface through the x^p root-extraction branch (the p-th root of
/// a coefficient in the prime field is the coefficient itself).
inline void zp_squarefree_rec(ZPoly f, const Int& p, int mult,
                              std::vector<std::pair<ZPoly, int>>& out) {
    if (zp_deg(f) <= 0) return;
    ZPoly der = zp_deriv(f, p);
    if (der.empty()) {
        std::size_t pi = p.convert_to<std::size_t>();  // p <= deg f here
        ZPoly g;
        for (std::size_t k = 0; k * pi < f.size(); ++k) g.push_back(f[k * pi]);
        zp_trim(g);
        zp_squarefree_rec(std::move(g), p, mult * static_cast<int>(pi), out);
        return;
    }
    ZPoly c = zp_gcd(f, der, p);
    ZPoly w = zp_divmod(f, c, p).first;
    int i = 1;
    while (zp_deg(w) > 0) {
        ZPoly y = zp_gcd(w, c, p);
        ZPoly z = zp_divmod(w, y, p).first;
        if (zp_deg(z) > 0) out.emplace_back(zp_monic(std::move(z), p), i * mult);
        w = std::move(y);
        c = zp_divmod(c, w, p).first;
        ++i;
    }
    if (zp_deg(c) > 0) zp_squarefree_rec(std::move(c), p, mult, out);  // c is a p-th power
}

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// (product of all irreducible factors of degree d, d) pairs.
inline std::vector<std::pair<ZPoly, int>> zp_distinct_degree(ZPoly f, const Int& p) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly h = zp_mod(zp_x(), f, p);
    int d = 0;
    while (zp_deg(f) >= 2 * (d + 1)) {
        ++d;
        h = zp_powmod(std::move(h), p, f, p);  // h = x^(p^d) mod f
        ZPoly hx = zp_sub(h, zp_x(), p);
        ZPoly g = hx.empty() ? f : zp_gcd(f, hx, p);
        if (zp_deg(g) > 0) {
            out.emplace_back(g, d);
            f = zp_divmod(f, g, p).first;
            h = zp_mod(h, f, p);
        }
    }
    if (zp_deg(f) > 0) out.emplace_back(std::move(f), zp_deg(f));
    return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus; trace probes for p = 2).
inline void zp_equal_degree(const ZPoly& f, int d, const Int& p, std::mt19937_64& rng,
                            std::vector<ZPoly>& out) {
    if (zp_deg(f) == d) {
        out.push_back(f);
        return;
    }
    ZPoly split;
    while (split.empty()) {
        ZPoly a = zp_random_nonconstant(rng, zp_deg(f) - 1, p);
        ZPoly g = zp_gcd(f, a, p);
        if (zp_deg(g) > 0 && zp_deg(g) < zp_deg(f)) {
            split = std::move(g);
            break;
        }
        ZPoly b;
        if (p == 2) {
            ZPoly t = zp_mod(a, f, p), sq = t;
            for (int i = 1; i < d; ++i) {
                sq = zp_mod(zp_mul(sq, sq, p), f, p);
                t = zp_add(t, sq, p);
            }
            b = std::move(t);
        } else {
            Int e = (boost::multiprecision::pow(p, static_cast<unsigned>(d)) - 1) / 2;
            b = zp_sub(zp_powmod(a, e, f, p), ZPoly{1}, p);
        }
        if (b.empty()) continue;
        g = zp_gcd(f, b, p);
        if (zp_deg(g) > 0 && zp_deg(g) < zp_deg(f)) split = std::move(g);
    }
    zp_equal_degree(split, d, p, rng, out);
    zp_equal_degree(zp_divmod(f, split, p).first, d, p, rng, out);
}

/// Monic irreducible factors with multiplicities of a monic f, deg f >= 1.
inline std::vector<std::pair<ZPoly, int>> zp_factor_monic(const ZPoly& f, const Int& p,
                                                          std::mt19937_64& rng) {
    std::vector<std::pair<ZPoly, int>> sqf;
    zp_squarefree_rec(f, p, 1, sqf);
    std::vector<std::pair<ZPoly, int>> out;
    for (const auto& [part, mult] : sqf)
        for (const auto& [prod, d] : zp_distinct_degree(part, p)) {
            std::vector<ZPoly> irr;
            zp_equal_degree(prod, d, p, rng, irr);
            for (ZPoly& q : irr) out.emplace_back(std::move(q), mult);
        }
    return out;
}

// ---------------------------------------------------------------------
// Integer polynomial helpers for the rational path.
// ---------------------------------------------------------------------

using ZZPoly = std::vector<Int>;

inline void zz_trim(ZZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int zz_deg(const ZZPoly& f) { return static_cast<int>(f.size()) - 1; }

inline Int zz_content(const ZZPoly& f) {
    Int c = 0;
    for (const Int& a : f) c = boost::multiprecision::gcd(c, a);
    return c;
}

/// Divides out the content and normalizes the leading coefficient positive.
inline ZZPoly zz_primitive(ZZPoly f) {
    zz_trim(f);
    if (f.empty()) return f;
    Int c = zz_content(f);
    if (f.back() < 0) c = -c;
    for (Int& a : f) a /= c;
    return f;
}

/// Exact division test in Z[x]: returns the quotient when b | a, nothing
/// otherwise. Valid for primitive b (Gauss: an integer quotient exists
/// exactly when b divides a over Q).
inline bool zz_divide_exact(const ZZPoly& a, const ZZPoly& b, ZZPoly& quotient) {
    if (b.empty()) fail(errc::division_by_zero, "integer polynomial division by zero");
    ZZPoly r = a;
    zz_trim(r);
    if (zz_deg(r) < zz_deg(b)) return false;
    ZZPoly q(r.size() - b.size() + 1, 0);
    for (int k = zz_deg(r) - zz_deg(b); k >= 0; --k) {
        std::size_t top = static_cast<std::size_t>(k) + b.size() - 1;
        if (top >= r.size()) continue;
        if (r[top] == 0) continue;
        if (r[top] % b.back() != 0) return false;
        Int t = r[top] / b.back();
        q[static_cast<std::size_t>(k)] = t;
        for (std::size_t i = 0; i < b.size(); ++i) r[static_cast<std::size_t>(k) + i] -= t * b[i];
    }
    for (const Int& c : r)
        if (c != 0) return false;
    quotient = std::move(q);
    return true;
}

/// Deterministic Miller-Rabin (the fixed base set is exact far beyond any
/// modulus this code ever picks).
inline bool is_prime_int(const Int& n) {
    if (n < 2) return false;
    for (int sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == sp) return true;
        if (n % sp == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Big-prime Zassenhaus: factor a primitive squarefree integer polynomial
/// into primitive irreducible factors (leading coefficients positive).
/// The prime exceeds twice the Landau-Mignotte bound, so every true
/// factor is read off directly from a subset of the mod-p factors.
inline std::vector<ZZPoly> zz_factor_squarefree(ZZPoly g, std::mt19937_64& rng) {
    std::vector<ZZPoly> result;
    zz_trim(g);
    if (zz_deg(g) < 1) return result;
    if (zz_deg(g) == 1) {
        result.push_back(std::move(g));
        return result;
    }
    Int l = g.back();
    Int norm2 = 0;
    for (const Int& c : g) norm2 += c * c;
    Int bound = l * (Int(1) << static_cast<unsigned>(zz_deg(g))) * (sqrt(norm2) + 1);
    Int p = 2 * bound + 1;
    for (;; p += 2) {
        if (!is_prime_int(p)) continue;
        if (l % p == 0) continue;
        ZPoly fbar = zp_monic(zp_reduce(g, p), p);
        if (zp_deg(fbar) != zz_deg(g)) continue;
        if (zp_deg(zp_gcd(fbar, zp_deriv(fbar, p), p)) == 0) break;
    }
    ZPoly fbar = zp_monic(zp_reduce(g, p), p);
    std::vector<ZPoly> mods;
    for (auto& [q, mult] : zp_factor_monic(fbar, p, rng)) {
        if (mult != 1) fail(errc::internal_invariant, "squarefree image had a repeated factor");
        mods.push_back(std::move(q));
    }
    std::sort(mods.begin(), mods.end());

    auto lift_symmetric = [&p](ZPoly c) {
        const Int half = p / 2;
        for (Int& x : c)
            if (x > half) x -= p;
        return ZZPoly(c.begin(), c.end());
    };

    std::vector<std::size_t> remaining(mods.size());
    for (std::size_t i = 0; i < mods.size(); ++i) remaining[i] = i;

    int s = 1;
    while (2 * s <= static_cast<int>(remaining.size())) {
        // combinations of `remaining` indices of size s, lexicographic
        std::vector<int> pick(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = i;
        bool removed = false;
        while (true) {
            ZPoly prod{mod_p(l, p)};
            for (int idx : pick) prod = zp_mul(prod, mods[remaining[static_cast<std::size_t>(idx)]], p);
            ZZPoly cand = zz_primitive(lift_symmetric(std::move(prod)));
            ZZPoly quotient;
            if (!cand.empty() && zz_divide_exact(g, cand, quotient)) {
                result.push_back(cand);
                g = zz_primitive(std::move(quotient));
                l = g.back();
                std::vector<std::size_t> keep;
                for (std::size_t i = 0; i < remaining.size(); ++i)
                    if (std::find(pick.begin(), pick.end(), static_cast<int>(i)) == pick.end())
                        keep.push_back(remaining[i]);
                remaining = std::move(keep);
                removed = true;
                break;
            }
            // next combination
            int j = s - 1;
            while (j >= 0 &&
                   pick[static_cast<std::size_t>(j)] == static_cast<int>(remaining.size()) - s + j)
                --j;
            if (j < 0) break;
            ++pick[static_cast<std::size_t>(j)];
            for (int t = j + 1; t < s; ++t)
                pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
        }
        if (!removed) ++s;
    }
    if (zz_deg(g) > 0) result.push_back(std::move(g));
    return result;
}

inline Polynomial zp_to_poly(const ZPoly& f, FieldSpec field) {
    std::vector<Scalar> cs;
    cs.reserve(f.size());
    for (const Int& c : f) cs.push_back(Scalar(field, Rat(c)));
    return Polynomial(field, std::move(cs));
}

}  // namespace detail

namespace detail {

inline PrimePowerFactorization factor_prime_field(const Polynomial& input, const FactorOptions& opt) {
    const FieldSpec f = input.field();
    const Int p(f.modulus());
    std::mt19937_64 rng(opt.seed);
    ZPoly fz;
    for (const Scalar& c : input.monic().coeffs()) fz.push_back(c.num());
    std::vector<std::pair<Polynomial, int>> factors;
    for (const auto& [q, mult] : zp_factor_monic(fz, p, rng))
        factors.emplace_back(zp_to_poly(q, f), mult);
    return {input.lc(), std::move(factors)};
}

/// Yun's squarefree decomposition (characteristic zero); returns monic
/// pairwise-coprime squarefree parts with multiplicities.
inline std::vector<std::pair<Polynomial, int>> yun_squarefree(const Polynomial& f) {
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial fp = f.derivative();
    Polynomial g = gcd(f, fp);
    Polynomial b = divmod(f, g).first;
    Polynomial c = divmod(fp, g).first;
    Polynomial d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Polynomial a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline PrimePowerFactorization factor_rationals(const Polynomial& input, const FactorOptions& opt) {
    if (input.degree() > opt.max_degree_rationals)
        fail(errc::degree_bound_exceeded,
             "degree " + std::to_string(input.degree()) + " exceeds the rational factoring cap of " +
                 std::to_string(opt.max_degree_rationals));
    const FieldSpec f = input.field();
    std::mt19937_64 rng(opt.seed);
    std::vector<std::pair<Polynomial, int>> factors;
    for (const auto& [part, mult] : yun_squarefree(input.monic())) {
        // clear denominators and strip content
        Int scale = 1;
        for (const Scalar& c : part.coeffs()) scale = boost::multiprecision::lcm(scale, c.den());
        ZZPoly pz;
        for (const Scalar& c : part.coeffs()) pz.push_back(c.num() * (scale / c.den()));
        for (const ZZPoly& irr : zz_factor_squarefree(zz_primitive(std::move(pz)), rng)) {
            std::vector<Scalar> cs;
            for (const Int& c : irr) cs.push_back(Scalar(f, detail::make_rat(c, irr.back())));
            factors.emplace_back(Polynomial(f, std::move(cs)), mult);
        }
    }
    return {input.lc(), std::move(factors)};
}

}  // namespace detail

/// Prime-power factorization over GF(p) or Q. Deterministic for a fixed
/// seed; verifies the product identity before returning.
inline PrimePowerFactorization factor(const Polynomial& input, const FactorOptions& opt = {}) {
    if (input.degree() < 1) fail(errc::constant_polynomial, "nothing to factor in '" + input.str() + "'");
    PrimePowerFactorization r = input.field().is_prime_field()
                                    ? detail::factor_prime_field(input, opt)
                                    : detail::factor_rationals(input, opt);
    std::sort(r.factors.begin(), r.factors.end(),
              [](const auto& a, const auto& b) { return poly_canonical_less(a.first, b.first); });
    if (!(r.reassemble() == input))
        fail(errc::internal_invariant, "factorization does not reproduce its input");
    return r;
}

}  // namespace canon
