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

#include <catch2/catch_amalgamated.hpp>

#include "canon/factor.hpp"
#include "support/oracle.hpp"

using namespace canon;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec G2 = FieldSpec::gf(2);
const FieldSpec G3 = FieldSpec::gf(3);
const FieldSpec G7 = FieldSpec::gf(7);

Polynomial P(const char* text, FieldSpec f) { return Polynomial::parse(text, f); }
}  // namespace

TEST_CASE("factoring splits x^2 - 1 over Q") {
    PrimePowerFactorization r = factor(P("x^2 - 1", Q));
    REQUIRE(r.factors.size() == 2);
    CHECK(r.unit.is_one());
    CHECK(r.factors[0].first == P("x - 1", Q));  // constant coeff -1 sorts first
    CHECK(r.factors[0].second == 1);
    CHECK(r.factors[1].first == P("x + 1", Q));
    CHECK(r.factors[1].second == 1);
}

TEST_CASE("x^2 + 1 factors as a square over GF(2) and stays prime over Q") {
    PrimePowerFactorization r2 = factor(P("x^2 + 1", G2));
    REQUIRE(r2.factors.size() == 1);
    CHECK(r2.factors[0].first == P("x + 1", G2));
    CHECK(r2.factors[0].second == 2);

    PrimePowerFactorization rq = factor(P("x^2 + 1", Q));
    REQUIRE(rq.factors.size() == 1);
    CHECK(rq.factors[0].first == P("x^2 + 1", Q));
    CHECK(rq.factors[0].second == 1);
}

TEST_CASE("p-th power inputs (vanishing derivative) are handled") {
    // (x^2 + x + 1)^2 = x^4 + x^2 + 1 over GF(2)
    Polynomial base = P("x^2 + x + 1", G2);
    Polynomial squared = base * base;
    CHECK(squared == P("x^4 + x^2 + 1", G2));
    PrimePowerFactorization r = factor(squared);
    REQUIRE(r.factors.size() == 1);
    CHECK(r.factors[0].first == base);
    CHECK(r.factors[0].second == 2);

    // x^3 over GF(3) also has zero derivative
    PrimePowerFactorization r3 = factor(P("x^3", G3));
    REQUIRE(r3.factors.size() == 1);
    CHECK(r3.factors[0].first == P("x", G3));
    CHECK(r3.factors[0].second == 3);
}

TEST_CASE("units and non-monic inputs") {
    PrimePowerFactorization r = factor(P("2x^2 - 2", Q));
    CHECK(r.unit == Scalar::of(Q, 2));
    CHECK(r.reassemble() == P("2x^2 - 2", Q));

    PrimePowerFactorization rg = factor(P("3x^2 + 3", G7));
    CHECK(rg.unit == Scalar::of(G7, 3));
    CHECK(rg.reassemble() == P("3x^2 + 3", G7));
}

TEST_CASE("constant polynomials and the rational degree cap are rejected") {
    CHECK_THROWS_MATCHES(factor(Polynomial::one(Q)), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::constant_polynomial; }));
    Polynomial big = P("x^13 - 1", Q);
    CHECK_THROWS_MATCHES(factor(big), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::degree_bound_exceeded;
                         }));
    FactorOptions wide;
    wide.max_degree_rationals = 14;
    PrimePowerFactorization r = factor(big, wide);
    CHECK(r.reassemble() == big);
    CHECK(r.factors.size() == 2);  // (x - 1) and the 12th cyclotomic-like cofactor
}

TEST_CASE("factoring is deterministic under a fixed seed") {
    Polynomial p = P("x^8 + x^6 + x^4 + x^2 + 1", G3);
    PrimePowerFactorization a = factor(p), b = factor(p);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        CHECK(a.factors[i].first == b.factors[i].first);
        CHECK(a.factors[i].second == b.factors[i].second);
    }
    FactorOptions other;
    other.seed = 42;
    PrimePowerFactorization c = factor(p, other);
    CHECK(c.reassemble() == p);  // same content regardless of seed
}

TEST_CASE("random monic polynomials reconstruct exactly") {
    oracle::InstanceRng rng(11);
    for (const FieldSpec& f : {G2, G3, G7}) {
        for (int trial = 0; trial < 60; ++trial) {
            Polynomial p = rng.monic_poly(f, 1 + static_cast<int>(rng.uniform(0, 7)));
            PrimePowerFactorization r = factor(p);
            CHECK(r.reassemble() == p);
            for (const auto& [prime, power] : r.factors) {
                CHECK(prime.is_monic());
                if (prime.degree() <= 4) CHECK(oracle::irreducible_by_trial(prime));
            }
        }
    }
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = rng.monic_poly(Q, 1 + static_cast<int>(rng.uniform(0, 5)), -9, 9);
        PrimePowerFactorization r = factor(p);
        CHECK(r.reassemble() == p);
    }
}

TEST_CASE("rational factors with fractional coefficients") {
    // (x - 1/2)(x + 1/3) has denominators that must clear and return
    Polynomial p = P("x - 1/2", Q) * P("x + 1/3", Q) * P("x^2 + 1", Q);
    PrimePowerFactorization r = factor(p);
    CHECK(r.reassemble() == p);
    REQUIRE(r.factors.size() == 3);
    bool found_half = false;
    for (const auto& [prime, power] : r.factors) found_half |= prime == P("x - 1/2", Q);
    CHECK(found_half);
}

TEST_CASE("repeated factors over Q get correct multiplicities") {
    Polynomial p = P("x - 2", Q).pow(3) * P("x^2 + x + 1", Q).pow(2);
    PrimePowerFactorization r = factor(p);
    CHECK(r.reassemble() == p);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].first == P("x - 2", Q));
    CHECK(r.factors[0].second == 3);
    CHECK(r.factors[1].first == P("x^2 + x + 1", Q));
    CHECK(r.factors[1].second == 2);
}
