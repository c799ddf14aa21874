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

#include <cstdlib>

#include "canon/contra.hpp"
#include "support/oracle.hpp"

using namespace canon;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec G2 = FieldSpec::gf(2);
const FieldSpec G3 = FieldSpec::gf(3);
const FieldSpec G7 = FieldSpec::gf(7);

Matrix M(FieldSpec f, std::vector<std::vector<long long>> rows) {
    return Matrix::from_rows(f, rows);
}
Polynomial P(const char* text, FieldSpec f) { return Polynomial::parse(text, f); }

ContraPair wide_pair(FieldSpec f) { return ContraPair(M(f, {{1, 0}}), M(f, {{0}, {1}})); }
}  // namespace

TEST_CASE("pair shapes are validated") {
    CHECK_THROWS_MATCHES(ContraPair(M(Q, {{1, 0}}), M(Q, {{1, 0}})), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::shape_mismatch; }));
    ContraPair ok = wide_pair(Q);
    CHECK(ok.m() == 1);
    CHECK(ok.n() == 2);
}

TEST_CASE("fitting decomposition") {
    SECTION("identity pair is all invertible") {
        ContraPair p(Matrix::identity(Q, 2), Matrix::identity(Q, 2));
        FittingSplit fit = fitting_decomposition(p);
        CHECK(fit.exponent == 0);
        CHECK(fit.v1.dim() == 2);
        CHECK(fit.v2.dim() == 0);
        CHECK(fit.w1.dim() == 2);
        CHECK(fit.w2.dim() == 0);
    }
    SECTION("wide shift pair is all nilpotent with exponent 2") {
        FittingSplit fit = fitting_decomposition(wide_pair(Q));
        CHECK(fit.exponent == 2);
        CHECK(fit.v1.dim() == 0);
        CHECK(fit.v2.dim() == 2);
        CHECK(fit.w1.dim() == 0);
        CHECK(fit.w2.dim() == 1);
    }
    SECTION("zero A pair") {
        ContraPair p(Matrix(Q, 2, 3), Matrix::from_rows(Q, {{1, 1}, {0, 1}, {1, 0}}));
        FittingSplit fit = fitting_decomposition(p);
        CHECK(fit.exponent == 1);
        CHECK(fit.v1.dim() == 0);
        CHECK(fit.w1.dim() == 0);
        CHECK(fit.v2.dim() == 3);
        CHECK(fit.w2.dim() == 2);
    }
}

TEST_CASE("invertible part") {
    SECTION("1x1 over GF(7)") {
        ContraPair p(M(G7, {{2}}), M(G7, {{2}}));
        FittingSplit fit = fitting_decomposition(p);
        InvertiblePart inv = invertible_part(p, fit.v1, fit.w1);
        REQUIRE(inv.block.has_value());
        REQUIRE(inv.block->jordan_part.has_value());
        REQUIRE(inv.block->jordan_part->blocks.size() == 1);
        CHECK(inv.block->jordan_part->blocks[0].prime == P("x - 4", G7));  // BA = 4
    }
    SECTION("rotation composite stays irreducible") {
        ContraPair p(Matrix::identity(Q, 2), M(Q, {{0, -1}, {1, 0}}));
        FittingSplit fit = fitting_decomposition(p);
        InvertiblePart inv = invertible_part(p, fit.v1, fit.w1);
        REQUIRE(inv.block.has_value());
        CHECK(inv.block->jordan_part->blocks[0].prime == P("x^2 + 1", Q));
        // in the chosen bases A restricts to I and B to the companion form
        CHECK(solve(inv.v_basis, p.b() * inv.w_basis) ==
              assemble_form(inv.block->jordan_part->blocks, Q));
    }
    SECTION("zero-dimensional part produces no block") {
        ContraPair p = wide_pair(Q);
        FittingSplit fit = fitting_decomposition(p);
        InvertiblePart inv = invertible_part(p, fit.v1, fit.w1);
        CHECK_FALSE(inv.block.has_value());
        CHECK(inv.v_basis.cols() == 0);
    }
}

TEST_CASE("longest alternating chains") {
    SECTION("wide pair: BA is the longest word") {
        ContraPair p = wide_pair(Q);
        // the full pair is already nilpotent, restricted = original matrices
        ChainSearch cs = longest_chain(p.a(), p.b());
        CHECK(cs.length == 2);
        CHECK(cs.ends_in == 'A');
        REQUIRE(cs.start.has_value());
        CHECK(*cs.start == M(Q, {{1}, {0}}));
    }
    SECTION("both zero maps") {
        ChainSearch cs = longest_chain(Matrix(Q, 2, 1), Matrix(Q, 1, 2));
        CHECK(cs.length == 0);
    }
    SECTION("A nonzero with zero composites") {
        ChainSearch cs = longest_chain(M(Q, {{1}}), M(Q, {{0}}));
        CHECK(cs.length == 1);
        CHECK(cs.ends_in == 'A');
    }
}

TEST_CASE("nilpotent splits emit the right block kinds") {
    SECTION("even length ending in A gives a wide shift") {
        ContraPair p = wide_pair(G2);
        ChainSearch cs = longest_chain(p.a(), p.b());
        NilpotentSplit ns = split_nilpotent(p.a(), p.b(), cs);
        CHECK(ns.block.kind == ContraBlockKind::wide_shift);
        CHECK(ns.block.rows == 1);
        CHECK(ns.block.cols == 2);
        CHECK(ns.v_rest.dim() == 0);
        CHECK(ns.w_rest.dim() == 0);
        CHECK(contra_block_a_cell(ns.block, G2) == p.a());
        CHECK(contra_block_b_cell(ns.block, G2) == p.b());
    }
    SECTION("odd length ending in A gives identity-nilpotent") {
        Matrix a = M(Q, {{1}}), b = M(Q, {{0}});
        ChainSearch cs = longest_chain(a, b);
        NilpotentSplit ns = split_nilpotent(a, b, cs);
        CHECK(ns.block.kind == ContraBlockKind::identity_nilpotent);
        CHECK(ns.block.rows == 1);
        CHECK(contra_block_a_cell(ns.block, Q) == M(Q, {{1}}));
        CHECK(contra_block_b_cell(ns.block, Q) == M(Q, {{0}}));
    }
    SECTION("transposed orientation gives the tall and nilpotent-identity kinds") {
        ContraPair p(M(Q, {{0}, {1}}), M(Q, {{1, 0}}));  // A tall, B wide
        ChainSearch cs = longest_chain(p.a(), p.b());
        CHECK(cs.length == 2);
        CHECK(cs.ends_in == 'B');
        NilpotentSplit ns = split_nilpotent(p.a(), p.b(), cs);
        CHECK(ns.block.kind == ContraBlockKind::tall_shift);

        Matrix a1 = M(Q, {{0}}), b1 = M(Q, {{1}});
        ChainSearch cs1 = longest_chain(a1, b1);
        CHECK(cs1.length == 1);
        CHECK(cs1.ends_in == 'B');
        NilpotentSplit ns1 = split_nilpotent(a1, b1, cs1);
        CHECK(ns1.block.kind == ContraBlockKind::nilpotent_identity);
    }
}

TEST_CASE("canonical pairs of the worked examples") {
    SECTION("(I, J) is its own canonical pair") {
        Matrix nil = M(Q, {{0, 0}, {1, 0}});
        ContraPair p(Matrix::identity(Q, 2), nil);
        ContraReport r = contragredient_canonical(p);
        REQUIRE(r.blocks.size() == 1);
        CHECK(r.blocks[0].kind == ContraBlockKind::identity_nilpotent);
        CHECK(r.blocks[0].rows == 2);
        CHECK(r.canonical_a == Matrix::identity(Q, 2));
        CHECK(r.canonical_b == nil);
    }
    SECTION("wide pair over GF(2) is canonical") {
        ContraPair p = wide_pair(G2);
        ContraReport r = contragredient_canonical(p);
        REQUIRE(r.blocks.size() == 1);
        CHECK(r.blocks[0].kind == ContraBlockKind::wide_shift);
        CHECK(r.canonical_a == p.a());
        CHECK(r.canonical_b == p.b());
        CHECK(r.s == Matrix::identity(G2, 1));
        CHECK(r.t == Matrix::identity(G2, 2));
    }
    SECTION("zero-dimension sides degenerate to a pure pad") {
        ContraReport r = contragredient_canonical(ContraPair(Matrix(Q, 0, 3), Matrix(Q, 3, 0)));
        REQUIRE(r.blocks.size() == 1);
        CHECK(r.blocks[0].kind == ContraBlockKind::zero);
        CHECK(r.blocks[0].rows == 0);
        CHECK(r.blocks[0].cols == 3);
        ContraReport empty = contragredient_canonical(ContraPair(Matrix(Q, 0, 0), Matrix(Q, 0, 0)));
        CHECK(empty.blocks.empty());
    }
    SECTION("zero pair is all padding") {
        ContraPair p(Matrix(Q, 2, 3), Matrix(Q, 3, 2));
        ContraReport r = contragredient_canonical(p);
        REQUIRE(r.blocks.size() == 1);
        CHECK(r.blocks[0].kind == ContraBlockKind::zero);
        CHECK(r.blocks[0].rows == 2);
        CHECK(r.blocks[0].cols == 3);
        CHECK(r.s == Matrix::identity(Q, 2));
        CHECK(r.t == Matrix::identity(Q, 3));
        CHECK(r.canonical_a.is_zero());
        CHECK(r.canonical_b.is_zero());
    }
}

TEST_CASE("rank profiles") {
    RankProfile rp = rank_profile(wide_pair(Q));
    CHECK(rp.t == 1);
    CHECK(rp.a_chain == std::vector<int>{1, 1});
    CHECK(rp.b_chain == std::vector<int>{1, 0});

    RankProfile id2 = rank_profile(ContraPair(Matrix::identity(Q, 2), Matrix::identity(Q, 2)));
    CHECK(id2.t == 2);
    CHECK(id2.a_chain == std::vector<int>{2, 2, 2});
    CHECK(id2.b_chain == std::vector<int>{2, 2, 2});

    RankProfile zero = rank_profile(ContraPair(Matrix(Q, 2, 2), Matrix(Q, 2, 2)));
    CHECK(zero.a_chain == std::vector<int>{0, 0, 0});
    CHECK(zero.b_chain == std::vector<int>{0, 0, 0});
}

TEST_CASE("equivalence decisions") {
    CHECK_FALSE(is_contra_equivalent(ContraPair(M(Q, {{1}}), M(Q, {{0}})),
                                     ContraPair(M(Q, {{0}}), M(Q, {{1}}))));
    CHECK(is_contra_equivalent(ContraPair(M(Q, {{1}}), M(Q, {{0}})),
                               ContraPair(M(Q, {{1}}), M(Q, {{0}}))));
    // same invariants after swapping coordinates of V, so equivalent
    CHECK(is_contra_equivalent(wide_pair(Q), ContraPair(M(Q, {{0, 1}}), M(Q, {{1}, {0}}))));
    // shape mismatch is just "no"
    CHECK_FALSE(is_contra_equivalent(wide_pair(Q),
                                     ContraPair(Matrix::identity(Q, 2), Matrix::identity(Q, 2))));

    oracle::InstanceRng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        int m = static_cast<int>(rng.uniform(1, 4)), n = static_cast<int>(rng.uniform(1, 4));
        ContraPair p = rng.pair(G3, m, n);
        Matrix s = rng.invertible(G3, m), t = rng.invertible(G3, n);
        ContraPair q(inverse(s) * p.a() * t, inverse(t) * p.b() * s);
        CHECK(is_contra_equivalent(p, q));
    }
}

TEST_CASE("random pairs: certificates, idempotence, bookkeeping, consistency") {
    oracle::InstanceRng rng(37);
    for (const FieldSpec& f : {G2, G3, Q}) {
        for (int trial = 0; trial < 20; ++trial) {
            int m = static_cast<int>(rng.uniform(1, 4)), n = static_cast<int>(rng.uniform(1, 4));
            ContraPair p = rng.pair(f, m, n, -3, 3);
            ContraReport r = contragredient_canonical(p);

            // certificate
            CHECK(inverse(r.s) * p.a() * r.t == r.canonical_a);
            CHECK(inverse(r.t) * p.b() * r.s == r.canonical_b);

            // idempotence on the canonical pair
            ContraReport again = contragredient_canonical(ContraPair(r.canonical_a, r.canonical_b));
            CHECK(again.blocks == r.blocks);

            // block bookkeeping
            int rows_sum = 0, cols_sum = 0;
            for (const ContraBlock& b : r.blocks) {
                rows_sum += b.rows;
                cols_sum += b.cols;
                if (b.kind != ContraBlockKind::invertible && b.kind != ContraBlockKind::zero)
                    CHECK(std::abs(b.rows - b.cols) <= 1);
            }
            CHECK(rows_sum == m);
            CHECK(cols_sum == n);

            // decision procedure agrees with canonical block equality
            ContraPair q = rng.pair(f, m, n, -3, 3);
            ContraReport rq = contragredient_canonical(q);
            CHECK(is_contra_equivalent(p, q) == (r.blocks == rq.blocks));

            // long alternating products have the rank of the invertible part
            int inv_size = r.blocks.empty() || r.blocks[0].kind != ContraBlockKind::invertible
                               ? 0
                               : r.blocks[0].rows;
            Matrix ba = p.b() * p.a();
            Matrix word = p.a() * ba.pow(std::min(m, n));  // length > 2 min(m, n)
            CHECK(rank(word) == inv_size);
        }
    }
}

TEST_CASE("pairs (I, A) reproduce the Jordan classification of A") {
    oracle::InstanceRng rng(41);
    for (const FieldSpec& f : {G2, G7, Q}) {
        for (int trial = 0; trial < 10; ++trial) {
            int n = static_cast<int>(rng.uniform(1, 4));
            Matrix a = rng.matrix(f, n, n, -3, 3);
            ContraReport r = contragredient_canonical(ContraPair(Matrix::identity(f, n), a));
            CHECK(r.canonical_a == Matrix::identity(f, n));

            // reconstruct the Jordan block multiset from the pair blocks
            std::vector<GeneralizedJordanBlock> rebuilt;
            for (const ContraBlock& b : r.blocks) {
                if (b.kind == ContraBlockKind::invertible) {
                    for (const auto& gb : b.jordan_part->blocks) rebuilt.push_back(gb);
                } else {
                    REQUIRE(b.kind == ContraBlockKind::identity_nilpotent);
                    rebuilt.push_back({Polynomial::x(f), b.rows});
                }
            }
            std::sort(rebuilt.begin(), rebuilt.end(), block_canonical_less);
            JordanForm direct = jordan_canonical(a).form;
            CHECK(rebuilt == direct.blocks);
        }
    }
}
