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
#include <optional>
#include <utility>
#include <vector>

#include "canon/jordan.hpp"

namespace canon {

/// A pair of rectangular maps A : V -> W (m x n) and B : W -> V (n x m),
/// considered up to independent basis changes of V and W.
class ContraPair {
  public:
    ContraPair(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {
        if (!(a_.field() == b_.field()))
            fail(errc::field_mismatch, "pair members over different fields");
        if (a_.cols() != b_.rows() || a_.rows() != b_.cols())
            fail(errc::shape_mismatch,
                 "pair shapes " + a_.shape_str() + " and " + b_.shape_str() + " are incompatible");
    }

    const Matrix& a() const noexcept { return a_; }
    const Matrix& b() const noexcept { return b_; }
    int m() const noexcept { return a_.rows(); }
    int n() const noexcept { return a_.cols(); }
    const FieldSpec& field() const noexcept { return a_.field(); }

  private:
    Matrix a_;
    Matrix b_;
};

/// Block kinds in canonical order. The invertible block leads, the zero
/// pad trails; the four nilpotent kinds sort by kind then descending size.
enum class ContraBlockKind {
    invertible,
    wide_shift,           // A = (I 0),  B = (0; I)
    tall_shift,           // A = (0; I), B = (I 0)
    identity_nilpotent,   // A = I,      B = J
    nilpotent_identity,   // A = J,      B = I
    zero,
};

inline const char* contra_kind_name(ContraBlockKind k) noexcept {
    switch (k) {
        case ContraBlockKind::invertible: return "invertible";
        case ContraBlockKind::wide_shift: return "wide_shift";
        case ContraBlockKind::tall_shift: return "tall_shift";
        case ContraBlockKind::identity_nilpotent: return "identity_nilpotent";
        case ContraBlockKind::nilpotent_identity: return "nilpotent_identity";
        case ContraBlockKind::zero: return "zero";
    }
    return "?";
}

/// One canonical block; rows x cols is the shape of the A-side cell (the
/// B-side cell is cols x rows). The invertible block carries the Jordan
/// form of the nonsingular part.
struct ContraBlock {
    ContraBlockKind kind;
    int rows = 0;
    int cols = 0;
    std::optional<JordanForm> jordan_part;

    friend bool operator==(const ContraBlock& x, const ContraBlock& y) {
        return x.kind == y.kind && x.rows == y.rows && x.cols == y.cols &&
               x.jordan_part == y.jordan_part;
    }
};

inline Matrix subdiagonal_ones(FieldSpec f, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int j = 0; j + 1 < rows && j < cols; ++j) m.at(j + 1, j) = Scalar::one(f);
    return m;
}

inline Matrix contra_block_a_cell(const ContraBlock& b, FieldSpec f) {
    switch (b.kind) {
        case ContraBlockKind::invertible:
        case ContraBlockKind::identity_nilpotent:
            return Matrix::identity(f, b.rows);
        case ContraBlockKind::wide_shift: {
            Matrix m(f, b.rows, b.cols);
            for (int i = 0; i < b.rows; ++i) m.at(i, i) = Scalar::one(f);
            return m;
        }
        case ContraBlockKind::tall_shift:
        case ContraBlockKind::nilpotent_identity:
            return subdiagonal_ones(f, b.rows, b.cols);
        case ContraBlockKind::zero:
            return Matrix(f, b.rows, b.cols);
    }
    fail(errc::internal_invariant, "unhandled block kind");
}

inline Matrix contra_block_b_cell(const ContraBlock& b, FieldSpec f) {
    switch (b.kind) {
        case ContraBlockKind::invertible:
            return assemble_form(b.jordan_part->blocks, f);
        case ContraBlockKind::wide_shift:
        case ContraBlockKind::identity_nilpotent:
            return subdiagonal_ones(f, b.cols, b.rows);
        case ContraBlockKind::tall_shift: {
            Matrix m(f, b.cols, b.rows);
            for (int i = 0; i < b.cols; ++i) m.at(i, i) = Scalar::one(f);
            return m;
        }
        case ContraBlockKind::nilpotent_identity:
            return Matrix::identity(f, b.rows);
        case ContraBlockKind::zero:
            return Matrix(f, b.cols, b.rows);
    }
    fail(errc::internal_invariant, "unhandled block kind");
}

/// Certificate form of the canonical pair: S^-1 A T = canonical_A and
/// T^-1 B S = canonical_B hold exactly, with S, T invertible.
struct ContraReport {
    std::vector<ContraBlock> blocks;
    Matrix canonical_a;
    Matrix canonical_b;
    Matrix s;  // m x m, new basis of W
    Matrix t;  // n x n, new basis of V
};

/// Rank sequences of the pair and of the alternating products up to the
/// cutoff t = min(m, n); together with the similarity class of AB this is
/// a complete invariant.
struct RankProfile {
    int t = 0;
    std::vector<int> a_chain;  // rank A, rank BA, ..., rank (BA)^t
    std::vector<int> b_chain;  // rank B, rank AB, ..., rank (AB)^t

    friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

inline RankProfile rank_profile(const ContraPair& p) {
    RankProfile out;
    out.t = std::min(p.m(), p.n());
    Matrix ba = p.b() * p.a();
    Matrix ab = p.a() * p.b();
    out.a_chain.push_back(rank(p.a()));
    out.b_chain.push_back(rank(p.b()));
    Matrix ba_pow = Matrix::identity(p.field(), p.n());
    Matrix ab_pow = Matrix::identity(p.field(), p.m());
    for (int j = 1; j <= out.t; ++j) {
        ba_pow = ba_pow * ba;
        ab_pow = ab_pow * ab;
        out.a_chain.push_back(rank(ba_pow));
        out.b_chain.push_back(rank(ab_pow));
    }
    return out;
}

namespace detail {

inline int stabilization_exponent(const Matrix& m) {
    int r = 0;
    Matrix cur = Matrix::identity(m.field(), m.rows());
    int cur_rank = cur.rows();
    for (;;) {
        Matrix nxt = cur * m;
        int nxt_rank = rank(nxt);
        if (nxt_rank == cur_rank) return r;
        cur = std::move(nxt);
        cur_rank = nxt_rank;
        ++r;
    }
}

inline void check_maps_into(const Matrix& image_of, const Subspace& target, const char* what) {
    if (rank(hstack(target.basis(), image_of)) != target.dim())
        fail(errc::internal_invariant, what);
}

}  // namespace detail

/// Fitting decomposition of both composites: V = range (BA)^r + ker (BA)^r
/// and W = range (AB)^r + ker (AB)^r for the least r at which both rank
/// sequences stabilize. A and B respect the split, and A, B restrict to
/// mutually inverse-like one-one maps between the invertible parts.
struct FittingSplit {
    Subspace v1, v2;  // invertible / nilpotent part of V under BA
    Subspace w1, w2;  // invertible / nilpotent part of W under AB
    int exponent = 0;
};

inline FittingSplit fitting_decomposition(const ContraPair& p) {
    Matrix ba = p.b() * p.a();
    Matrix ab = p.a() * p.b();
    int r = std::max(detail::stabilization_exponent(ba), detail::stabilization_exponent(ab));
    Matrix ba_r = ba.pow(r);
    Matrix ab_r = ab.pow(r);
    FittingSplit out{range_basis(ba_r), kernel_basis(ba_r), range_basis(ab_r), kernel_basis(ab_r), r};
    if (out.v1.dim() != out.w1.dim())
        fail(errc::internal_invariant, "invertible parts differ in dimension");
    detail::check_maps_into(p.a() * out.v1.basis(), out.w1, "A does not map V1 into W1");
    detail::check_maps_into(p.a() * out.v2.basis(), out.w2, "A does not map V2 into W2");
    detail::check_maps_into(p.b() * out.w1.basis(), out.v1, "B does not map W1 into V1");
    detail::check_maps_into(p.b() * out.w2.basis(), out.v2, "B does not map W2 into V2");
    return out;
}

/// Bases of the invertible parts on which A acts as the identity and B as
/// the (generalized) Jordan form of the nonsingular part of BA.
struct InvertiblePart {
    std::optional<ContraBlock> block;
    Matrix v_basis;  // n x s, basis of V1
    Matrix w_basis;  // m x s, its image under A (basis of W1)
};

inline InvertiblePart invertible_part(const ContraPair& p, const Subspace& v1, const Subspace& w1,
                                      const FactorOptions& opt = {}) {
    const FieldSpec f = p.field();
    const int s = v1.dim();
    if (s == 0) return {std::nullopt, Matrix(f, p.n(), 0), Matrix(f, p.m(), 0)};
    JordanReport jr = jordan_canonical(restrict_to(p.b() * p.a(), v1), opt);
    for (const GeneralizedJordanBlock& blk : jr.form.blocks)
        if (blk.prime == Polynomial::x(f))
            fail(errc::internal_invariant, "nonsingular part contains a nilpotent block");
    Matrix v_basis = v1.basis() * jr.transform;
    Matrix w_basis = p.a() * v_basis;
    if (rank(w_basis) != s || !Subspace::span(w_basis).same_space(w1))
        fail(errc::internal_invariant, "A image of the V1 basis does not span W1");
    if (solve(v_basis, p.b() * w_basis) != jr.form_matrix)
        fail(errc::internal_invariant, "B on W1 is not the expected Jordan form");
    return {ContraBlock{ContraBlockKind::invertible, s, s, jr.form}, std::move(v_basis),
            std::move(w_basis)};
}

/// Longest nonzero alternating product over the nilpotent restrictions,
/// written rightmost-letter-first: words ending in A act on the V side,
/// words ending in B on the W side. Ties at the maximal length prefer the
/// A-ending word. length 0 means both restrictions vanish.
struct ChainSearch {
    int length = 0;
    char ends_in = 'A';
    std::optional<Matrix> start;  // first standard vector not killed by the word
};

inline ChainSearch longest_chain(const Matrix& a2, const Matrix& b2) {
    if (a2.cols() != b2.rows() || a2.rows() != b2.cols())
        fail(errc::shape_mismatch, "restricted pair shapes are incompatible");
    ChainSearch best;
    std::optional<Matrix> best_word;
    Matrix wa = a2, wb = b2;
    const int cap = 2 * (a2.rows() + a2.cols()) + 2;
    for (int len = 1;; ++len) {
        bool a_nz = !wa.is_zero(), b_nz = !wb.is_zero();
        if (!a_nz && !b_nz) break;
        if (len > cap) fail(errc::internal_invariant, "restrictions are not nilpotent");
        best.length = len;
        best.ends_in = a_nz ? 'A' : 'B';
        best_word = a_nz ? wa : wb;
        wa = (len % 2 == 1 ? b2 : a2) * wa;
        wb = (len % 2 == 1 ? a2 : b2) * wb;
    }
    if (best_word) {
        for (int j = 0; j < best_word->cols(); ++j)
            if (!best_word->col(j).is_zero()) {
                Matrix x(a2.field(), best_word->cols(), 1);
                x.at(j, 0) = Scalar::one(a2.field());
                best.start = std::move(x);
                break;
            }
    }
    return best;
}

/// Extracts one nilpotent block: runs the chain from the start vector,
/// splits both sides off by duality against the dual chain of the first
/// coordinate functional separating the chain's last element, and leaves
/// the complements for the next round.
struct NilpotentSplit {
    ContraBlock block;
    Matrix v_chain;  // columns in V2 coordinates, chain order
    Matrix w_chain;  // columns in W2 coordinates, chain order
    Subspace v_rest;
    Subspace w_rest;
};

inline NilpotentSplit split_nilpotent(const Matrix& a2, const Matrix& b2, const ChainSearch& cs) {
    if (cs.length < 1 || !cs.start)
        fail(errc::invalid_argument, "nilpotent split requires a nonzero chain");
    const FieldSpec f = a2.field();
    const int l = cs.length;
    const bool ends_a = cs.ends_in == 'A';
    auto letter = [&](int j) -> const Matrix& {  // j-th letter applied, 1-based
        return ((j % 2 == 1) == ends_a) ? a2 : b2;
    };
    auto on_v_side = [&](int idx) { return ends_a ? idx % 2 == 0 : idx % 2 == 1; };

    std::vector<Matrix> u{*cs.start};
    for (int j = 1; j <= l; ++j) u.push_back(letter(j) * u.back());

    Matrix v_chain(f, a2.cols(), 0), w_chain(f, a2.rows(), 0);
    for (int j = 0; j <= l; ++j) {
        if (on_v_side(j))
            v_chain = hstack(v_chain, u[static_cast<std::size_t>(j)]);
        else
            w_chain = hstack(w_chain, u[static_cast<std::size_t>(j)]);
    }

    const Matrix& cx = u.back();
    int pick = -1;
    for (int i = 0; i < cx.rows(); ++i)
        if (!cx.at(i, 0).is_zero()) {
            pick = i;
            break;
        }
    if (pick < 0) fail(errc::internal_invariant, "chain head vanished");
    std::vector<DualVector> tseq{DualVector::coordinate(f, cx.rows(), pick)};
    for (int j = 1; j <= l; ++j) tseq.push_back(tseq.back().act(letter(l - j + 1)));

    // t_j pairs with the side u_{l-j} lives on; descending j makes the
    // Gram matrices upper triangular against the ascending chains
    std::vector<DualVector> tv, tw;
    for (int j = l; j >= 0; --j) {
        if (on_v_side(l - j))
            tv.push_back(tseq[static_cast<std::size_t>(j)]);
        else
            tw.push_back(tseq[static_cast<std::size_t>(j)]);
    }

    DualitySplit sv = split_by_duality(b2 * a2, Subspace::from_ordered_basis(v_chain), tv);
    DualitySplit sw = split_by_duality(a2 * b2, Subspace::from_ordered_basis(w_chain), tw);
    detail::check_maps_into(a2 * sv.complement.basis(), sw.complement,
                            "A does not respect the split remainder");
    detail::check_maps_into(b2 * sw.complement.basis(), sv.complement,
                            "B does not respect the split remainder");

    ContraBlock block{ends_a ? (l % 2 == 0 ? ContraBlockKind::wide_shift
                                           : ContraBlockKind::identity_nilpotent)
                             : (l % 2 == 0 ? ContraBlockKind::tall_shift
                                           : ContraBlockKind::nilpotent_identity),
                      w_chain.cols(), v_chain.cols(), std::nullopt};
    // chain order must realize the block matrices exactly
    if (solve(w_chain, a2 * v_chain) != contra_block_a_cell(block, f) ||
        solve(v_chain, b2 * w_chain) != contra_block_b_cell(block, f))
        fail(errc::internal_invariant, "chain bases do not realize the block pair");
    return {block, std::move(v_chain), std::move(w_chain), std::move(sv.complement),
            std::move(sw.complement)};
}

inline bool contra_block_canonical_less(const ContraBlock& x, const ContraBlock& y) {
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    if (x.rows != y.rows) return x.rows > y.rows;
    return x.cols > y.cols;
}

/// Full canonical form under contragredient equivalence, with invertible
/// certificates S and T. Blocks are listed invertible first, then the
/// nilpotent kinds in canonical order, then the zero pad.
inline ContraReport contragredient_canonical(const ContraPair& p, const FactorOptions& opt = {}) {
    const FieldSpec f = p.field();
    const int m = p.m(), n = p.n();

    FittingSplit fit = fitting_decomposition(p);
    InvertiblePart inv = invertible_part(p, fit.v1, fit.w1, opt);

    std::vector<ContraBlock> blocks;
    std::vector<Matrix> a_cells, b_cells;
    Matrix s_cols = inv.w_basis;
    Matrix t_cols = inv.v_basis;
    if (inv.block) {
        blocks.push_back(*inv.block);
        a_cells.push_back(contra_block_a_cell(*inv.block, f));
        b_cells.push_back(contra_block_b_cell(*inv.block, f));
    }

    Matrix v_emb = fit.v2.basis();
    Matrix w_emb = fit.w2.basis();
    Matrix a2 = solve(w_emb, p.a() * v_emb);
    Matrix b2 = solve(v_emb, p.b() * w_emb);

    struct Found {
        ContraBlock block;
        Matrix v_cols, w_cols;
    };
    std::vector<Found> nil;
    for (;;) {
        ChainSearch cs = longest_chain(a2, b2);
        if (cs.length == 0) break;  // remaining restrictions vanish
        NilpotentSplit ns = split_nilpotent(a2, b2, cs);
        nil.push_back({ns.block, v_emb * ns.v_chain, w_emb * ns.w_chain});
        Matrix a_next = solve(ns.w_rest.basis(), a2 * ns.v_rest.basis());
        Matrix b_next = solve(ns.v_rest.basis(), b2 * ns.w_rest.basis());
        v_emb = v_emb * ns.v_rest.basis();
        w_emb = w_emb * ns.w_rest.basis();
        a2 = std::move(a_next);
        b2 = std::move(b_next);
    }
    std::stable_sort(nil.begin(), nil.end(), [](const Found& x, const Found& y) {
        return contra_block_canonical_less(x.block, y.block);
    });
    for (Found& nf : nil) {
        blocks.push_back(nf.block);
        a_cells.push_back(contra_block_a_cell(nf.block, f));
        b_cells.push_back(contra_block_b_cell(nf.block, f));
        s_cols = hstack(s_cols, nf.w_cols);
        t_cols = hstack(t_cols, nf.v_cols);
    }
    if (v_emb.cols() > 0 || w_emb.cols() > 0) {
        ContraBlock pad{ContraBlockKind::zero, w_emb.cols(), v_emb.cols(), std::nullopt};
        blocks.push_back(pad);
        a_cells.push_back(contra_block_a_cell(pad, f));
        b_cells.push_back(contra_block_b_cell(pad, f));
        s_cols = hstack(s_cols, w_emb);
        t_cols = hstack(t_cols, v_emb);
    }

    Matrix canonical_a = block_diag(f, a_cells);
    Matrix canonical_b = block_diag(f, b_cells);
    if (canonical_a.rows() != m || canonical_a.cols() != n)
        fail(errc::internal_invariant, "blocks do not tile the pair shape");
    if (rank(s_cols) != m || rank(t_cols) != n)
        fail(errc::internal_invariant, "certificate transforms are singular");
    if (solve(s_cols, p.a() * t_cols) != canonical_a ||
        solve(t_cols, p.b() * s_cols) != canonical_b)
        fail(errc::internal_invariant, "certificate check S^-1 A T / T^-1 B S failed");
    return {std::move(blocks), std::move(canonical_a), std::move(canonical_b), std::move(s_cols),
            std::move(t_cols)};
}

/// Decision procedure: shapes match, AB similar to CD, and the two rank
/// profiles agree.
inline bool is_contra_equivalent(const ContraPair& p, const ContraPair& q,
                                 const FactorOptions& opt = {}) {
    if (!(p.field() == q.field()))
        fail(errc::field_mismatch, "pairs over " + p.field().str() + " and " + q.field().str());
    if (p.m() != q.m() || p.n() != q.n()) return false;
    if (!is_similar(p.a() * p.b(), q.a() * q.b(), opt)) return false;
    return rank_profile(p) == rank_profile(q);
}

}  // namespace canon
