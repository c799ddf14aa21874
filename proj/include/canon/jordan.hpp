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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "canon/duality.hpp"
#include "canon/factor.hpp"
#include "canon/linalg.hpp"

namespace canon {

/// One generalized Jordan block: k chained copies of the companion cell
/// of a monic irreducible polynomial. Over an algebraically closed field
/// the cell is 1x1 and this degenerates to the classical Jordan block.
struct GeneralizedJordanBlock {
    Polynomial prime;
    int power;

    int dim() const { return power * prime.degree(); }

    friend bool operator==(const GeneralizedJordanBlock& a, const GeneralizedJordanBlock& b) {
        return a.power == b.power && a.prime == b.prime;
    }
};

/// Canonical block order: prime degree, then the coefficient tuple of the
/// prime, then descending power. A total order makes forms comparable by
/// plain equality.
inline bool block_canonical_less(const GeneralizedJordanBlock& a, const GeneralizedJordanBlock& b) {
    if (a.prime != b.prime) return poly_canonical_less(a.prime, b.prime);
    return a.power > b.power;
}

struct JordanForm {
    std::vector<GeneralizedJordanBlock> blocks;  // canonically sorted
    int total_dim = 0;

    friend bool operator==(const JordanForm& a, const JordanForm& b) {
        return a.total_dim == b.total_dim && a.blocks == b.blocks;
    }
};

struct JordanReport {
    JordanForm form;
    Matrix form_matrix;
    Matrix transform;  // columns are the new basis; transform^-1 A transform = form_matrix
};

/// Block-diagonal matrix of the given blocks. Each block is a k x k grid
/// of d x d cells: companion cells C on the diagonal, single-entry link
/// cells B (one in the top-right corner) on the first subdiagonal. The
/// companion cell of x^d - a_1 x^{d-1} - ... - a_d has ones on its first
/// subdiagonal and last column (a_d, ..., a_1) top to bottom; for a monic
/// prime with coefficients c_0..c_{d-1}, 1 that column is (-c_0, ..., -c_{d-1}).
inline Matrix assemble_form(const std::vector<GeneralizedJordanBlock>& blocks, FieldSpec f) {
    int total = 0;
    for (const auto& b : blocks) total += b.dim();
    Matrix m(f, total, total);
    int off = 0;
    for (const auto& b : blocks) {
        const int d = b.prime.degree();
        const int k = b.power;
        for (int cell = 0; cell < k; ++cell) {
            const int base = off + cell * d;
            for (int r = 0; r + 1 < d; ++r) m.at(base + r + 1, base + r) = Scalar::one(f);
            for (int r = 0; r < d; ++r) m.at(base + r, base + d - 1) = -b.prime.coeff(r);
            if (cell + 1 < k) m.at(base + d, base + d - 1) = Scalar::one(f);
        }
        off += b.dim();
    }
    return m;
}

struct PrimaryComponent {
    Polynomial prime;
    int power;
    Subspace component;
};

/// Splits the space into the kernels of the prime-power evaluations of
/// the minimal polynomial. The components are built twice over: as the
/// ranges of the Bezout projectors h_i(A) g_i(A) and as the kernels of
/// (f_i(A))^{k_i}; the two must agree.
inline std::vector<PrimaryComponent> primary_decomposition(const Matrix& a,
                                                           const FactorOptions& opt = {}) {
    if (!a.is_square()) fail(errc::non_square, "primary decomposition of a " + a.shape_str() + " matrix");
    if (a.rows() == 0) return {};
    const FieldSpec f = a.field();
    const Polynomial minpoly = minimal_polynomial(a);
    PrimePowerFactorization fac = factor(minpoly, opt);

    std::vector<Polynomial> g;
    for (const auto& [prime, power] : fac.factors)
        g.push_back(divmod(minpoly, prime.pow(power)).first);
    BezoutCertificate bez = bezout_multi(g);

    std::vector<PrimaryComponent> out;
    int total = 0;
    Matrix stacked(f, a.rows(), 0);
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        const auto& [prime, power] = fac.factors[i];
        Subspace component = kernel_basis(eval_at_matrix(prime, a).pow(power));
        Subspace projected = range_basis(eval_at_matrix(bez.cofactors[i], a) * eval_at_matrix(g[i], a));
        if (!component.same_space(projected))
            fail(errc::internal_invariant, "projector range disagrees with the kernel component");
        if (rank(hstack(component.basis(), a * component.basis())) != component.dim())
            fail(errc::internal_invariant, "primary component is not invariant");
        total += component.dim();
        stacked = hstack(stacked, component.basis());
        out.push_back({prime, power, std::move(component)});
    }
    if (total != a.rows() || rank(stacked) != a.rows())
        fail(errc::internal_invariant, "primary components do not sum directly to the space");
    return out;
}

/// First standard basis vector v with (f(A))^{k-1} A^{d-1} v != 0. The
/// operator is nonzero whenever f^k is the minimal polynomial (its
/// polynomial has degree kd - 1 < kd), so the scan always succeeds.
inline Matrix cyclic_vector(const Matrix& a, const Polynomial& fp, int k) {
    const int d = fp.degree();
    Matrix op = eval_at_matrix(fp, a).pow(k - 1) * a.pow(d - 1);
    for (int j = 0; j < op.cols(); ++j)
        if (!op.col(j).is_zero()) {
            Matrix v(a.field(), a.rows(), 1);
            v.at(j, 0) = Scalar::one(a.field());
            return v;
        }
    fail(errc::internal_invariant, "no standard basis vector survives the chain operator");
}

/// Functional v' with <(f(A))^{k-1} A^j v, v'> = [j = d-1] for j < d.
inline DualVector dual_cyclic_vector(const Matrix& a, const Matrix& v, const Polynomial& fp, int k) {
    const int d = fp.degree();
    const FieldSpec f = a.field();
    Matrix base = eval_at_matrix(fp, a).pow(k - 1);
    Matrix w(f, a.rows(), 0);
    Matrix img = base * v;
    for (int j = 0; j < d; ++j) {
        w = hstack(w, img);
        img = a * img;
    }
    Matrix rhs(f, d, 1);
    rhs.at(d - 1, 0) = Scalar::one(f);
    Matrix r = solve(w.transpose(), rhs);
    return DualVector(r.transpose());
}

/// Chain basis (f(A))^{i1-1} A^{i2-1} v, ordered lexicographically by
/// (i1, i2); the order is what realizes the block layout, so the returned
/// subspace keeps it.
inline Subspace chain_basis(const Matrix& a, const Matrix& v, const Polynomial& fp, int k) {
    const int d = fp.degree();
    Matrix fa = eval_at_matrix(fp, a);
    Matrix cols(a.field(), a.rows(), 0);
    Matrix layer = v;
    for (int i1 = 0; i1 < k; ++i1) {
        Matrix w = layer;
        for (int i2 = 0; i2 < d; ++i2) {
            cols = hstack(cols, w);
            w = a * w;
        }
        layer = fa * layer;
    }
    return Subspace::from_ordered_basis(std::move(cols));
}

/// Mirror of chain_basis on the dual side: v' (f(A))^{i1-1} A^{i2-1}.
inline std::vector<DualVector> dual_chain(const Matrix& a, const DualVector& vd,
                                          const Polynomial& fp, int k) {
    const int d = fp.degree();
    Matrix fa = eval_at_matrix(fp, a);
    std::vector<DualVector> rows;
    Matrix layer = vd.row();
    for (int i1 = 0; i1 < k; ++i1) {
        Matrix w = layer;
        for (int i2 = 0; i2 < d; ++i2) {
            rows.push_back(DualVector(w));
            w = w * a;
        }
        layer = layer * fa;
    }
    if (rank(stack_rows(a.field(), a.rows(), rows)) != k * d)
        fail(errc::internal_invariant, "dual chain is linearly dependent");
    return rows;
}

/// One splitting step on a primary piece: peel off the cyclic chain W1
/// and return it together with the invariant complement ann(W1'). The
/// pairing is fed to the duality split with the chain reversed inside
/// each layer and the dual chain reversed across layers, which makes the
/// Gram matrix upper triangular with unit diagonal.
inline std::pair<Subspace, Subspace> split_component(const Matrix& a, const Polynomial& fp, int k) {
    const int d = fp.degree();
    Matrix v = cyclic_vector(a, fp, k);
    DualVector vd = dual_cyclic_vector(a, v, fp, k);
    Subspace chain = chain_basis(a, v, fp, k);
    std::vector<DualVector> dchain = dual_chain(a, vd, fp, k);

    Matrix pairing_cols(a.field(), a.rows(), 0);
    for (int i1 = 0; i1 < k; ++i1)
        for (int i2 = d - 1; i2 >= 0; --i2)
            pairing_cols = hstack(pairing_cols, chain.basis().col(i1 * d + i2));
    std::vector<DualVector> pairing_rows;
    for (int j1 = k - 1; j1 >= 0; --j1)
        for (int j2 = 0; j2 < d; ++j2)
            pairing_rows.push_back(dchain[static_cast<std::size_t>(j1 * d + j2)]);

    DualitySplit split =
        split_by_duality(a, Subspace::from_ordered_basis(std::move(pairing_cols)), pairing_rows);
    return {std::move(chain), std::move(split.complement)};
}

namespace detail {

/// Exact power of `prime` in `value`, which must be prime^m for some m >= 1.
inline int exact_prime_power(const Polynomial& value, const Polynomial& prime) {
    Polynomial rest = value;
    int m = 0;
    while (rest.degree() > 0) {
        auto [q, r] = divmod(rest, prime);
        if (!r.is_zero())
            fail(errc::internal_invariant, "restricted minimal polynomial is not a prime power");
        rest = std::move(q);
        ++m;
    }
    if (!rest.is_one()) fail(errc::internal_invariant, "prime power has a nontrivial unit");
    return m;
}

}  // namespace detail

/// Full canonical form with certificate: transform P is invertible and
/// P^-1 A P equals the assembled form exactly (verified before return).
inline JordanReport jordan_canonical(const Matrix& a, const FactorOptions& opt = {}) {
    if (!a.is_square()) fail(errc::non_square, "canonical form of a " + a.shape_str() + " matrix");
    const FieldSpec f = a.field();
    const int n = a.rows();
    if (n == 0) return {JordanForm{{}, 0}, Matrix(f, 0, 0), Matrix(f, 0, 0)};

    std::vector<std::pair<GeneralizedJordanBlock, Matrix>> found;  // block + chain columns in V
    for (const PrimaryComponent& comp : primary_decomposition(a, opt)) {
        Matrix lift = comp.component.basis();
        Matrix restricted = restrict_to(a, comp.component);
        while (restricted.rows() > 0) {
            int m = detail::exact_prime_power(minimal_polynomial(restricted), comp.prime);
            auto [chain, rest] = split_component(restricted, comp.prime, m);
            found.push_back({GeneralizedJordanBlock{comp.prime, m}, lift * chain.basis()});
            lift = lift * rest.basis();
            restricted = restrict_to(restricted, rest);
        }
    }

    std::stable_sort(found.begin(), found.end(),
                     [](const auto& x, const auto& y) { return block_canonical_less(x.first, y.first); });

    JordanForm form;
    form.total_dim = n;
    Matrix transform(f, n, 0);
    for (auto& [block, cols] : found) {
        form.blocks.push_back(block);
        transform = hstack(transform, cols);
    }
    Matrix form_matrix = assemble_form(form.blocks, f);
    if (rank(transform) != n) fail(errc::internal_invariant, "transform is singular");
    if (solve(transform, a * transform) != form_matrix)
        fail(errc::internal_invariant, "certificate check P^-1 A P = form failed");
    return {std::move(form), std::move(form_matrix), std::move(transform)};
}

/// Block-size counts for one prime from kernel dimensions alone: with
/// n_j = dim ker (f(A))^j, the number of blocks of size j*deg f is the
/// second difference (n_j - n_{j-1}) - (n_{j+1} - n_j) divided by deg f.
inline std::map<int, int> block_multiplicities_by_kernels(const Matrix& a, const Polynomial& prime) {
    if (!a.is_square()) fail(errc::non_square, "block counts of a " + a.shape_str() + " matrix");
    if (!divmod(minimal_polynomial(a), prime).second.is_zero())
        fail(errc::not_a_factor, "'" + prime.str() + "' does not divide the minimal polynomial");
    const int d = prime.degree();
    Matrix fa = eval_at_matrix(prime, a);
    std::vector<int> dims{0};  // n_0 = 0
    Matrix power = Matrix::identity(a.field(), a.rows());
    for (;;) {
        power = power * fa;
        int nk = kernel_basis(power).dim();
        if (nk == dims.back()) break;
        dims.push_back(nk);
    }
    std::map<int, int> counts;
    int checked = 0;
    for (std::size_t j = 1; j < dims.size(); ++j) {
        int delta_prev = dims[j] - dims[j - 1];
        int delta_next = j + 1 < dims.size() ? dims[j + 1] - dims[j] : 0;
        int c = (delta_prev - delta_next) / d;
        if ((delta_prev - delta_next) % d != 0)
            fail(errc::internal_invariant, "kernel staircase is not a multiple of the prime degree");
        if (c > 0) counts[static_cast<int>(j) * d] = c;
        checked += c * static_cast<int>(j) * d;
    }
    if (checked != dims.back())
        fail(errc::internal_invariant, "block sizes do not add up to the component dimension");
    return counts;
}

/// Similarity decision: equal dimensions and equal canonical block multisets.
inline bool is_similar(const Matrix& a, const Matrix& b, const FactorOptions& opt = {}) {
    if (!(a.field() == b.field()))
        fail(errc::field_mismatch, "similarity across " + a.field().str() + " and " + b.field().str());
    if (!a.is_square() || !b.is_square()) fail(errc::non_square, "similarity of non-square matrices");
    if (a.rows() != b.rows()) return false;
    return jordan_canonical(a, opt).form == jordan_canonical(b, opt).form;
}

}  // namespace canon
