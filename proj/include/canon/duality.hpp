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

#include <utility>
#include <vector>

#include "canon/linalg.hpp"

namespace canon {

/// Result of splitting off an invariant summand against a dual family:
/// the space is the direct sum of `summand` and `complement`, both
/// invariant under the map supplied at construction. `gram` records the
/// pairing matrix (<s_i, t_j>) whose nonsingularity drives the split.
struct DualitySplit {
    Subspace summand;
    Subspace complement;
    Matrix gram;
};

/// Given an A-invariant S and an A*-invariant family T with |T| = dim S,
/// produce the A-invariant complement ann(T). Requires the S x T pairing
/// to be nondegenerate; every precondition is re-verified here rather
/// than trusted, so a silent math bug upstream turns into a typed error.
inline DualitySplit split_by_duality(const Matrix& a, const Subspace& s,
                                     const std::vector<DualVector>& t) {
    if (!a.is_square()) fail(errc::non_square, "duality split of a " + a.shape_str() + " map");
    const int n = a.rows();
    const FieldSpec f = a.field();
    if (s.ambient_dim() != n) fail(errc::shape_mismatch, "summand lives in the wrong space");
    if (static_cast<int>(t.size()) != s.dim())
        fail(errc::invalid_argument, "need exactly dim S dual vectors, got " + std::to_string(t.size()));

    // A S subset of S
    if (rank(hstack(s.basis(), a * s.basis())) != s.dim())
        fail(errc::not_invariant, "summand is not invariant");

    // span(T) closed under right-multiplication by A
    Matrix rows = stack_rows(f, n, t);
    if (rank(vstack(rows, rows * a)) != rank(rows))
        fail(errc::not_invariant, "dual family is not invariant");

    // gram(i, j) = <s_i, t_j> = t_j . s_i
    Matrix gram = (rows * s.basis()).transpose();
    if (s.dim() > 0 && rank(gram) != s.dim())
        fail(errc::degenerate_pairing, "pairing of summand and dual family is singular");

    Subspace complement = kernel_basis(rows);
    if (complement.dim() != n - s.dim())
        fail(errc::internal_invariant, "annihilator has unexpected dimension");
    if (rank(hstack(complement.basis(), a * complement.basis())) != complement.dim())
        fail(errc::not_invariant, "complement is not invariant");
    if (rank(hstack(s.basis(), complement.basis())) != n)
        fail(errc::internal_invariant, "summand and annihilator do not span");

    return {s, std::move(complement), std::move(gram)};
}

}  // namespace canon
