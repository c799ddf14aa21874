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

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "canon/poly.hpp"

namespace canon {

/// Exact dense matrix over a FieldSpec field, row-major. Empty row or
/// column counts are legal everywhere; they show up as recursion bases.
class Matrix {
  public:
    Matrix(FieldSpec field, int rows, int cols)
        : field_(field), rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) fail(errc::invalid_argument, "negative matrix dimension");
        e_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                  Scalar::zero(field));
    }

    Matrix(FieldSpec field, int rows, int cols, std::vector<Scalar> entries)
        : field_(field), rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows < 0 || cols < 0) fail(errc::invalid_argument, "negative matrix dimension");
        if (e_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
            fail(errc::shape_mismatch, "entry count does not match dimensions");
        for (const Scalar& s : e_)
            if (!(s.field() == field_)) fail(errc::field_mismatch, "entry from wrong field");
    }

    static Matrix identity(FieldSpec f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    static Matrix from_rows(FieldSpec f, const std::vector<std::vector<long long>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        std::vector<Scalar> e;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c) fail(errc::shape_mismatch, "ragged row list");
            for (long long v : row) e.push_back(Scalar::of(f, v));
        }
        return Matrix(f, r, c, std::move(e));
    }

    const FieldSpec& field() const noexcept { return field_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Scalar& at(int i, int j) {
        check_index(i, j);
        return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(j)];
    }
    const Scalar& at(int i, int j) const {
        check_index(i, j);
        return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(j)];
    }

    bool is_zero() const {
        for (const Scalar& s : e_)
            if (!s.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix col(int j) const {
        Matrix c(field_, rows_, 1);
        for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    Matrix row(int i) const {
        Matrix r(field_, 1, cols_);
        for (int j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix c = a;
        for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] = c.e_[i] + b.e_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix c = a;
        for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] = c.e_[i] - b.e_[i];
        return c;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        check_fields(a, b);
        if (a.cols_ != b.rows_)
            fail(errc::shape_mismatch, "product of " + a.shape_str() + " and " + b.shape_str());
        Matrix c(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j)
                    c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
            }
        return c;
    }

    friend Matrix operator*(const Matrix& a, const Scalar& s) {
        if (!(a.field_ == s.field())) fail(errc::field_mismatch, "scalar from wrong field");
        Matrix c = a;
        for (Scalar& e : c.e_) e = e * s;
        return c;
    }

    Matrix pow(int k) const {
        if (!is_square()) fail(errc::non_square, "power of a " + shape_str() + " matrix");
        if (k < 0) fail(errc::invalid_argument, "negative matrix power");
        Matrix r = identity(field_, rows_);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        check_fields(a, b);
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != b.e_[i]) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (int i = 0; i < m.rows_; ++i) {
            for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m.at(i, j);
            os << '\n';
        }
        return os;
    }

  private:
    void check_index(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            fail(errc::invalid_argument, "index (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") out of " + shape_str());
    }
    static void check_fields(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_))
            fail(errc::field_mismatch, "matrices over " + a.field_.str() + " and " + b.field_.str());
    }
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        check_fields(a, b);
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            fail(errc::shape_mismatch, a.shape_str() + " vs " + b.shape_str());
    }

    FieldSpec field_;
    int rows_;
    int cols_;
    std::vector<Scalar> e_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "hstack over different fields");
    if (a.rows() != b.rows()) fail(errc::shape_mismatch, "hstack row mismatch");
    Matrix c(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "vstack over different fields");
    if (a.cols() != b.cols()) fail(errc::shape_mismatch, "vstack column mismatch");
    Matrix c(a.field(), a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) c.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows(); ++i) c.at(a.rows() + i, j) = b.at(i, j);
    }
    return c;
}

/// Rectangular block-diagonal stitch; cells may have unequal shapes.
inline Matrix block_diag(FieldSpec f, const std::vector<Matrix>& cells) {
    int r = 0, c = 0;
    for (const Matrix& m : cells) {
        r += m.rows();
        c += m.cols();
    }
    Matrix out(f, r, c);
    int ro = 0, co = 0;
    for (const Matrix& m : cells) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(ro + i, co + j) = m.at(i, j);
        ro += m.rows();
        co += m.cols();
    }
    return out;
}

// ---------------------------------------------------------------------
// Elimination. Pivoting always takes the first nonzero entry; with exact
// arithmetic the pivot choice is purely a determinism decision.
// ---------------------------------------------------------------------

struct RowEchelon {
    Matrix reduced;           // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each pivot row
};

inline RowEchelon row_reduce(Matrix a) {
    std::vector<int> pivots;
    int pr = 0;
    for (int c = 0; c < a.cols() && pr < a.rows(); ++c) {
        int sel = -1;
        for (int r = pr; r < a.rows(); ++r)
            if (!a.at(r, c).is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != pr)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(pr, j));
        Scalar inv = a.at(pr, c).inverse();
        for (int j = c; j < a.cols(); ++j) a.at(pr, j) = a.at(pr, j) * inv;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == pr || a.at(r, c).is_zero()) continue;
            Scalar m = a.at(r, c);
            for (int j = c; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) - m * a.at(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(a), std::move(pivots)};
}

inline int rank(const Matrix& a) { return static_cast<int>(row_reduce(a).pivots.size()); }

inline bool is_invertible(const Matrix& a) {
    if (!a.is_square()) fail(errc::non_square, "invertibility of a " + a.shape_str() + " matrix");
    return rank(a) == a.rows();
}

/// Any exact solution of A x = b (b may have several columns). Free
/// variables are set to zero.
inline Matrix solve(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) fail(errc::field_mismatch, "solve over different fields");
    if (a.rows() != b.rows()) fail(errc::shape_mismatch, "solve rhs has wrong row count");
    RowEchelon re = row_reduce(hstack(a, b));
    for (std::size_t i = 0; i < re.pivots.size(); ++i)
        if (re.pivots[i] >= a.cols())
            fail(errc::inconsistent_system, "no solution exists");
    Matrix x(a.field(), a.cols(), b.cols());
    for (std::size_t i = 0; i < re.pivots.size(); ++i)
        for (int k = 0; k < b.cols(); ++k)
            x.at(re.pivots[i], k) = re.reduced.at(static_cast<int>(i), a.cols() + k);
    return x;
}

inline Matrix inverse(const Matrix& a) {
    if (!a.is_square()) fail(errc::non_square, "inverse of a " + a.shape_str() + " matrix");
    RowEchelon re = row_reduce(hstack(a, Matrix::identity(a.field(), a.rows())));
    if (static_cast<int>(re.pivots.size()) < a.rows() ||
        (!re.pivots.empty() && re.pivots.back() >= a.cols()))
        fail(errc::singular_matrix, "matrix is singular");
    Matrix inv(a.field(), a.rows(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.rows(); ++j) inv.at(i, j) = re.reduced.at(i, a.cols() + j);
    return inv;
}

/// Column-span subspace. Spans built by span() carry the canonical
/// reduced-column-echelon basis, so equal subspaces store equal bases and
/// equality is entrywise; from_ordered_basis() keeps the given column
/// order for the chain constructions whose order is the whole point.
class Subspace {
  public:
    static Subspace span(const Matrix& columns) {
        RowEchelon re = row_reduce(columns.transpose());
        int r = static_cast<int>(re.pivots.size());
        Matrix basis(columns.field(), columns.rows(), r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < columns.rows(); ++j) basis.at(j, i) = re.reduced.at(i, j);
        return Subspace(std::move(basis));
    }

    static Subspace from_ordered_basis(Matrix basis) {
        if (rank(basis) != basis.cols())
            fail(errc::internal_invariant, "proposed basis columns are dependent");
        return Subspace(std::move(basis));
    }

    static Subspace zero_subspace(FieldSpec f, int ambient) { return Subspace(Matrix(f, ambient, 0)); }
    static Subspace full(FieldSpec f, int ambient) { return Subspace(Matrix::identity(f, ambient)); }

    const FieldSpec& field() const noexcept { return basis_.field(); }
    const Matrix& basis() const noexcept { return basis_; }
    int dim() const noexcept { return basis_.cols(); }
    int ambient_dim() const noexcept { return basis_.rows(); }

    Matrix canonical_basis() const { return span(basis_).basis_; }

    bool same_space(const Subspace& o) const {
        return ambient_dim() == o.ambient_dim() && canonical_basis() == o.canonical_basis();
    }

    bool contains(const Matrix& v) const {
        return rank(hstack(basis_, v)) == dim();
    }

  private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

inline Subspace kernel_basis(const Matrix& a) {
    RowEchelon re = row_reduce(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (int p : re.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < a.cols(); ++j)
        if (!is_pivot[static_cast<std::size_t>(j)]) free_cols.push_back(j);
    Matrix basis(a.field(), a.cols(), static_cast<int>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis.at(free_cols[k], static_cast<int>(k)) = Scalar::one(a.field());
        for (std::size_t i = 0; i < re.pivots.size(); ++i)
            basis.at(re.pivots[i], static_cast<int>(k)) =
                -re.reduced.at(static_cast<int>(i), free_cols[k]);
    }
    return Subspace::span(basis);
}

inline Subspace range_basis(const Matrix& a) { return Subspace::span(a); }

/// Matrix of A on S in S's basis coordinates; S must be A-invariant.
inline Matrix restrict_to(const Matrix& a, const Subspace& s) {
    if (!a.is_square()) fail(errc::non_square, "restriction of a " + a.shape_str() + " matrix");
    if (a.rows() != s.ambient_dim()) fail(errc::shape_mismatch, "subspace lives elsewhere");
    try {
        return solve(s.basis(), a * s.basis());
    } catch (const error& e) {
        if (e.code() == errc::inconsistent_system)
            fail(errc::not_invariant, "A does not map the subspace into itself");
        throw;
    }
}

/// A linear functional in row form. The pairing with a column vector v is
/// the 1x1 product row*v, and the adjoint acts by right-multiplication,
/// so A* never materializes separately.
class DualVector {
  public:
    explicit DualVector(Matrix row) : row_(std::move(row)) {
        if (row_.rows() != 1) fail(errc::shape_mismatch, "dual vector must be a single row");
    }

    static DualVector coordinate(FieldSpec f, int ambient, int j) {
        Matrix r(f, 1, ambient);
        r.at(0, j) = Scalar::one(f);
        return DualVector(std::move(r));
    }

    Scalar pair(const Matrix& v) const { return (row_ * v).at(0, 0); }
    DualVector act(const Matrix& a) const { return DualVector(row_ * a); }
    const Matrix& row() const noexcept { return row_; }
    int ambient_dim() const noexcept { return row_.cols(); }

  private:
    Matrix row_;
};

inline Matrix stack_rows(FieldSpec f, int ambient, const std::vector<DualVector>& t) {
    Matrix m(f, static_cast<int>(t.size()), ambient);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].ambient_dim() != ambient) fail(errc::shape_mismatch, "dual vector of wrong width");
        for (int j = 0; j < ambient; ++j) m.at(static_cast<int>(i), j) = t[i].row().at(0, j);
    }
    return m;
}

/// {v : <v, t> = 0 for all t in T}, the kernel of the stacked rows.
inline Subspace annihilator(FieldSpec f, int ambient, const std::vector<DualVector>& t) {
    return kernel_basis(stack_rows(f, ambient, t));
}

/// sum coeff_j A^j, evaluated by Horner.
inline Matrix eval_at_matrix(const Polynomial& p, const Matrix& a) {
    if (!a.is_square()) fail(errc::non_square, "polynomial of a " + a.shape_str() + " matrix");
    if (!(p.field() == a.field())) fail(errc::field_mismatch, "polynomial over the wrong field");
    const int n = a.rows();
    Matrix r(a.field(), n, n);
    for (int d = p.degree(); d >= 0; --d) {
        r = r * a;
        Scalar c = p.coeff(d);
        if (!c.is_zero())
            for (int i = 0; i < n; ++i) r.at(i, i) = r.at(i, i) + c;
    }
    return r;
}

/// The monic annihilating polynomial of least degree, found as the first
/// linear dependence in the vectorized sequence I, A, A^2, ...
inline Polynomial minimal_polynomial(const Matrix& a) {
    if (!a.is_square()) fail(errc::non_square, "minimal polynomial of a " + a.shape_str() + " matrix");
    const FieldSpec f = a.field();
    const int n = a.rows();
    if (n == 0) return Polynomial::one(f);
    auto vectorize = [&](const Matrix& m) {
        Matrix v(f, n * n, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v.at(i * n + j, 0) = m.at(i, j);
        return v;
    };
    Matrix power = Matrix::identity(f, n);
    Matrix krylov = vectorize(power);
    for (int k = 1; k <= n; ++k) {
        power = power * a;
        Matrix target = vectorize(power);
        if (rank(krylov) == rank(hstack(krylov, target))) {
            Matrix c = solve(krylov, target);
            std::vector<Scalar> coeffs;
            for (int j = 0; j < k; ++j) coeffs.push_back(-c.at(j, 0));
            coeffs.push_back(Scalar::one(f));
            return Polynomial(f, std::move(coeffs));
        }
        krylov = hstack(krylov, target);
    }
    fail(errc::internal_invariant, "no annihilating polynomial up to the dimension");
}

}  // namespace canon
