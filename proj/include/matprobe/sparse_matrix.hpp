#pragma once

#include <span>
#include <vector>

#include "matprobe/types.hpp"

namespace matprobe {

/// One explicit entry of a sparse matrix, used for construction.
struct Triplet {
    Index row;
    Index col;
    Scalar value;
};

/// Immutable sparse matrix in compressed sparse row format over complex
/// doubles. Column indices are strictly increasing within each row and
/// duplicates are merged at construction.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Builds from an unsorted triplet list. Duplicate positions are summed;
    /// entries whose sum is exactly zero are dropped.
    static SparseMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> triplets);

    static SparseMatrix identity(Index n);
    static SparseMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);

    Index rows() const { return n_rows_; }
    Index cols() const { return n_cols_; }
    Index nnz() const { return static_cast<Index>(values_.size()); }

    std::span<const Index> row_ptr() const { return row_ptr_; }
    std::span<const Index> col_idx() const { return col_idx_; }
    std::span<const Scalar> values() const { return values_; }

    /// Column indices of the stored entries in row i.
    std::span<const Index> row_cols(Index i) const;
    std::span<const Scalar> row_values(Index i) const;

    /// Stored value at (i, j), zero if the position is not stored.
    Scalar coeff(Index i, Index j) const;

    Vector matvec(const Vector& x) const;

    DenseMatrix to_dense() const;

    /// Row-sum check of A == A^H on the stored pattern.
    bool is_hermitian(double tol = 0.0) const;
    /// True when the pattern of nonzeros is symmetric (values ignored).
    bool is_structurally_symmetric() const;

    /// Symmetric permutation B = P A P^T with B(new_i, new_j) = A(perm[new_i], perm[new_j]).
    SparseMatrix permute_symmetric(std::span<const Index> perm) const;

    /// Largest |i - j| over stored entries.
    Index bandwidth() const;

    Scalar trace() const;

private:
    Index n_rows_ = 0;
    Index n_cols_ = 0;
    std::vector<Index> row_ptr_{0};
    std::vector<Index> col_idx_;
    std::vector<Scalar> values_;
};

}  // namespace matprobe
