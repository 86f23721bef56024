#include "matprobe/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace matprobe {

SparseMatrix SparseMatrix::from_triplets(Index n_rows, Index n_cols,
                                         std::vector<Triplet> triplets) {
    if (n_rows < 0 || n_cols < 0) throw ArgumentError("negative matrix dimension");
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
            throw ArgumentError("triplet index out of bounds");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.row_ptr_.assign(static_cast<std::size_t>(n_rows) + 1, 0);

    std::size_t k = 0;
    while (k < triplets.size()) {
        const Index r = triplets[k].row;
        const Index c = triplets[k].col;
        Scalar v = triplets[k].value;
        ++k;
        while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
            v += triplets[k].value;
            ++k;
        }
        if (v != Scalar(0.0)) {
            m.col_idx_.push_back(c);
            m.values_.push_back(v);
            ++m.row_ptr_[static_cast<std::size_t>(r) + 1];
        }
    }
    for (Index i = 0; i < n_rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    return m;
}

SparseMatrix SparseMatrix::identity(Index n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) t.push_back({i, i, Scalar(1.0)});
    return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_tol) {
    std::vector<Triplet> t;
    for (Index i = 0; i < dense.rows(); ++i)
        for (Index j = 0; j < dense.cols(); ++j)
            if (std::abs(dense(i, j)) > drop_tol) t.push_back({i, j, dense(i, j)});
    return from_triplets(dense.rows(), dense.cols(), std::move(t));
}

std::span<const Index> SparseMatrix::row_cols(Index i) const {
    const auto b = static_cast<std::size_t>(row_ptr_[i]);
    const auto e = static_cast<std::size_t>(row_ptr_[i + 1]);
    return {col_idx_.data() + b, e - b};
}

std::span<const Scalar> SparseMatrix::row_values(Index i) const {
    const auto b = static_cast<std::size_t>(row_ptr_[i]);
    const auto e = static_cast<std::size_t>(row_ptr_[i + 1]);
    return {values_.data() + b, e - b};
}

Scalar SparseMatrix::coeff(Index i, Index j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return Scalar(0.0);
    return values_[static_cast<std::size_t>(row_ptr_[i] + (it - cols.begin()))];
}

Vector SparseMatrix::matvec(const Vector& x) const {
    if (x.size() != n_cols_) throw ArgumentError("matvec: dimension mismatch");
    Vector y = Vector::Zero(n_rows_);
    for (Index i = 0; i < n_rows_; ++i) {
        Scalar acc(0.0);
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            acc += values_[static_cast<std::size_t>(k)] * x[col_idx_[static_cast<std::size_t>(k)]];
        y[i] = acc;
    }
    return y;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d = DenseMatrix::Zero(n_rows_, n_cols_);
    for (Index i = 0; i < n_rows_; ++i)
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            d(i, col_idx_[static_cast<std::size_t>(k)]) = values_[static_cast<std::size_t>(k)];
    return d;
}

bool SparseMatrix::is_hermitian(double tol) const {
    if (n_rows_ != n_cols_) return false;
    for (Index i = 0; i < n_rows_; ++i) {
        const auto cols = row_cols(i);
        const auto vals = row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (std::abs(coeff(cols[k], i) - std::conj(vals[k])) > tol) return false;
        }
    }
    return true;
}

bool SparseMatrix::is_structurally_symmetric() const {
    if (n_rows_ != n_cols_) return false;
    for (Index i = 0; i < n_rows_; ++i)
        for (Index j : row_cols(i))
            if (coeff(j, i) == Scalar(0.0) && j != i) {
                const auto cols = row_cols(j);
                if (!std::binary_search(cols.begin(), cols.end(), i)) return false;
            }
    return true;
}

SparseMatrix SparseMatrix::permute_symmetric(std::span<const Index> perm) const {
    if (n_rows_ != n_cols_) throw ArgumentError("permute_symmetric: matrix not square");
    if (static_cast<Index>(perm.size()) != n_rows_)
        throw ArgumentError("permute_symmetric: permutation size mismatch");
    std::vector<Index> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (perm[k] < 0 || perm[k] >= n_rows_)
            throw ArgumentError("permute_symmetric: index out of range");
        inv[static_cast<std::size_t>(perm[k])] = static_cast<Index>(k);
    }
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(nnz()));
    for (Index i = 0; i < n_rows_; ++i)
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            t.push_back({inv[static_cast<std::size_t>(i)],
                         inv[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)])],
                         values_[static_cast<std::size_t>(k)]});
    return from_triplets(n_rows_, n_cols_, std::move(t));
}

Index SparseMatrix::bandwidth() const {
    Index bw = 0;
    for (Index i = 0; i < n_rows_; ++i)
        for (Index j : row_cols(i)) bw = std::max(bw, std::abs(i - j));
    return bw;
}

Scalar SparseMatrix::trace() const {
    Scalar t(0.0);
    const Index n = std::min(n_rows_, n_cols_);
    for (Index i = 0; i < n; ++i) t += coeff(i, i);
    return t;
}

}  // namespace matprobe
