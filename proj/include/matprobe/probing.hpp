#pragma once

#include <optional>
#include <variant>

#include "matprobe/coloring.hpp"
#include "matprobe/krylov.hpp"
#include "matprobe/sparse_matrix.hpp"

namespace matprobe {

/// Probing vectors v_l = sum_{i in V_l} e_i of a coloring; materialized on
/// demand. They partition the all-ones vector.
class ProbingVectors {
public:
    explicit ProbingVectors(const Coloring& col);

    Index count() const { return static_cast<Index>(classes_.size()); }
    Index dimension() const { return n_; }
    const std::vector<Index>& class_nodes(Index l) const {
        return classes_[static_cast<std::size_t>(l)];
    }
    Vector vector(Index l) const;

private:
    Index n_;
    std::vector<std::vector<Index>> classes_;
};

ProbingVectors probing_vectors(const Coloring& col);

/// How f(A)v and v^H f(A) v are evaluated: exactly through a dense oracle
/// (testing at desk scale) or with s Arnoldi steps.
struct EvalMode {
    static EvalMode exact() { return {true, 0}; }
    static EvalMode steps(Index s) { return {false, s}; }

    bool is_exact = false;
    Index krylov_steps = 0;
};

struct TraceEstimate {
    Scalar value{0.0};
    Index m = 0;  // number of probing vectors
    std::vector<Scalar> per_class_terms;
    std::optional<Index> krylov_steps;  // empty for exact evaluation
    std::optional<double> attached_bound;
};

/// Sparse approximation f(A)^[d]: entries live exactly on the distance-d
/// pattern of |G(A)|.
struct SparseFunctionApprox {
    SparseMatrix matrix;
    Distance d = 0;
    std::optional<Index> krylov_steps;  // empty for exact evaluation
};

/// T(f(A)) = sum_l v_l^H f(A) v_l with a distance-d coloring of G(A).
/// An undirected certificate is accepted as the stronger one. Exact mode
/// evaluates through a dense f(A).
TraceEstimate estimate_trace(const SparseMatrix& A, const ScalarFunction& f, const Coloring& col,
                             const EvalMode& mode);

/// Same estimator reusing a precomputed dense fA (exact evaluation only);
/// avoids recomputing the oracle across coloring sweeps.
TraceEstimate estimate_trace_from_dense(const DenseMatrix& fA, const Coloring& col);

/// f(A)^[d] from a distance-2d coloring of |G(A)|: for each class, scatter
/// the entries of f(A)v_l into the columns of that class on the kept
/// pattern. Throws ArgumentError when the coloring certificate is weaker
/// than 2d or not an undirected one.
SparseFunctionApprox sparse_approximation(const SparseMatrix& A, const ScalarFunction& f,
                                          Distance d, const Coloring& col, const EvalMode& mode);

SparseFunctionApprox sparse_approximation_from_dense(const DenseMatrix& fA,
                                                     const SparseMatrix& A, Distance d,
                                                     const Coloring& col);

struct ErrorNorms {
    double frobenius = 0.0;
    double one_norm = 0.0;
    double two_norm = 0.0;  // 0 when skipped
    double max_entry = 0.0;
};

/// Norms of fA - approx for a dense reference fA. The spectral norm comes
/// from a power iteration and can be skipped for large instances.
ErrorNorms error_norms(const DenseMatrix& fA, const SparseMatrix& approx,
                       bool with_two_norm = true);

/// Desk-scale oracle comparison: |tr f(A) - T|.
double trace_error_exact(const DenseMatrix& fA, const TraceEstimate& estimate);

}  // namespace matprobe
