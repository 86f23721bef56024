#include "matprobe/probing.hpp"

#include <cmath>
#include <random>

#include "matprobe/dense_function.hpp"
#include "matprobe/graph.hpp"

namespace matprobe {

ProbingVectors::ProbingVectors(const Coloring& col)
    : n_(col.size()), classes_(col.classes) {
    for (const auto& cls : classes_)
        if (cls.empty()) throw ArgumentError("probing_vectors: empty color class");
}

Vector ProbingVectors::vector(Index l) const {
    if (l < 0 || l >= count()) throw ArgumentError("probing vector index out of range");
    Vector v = Vector::Zero(n_);
    for (Index i : classes_[static_cast<std::size_t>(l)]) v[i] = Scalar(1.0);
    return v;
}

ProbingVectors probing_vectors(const Coloring& col) { return ProbingVectors(col); }

namespace {

void check_trace_coloring(const SparseMatrix& A, const Coloring& col) {
    if (col.size() != A.rows()) throw ArgumentError("estimate_trace: coloring size mismatch");
    if (col.certified_distance < 1)
        throw ArgumentError("estimate_trace: coloring carries no distance certificate");
}

}  // namespace

TraceEstimate estimate_trace_from_dense(const DenseMatrix& fA, const Coloring& col) {
    if (fA.rows() != col.size()) throw ArgumentError("estimate_trace: dimension mismatch");
    TraceEstimate est;
    est.m = static_cast<Index>(col.classes.size());
    est.per_class_terms.reserve(col.classes.size());
    for (const auto& cls : col.classes) {
        Scalar term(0.0);
        for (Index i : cls)
            for (Index j : cls) term += fA(i, j);
        est.per_class_terms.push_back(term);
        est.value += term;
    }
    return est;
}

TraceEstimate estimate_trace(const SparseMatrix& A, const ScalarFunction& f, const Coloring& col,
                             const EvalMode& mode) {
    check_trace_coloring(A, col);
    if (mode.is_exact) return estimate_trace_from_dense(dense_function(A.to_dense(), f), col);

    if (mode.krylov_steps < 1) throw ArgumentError("estimate_trace: need at least one Krylov step");
    const ProbingVectors pv(col);
    TraceEstimate est;
    est.m = pv.count();
    est.krylov_steps = mode.krylov_steps;
    est.per_class_terms.reserve(static_cast<std::size_t>(pv.count()));
    for (Index l = 0; l < pv.count(); ++l) {
        const Index s = std::min(mode.krylov_steps, A.rows());
        const Scalar term = krylov_quadratic_form(A, pv.vector(l), f, s);
        est.per_class_terms.push_back(term);
        est.value += term;
    }
    return est;
}

namespace {

void check_sparse_coloring(const SparseMatrix& A, Distance d, const Coloring& col) {
    if (col.size() != A.rows())
        throw ArgumentError("sparse_approximation: coloring size mismatch");
    if (col.mode != GraphMode::Undirected)
        throw ArgumentError(
            "sparse_approximation: needs a coloring certified on the undirected graph");
    if (col.certified_distance < 2 * d)
        throw ArgumentError("sparse_approximation: coloring certified only at distance " +
                            std::to_string(col.certified_distance) + " < 2d = " +
                            std::to_string(2 * d));
}

// Scatters per-class vectors w_l into the distance-d pattern around each
// column of the class. Columns of different classes are disjoint.
template <typename ClassVector>
SparseFunctionApprox scatter_approximation(const SparseMatrix& A, Distance d, const Coloring& col,
                                           ClassVector&& class_vector) {
    const PatternGraph undirected = pattern_graph(A, false);
    std::vector<Triplet> triplets;
    for (std::size_t l = 0; l < col.classes.size(); ++l) {
        const Vector w = class_vector(static_cast<Index>(l));
        for (Index j : col.classes[l]) {
            const auto dist = bfs_distances(undirected, j, d);
            for (Index i = 0; i < A.rows(); ++i)
                if (dist[static_cast<std::size_t>(i)] <= d && w[i] != Scalar(0.0))
                    triplets.push_back({i, j, w[i]});
        }
    }
    SparseFunctionApprox approx;
    approx.matrix = SparseMatrix::from_triplets(A.rows(), A.cols(), std::move(triplets));
    approx.d = d;
    return approx;
}

}  // namespace

SparseFunctionApprox sparse_approximation_from_dense(const DenseMatrix& fA, const SparseMatrix& A,
                                                     Distance d, const Coloring& col) {
    check_sparse_coloring(A, d, col);
    if (fA.rows() != A.rows()) throw ArgumentError("sparse_approximation: dimension mismatch");
    return scatter_approximation(A, d, col, [&](Index l) {
        Vector w = Vector::Zero(fA.rows());
        for (Index j : col.classes[static_cast<std::size_t>(l)]) w += fA.col(j);
        return w;
    });
}

SparseFunctionApprox sparse_approximation(const SparseMatrix& A, const ScalarFunction& f,
                                          Distance d, const Coloring& col, const EvalMode& mode) {
    check_sparse_coloring(A, d, col);
    if (mode.is_exact)
        return sparse_approximation_from_dense(dense_function(A.to_dense(), f), A, d, col);

    if (mode.krylov_steps < 1)
        throw ArgumentError("sparse_approximation: need at least one Krylov step");
    const ProbingVectors pv(col);
    auto approx = scatter_approximation(A, d, col, [&](Index l) {
        const Index s = std::min(mode.krylov_steps, A.rows());
        return krylov_fun_vec(A, pv.vector(l), f, s);
    });
    approx.krylov_steps = mode.krylov_steps;
    return approx;
}

ErrorNorms error_norms(const DenseMatrix& fA, const SparseMatrix& approx, bool with_two_norm) {
    if (fA.rows() != approx.rows() || fA.cols() != approx.cols())
        throw ArgumentError("error_norms: dimension mismatch");
    DenseMatrix E = fA - approx.to_dense();
    ErrorNorms norms;
    norms.frobenius = E.norm();
    norms.max_entry = E.cwiseAbs().maxCoeff();
    norms.one_norm = E.cwiseAbs().colwise().sum().maxCoeff();
    if (!with_two_norm) return norms;

    // Largest singular value by power iteration on E^H E.
    std::mt19937 rng(1234);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(E.cols());
    for (Index i = 0; i < v.size(); ++i) v[i] = Scalar(gauss(rng), gauss(rng));
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vector w = E.adjoint() * (E * v);
        const double nw = w.norm();
        if (nw == 0.0) break;
        v = w / nw;
        const double next = std::sqrt(nw);
        if (std::abs(next - sigma) <= 1e-11 * std::max(1.0, next)) {
            sigma = next;
            break;
        }
        sigma = next;
    }
    norms.two_norm = sigma;
    return norms;
}

double trace_error_exact(const DenseMatrix& fA, const TraceEstimate& estimate) {
    return std::abs(fA.trace() - estimate.value);
}

}  // namespace matprobe
