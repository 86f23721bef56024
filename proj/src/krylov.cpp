#include "matprobe/krylov.hpp"

#include <cmath>
#include <random>

namespace matprobe {

ArnoldiDecomposition arnoldi(const SparseMatrix& A, const Vector& b, Index s) {
    if (A.rows() != A.cols()) throw ArgumentError("arnoldi: matrix not square");
    if (b.size() != A.rows()) throw ArgumentError("arnoldi: dimension mismatch");
    const double beta0 = b.norm();
    if (beta0 == 0.0) throw ArgumentError("arnoldi: zero start vector");
    if (s < 1 || s > A.rows()) throw ArgumentError("arnoldi: steps must lie in [1, n]");

    const Index n = A.rows();
    DenseMatrix Q(n, s);
    DenseMatrix H = DenseMatrix::Zero(s, s);
    Q.col(0) = b / beta0;

    ArnoldiDecomposition dec;
    const double breakdown_tol = 1e-12;
    Index k = 0;
    for (; k < s; ++k) {
        Vector w = A.matvec(Q.col(k));
        const double wscale = std::max(1.0, w.norm());
        // MGS followed by one full reorthogonalization pass.
        for (int pass = 0; pass < 2; ++pass) {
            for (Index j = 0; j <= k; ++j) {
                const Scalar h = Q.col(j).adjoint() * w;
                w -= h * Q.col(j);
                H(j, k) += h;
            }
        }
        const double hnext = w.norm();
        if (hnext <= breakdown_tol * wscale) {
            dec.breakdown_at = k + 1;
            break;
        }
        if (k + 1 < s) {
            H(k + 1, k) = hnext;
            Q.col(k + 1) = w / hnext;
        }
    }

    if (dec.breakdown_at) {
        const Index m = *dec.breakdown_at;
        dec.Q = Q.leftCols(m);
        dec.H = H.topLeftCorner(m, m);
    } else {
        dec.Q = std::move(Q);
        dec.H = std::move(H);
    }
    dec.beta0 = beta0;
    return dec;
}

Vector krylov_fun_vec(const SparseMatrix& A, const Vector& b, const ScalarFunction& f, Index s) {
    const ArnoldiDecomposition dec = arnoldi(A, b, s);
    const DenseMatrix fH = dense_function(dec.H, f);
    return dec.beta0 * (dec.Q * fH.col(0));
}

Scalar krylov_quadratic_form(const SparseMatrix& A, const Vector& v, const ScalarFunction& f,
                             Index s) {
    const ArnoldiDecomposition dec = arnoldi(A, v, s);
    const DenseMatrix fH = dense_function(dec.H, f);
    return dec.beta0 * dec.beta0 * fH(0, 0);
}

Index recommended_steps(const StepRule& rule) {
    if (rule.d < 1) throw ArgumentError("recommended_steps: d must be >= 1");
    switch (rule.purpose) {
        case StepRule::Purpose::SparseApprox:
            return rule.d + 1;
        case StepRule::Purpose::Trace:
            return rule.hermitian ? (rule.d + 2) / 2 : rule.d;
    }
    throw ArgumentError("recommended_steps: unknown purpose");
}

bool hermitian_probe(const SparseMatrix& A, unsigned seed, int trials, double tol) {
    if (A.rows() != A.cols()) return false;
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Index n = A.rows();
    for (int t = 0; t < trials; ++t) {
        Vector x(n), y(n);
        for (Index i = 0; i < n; ++i) {
            x[i] = Scalar(gauss(rng), gauss(rng));
            y[i] = Scalar(gauss(rng), gauss(rng));
        }
        const Vector Ax = A.matvec(x);
        const Vector Ay = A.matvec(y);
        const Scalar lhs = y.adjoint() * Ax;   // <y, Ax>, conjugate-linear first slot
        const Scalar rhs = Ay.adjoint() * x;   // <Ay, x> = <y, A^H x>
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (std::abs(lhs - rhs) > tol * scale) return false;
    }
    return true;
}

}  // namespace matprobe
