#include "matprobe/dense_function.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace matprobe {

namespace {

bool is_real(const DenseMatrix& H) {
    for (Index j = 0; j < H.cols(); ++j)
        for (Index i = 0; i < H.rows(); ++i)
            if (H(i, j).imag() != 0.0) return false;
    return true;
}

DenseMatrix inverse_via_lu(const DenseMatrix& H) {
    const double scale = H.cwiseAbs().maxCoeff();
    if (is_real(H)) {
        Eigen::MatrixXd Hr = H.real();
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(Hr);
        const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
        if (pivot_min <= 1e-300 * std::max(1.0, scale))
            throw DomainError("inverse of a (numerically) singular matrix");
        return lu.inverse().cast<Scalar>();
    }
    Eigen::PartialPivLU<DenseMatrix> lu(H);
    const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (pivot_min <= 1e-300 * std::max(1.0, scale))
        throw DomainError("inverse of a (numerically) singular matrix");
    return lu.inverse();
}

DenseMatrix hermitian_via_eigen(const DenseMatrix& H, const ScalarFunction& f) {
    if (is_real(H)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.real());
        if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
        const Eigen::VectorXd& lam = es.eigenvalues();
        Vector flam(lam.size());
        for (Index i = 0; i < lam.size(); ++i) flam[i] = f(Scalar(lam[i], 0.0));
        const DenseMatrix V = es.eigenvectors().cast<Scalar>();
        return V * flam.asDiagonal() * V.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(H);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    Vector flam(lam.size());
    for (Index i = 0; i < lam.size(); ++i) flam[i] = f(Scalar(lam[i], 0.0));
    return es.eigenvectors() * flam.asDiagonal() * es.eigenvectors().adjoint();
}

// f(T) for upper triangular T via the Parlett recurrence F T = T F.
DenseMatrix parlett_triangular(const DenseMatrix& T, const ScalarFunction& f) {
    const Index n = T.rows();
    const double scale = std::max(1.0, T.cwiseAbs().maxCoeff());
    DenseMatrix F = DenseMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) F(i, i) = f(T(i, i));
    for (Index off = 1; off < n; ++off) {
        for (Index i = 0; i + off < n; ++i) {
            const Index j = i + off;
            const Scalar gap = T(j, j) - T(i, i);
            if (std::abs(gap) < 1e-10 * scale)
                throw NumericalError(
                    "Parlett recurrence: near-equal eigenvalues, evaluation ill-conditioned");
            Scalar rhs = T(i, j) * (F(j, j) - F(i, i));
            for (Index k = i + 1; k < j; ++k) rhs += T(i, k) * F(k, j) - F(i, k) * T(k, j);
            F(i, j) = rhs / gap;
        }
    }
    return F;
}

}  // namespace

bool is_hermitian(const DenseMatrix& H, double tol) {
    if (H.rows() != H.cols()) return false;
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    return (H - H.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

DenseMatrix dense_function(const DenseMatrix& H, const ScalarFunction& f) {
    if (H.rows() != H.cols()) throw ArgumentError("dense_function: matrix not square");
    if (H.rows() == 0) return H;

    if (f.kind() == ScalarFunction::Kind::Inverse) return inverse_via_lu(H);

    if (is_hermitian(H)) return hermitian_via_eigen(H, f);

    if (f.kind() == ScalarFunction::Kind::Callable)
        throw ArgumentError("user callables require a Hermitian matrix");

    Eigen::ComplexSchur<DenseMatrix> schur(H);
    if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
    const DenseMatrix FT = parlett_triangular(schur.matrixT(), f);
    return schur.matrixU() * FT * schur.matrixU().adjoint();
}

}  // namespace matprobe
