#pragma once

#include <optional>

#include "matprobe/dense_function.hpp"
#include "matprobe/sparse_matrix.hpp"
#include "matprobe/types.hpp"

namespace matprobe {

/// Result of s Arnoldi steps: Q has orthonormal columns, H = Q^H A Q is upper
/// Hessenberg (tridiagonal for Hermitian A), beta0 = ||b||_2. On lucky
/// breakdown the decomposition has breakdown_at = k < s columns and spans an
/// invariant subspace, making Krylov approximations from it exact.
struct ArnoldiDecomposition {
    DenseMatrix Q;
    DenseMatrix H;
    double beta0 = 0.0;
    std::optional<Index> breakdown_at;

    Index steps() const { return Q.cols(); }
    bool exact() const { return breakdown_at.has_value(); }
};

/// Modified Gram-Schmidt with one full reorthogonalization pass.
ArnoldiDecomposition arnoldi(const SparseMatrix& A, const Vector& b, Index s);

/// f_s = ||b|| Q_s f(H_s) e_1, the Arnoldi approximation of f(A)b. Exact for
/// polynomials of degree <= s-1.
Vector krylov_fun_vec(const SparseMatrix& A, const Vector& b, const ScalarFunction& f, Index s);

/// alpha_s = ||v||^2 e_1^H f(H_s) e_1, the Arnoldi/quadrature approximation
/// of v^H f(A) v. Exact for polynomials of degree <= 2s-1 (Hermitian A)
/// resp. <= s (general A).
Scalar krylov_quadratic_form(const SparseMatrix& A, const Vector& v, const ScalarFunction& f,
                             Index s);

/// Step-count rules tied to the probing distance d.
struct StepRule {
    enum class Purpose { SparseApprox, Trace };
    Purpose purpose = Purpose::SparseApprox;
    bool hermitian = false;
    Index d = 1;
};

/// sparse_approx -> d+1; trace -> ceil((d+1)/2) if Hermitian else d.
Index recommended_steps(const StepRule& rule);

/// Randomized check that <Ax, y> == <x, Ay> for a few random pairs; used to
/// verify a caller-declared Hermitian flag.
bool hermitian_probe(const SparseMatrix& A, unsigned seed = 0x5eed, int trials = 3,
                     double tol = 1e-10);

}  // namespace matprobe
