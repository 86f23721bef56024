#pragma once

#include "matprobe/scalar_function.hpp"
#include "matprobe/types.hpp"

namespace matprobe {

/// True if ||H - H^H||_max is below tol relative to the largest entry.
bool is_hermitian(const DenseMatrix& H, double tol = 1e-12);

/// Dense matrix function f(H).
///
/// Dispatch: `inverse` goes through an LU factorization; Hermitian H through
/// an eigendecomposition; everything else through the complex Schur form with
/// a Parlett recurrence on the triangular factor. Callables are limited to
/// the eigendecomposition path and reject non-Hermitian input.
///
/// Throws DomainError when f is undefined at an eigenvalue, NumericalError
/// when the Parlett recurrence meets a near-zero eigenvalue gap.
DenseMatrix dense_function(const DenseMatrix& H, const ScalarFunction& f);

}  // namespace matprobe
