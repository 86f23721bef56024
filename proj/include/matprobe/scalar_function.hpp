#pragma once

#include <functional>
#include <string>
#include <vector>

#include "matprobe/types.hpp"

namespace matprobe {

/// A scalar function f to be lifted to a matrix function f(A). The built-in
/// kinds are the ones needed by the experiment families; `callable` accepts
/// any user function but is restricted to eigendecomposition-based evaluation
/// (Hermitian matrices).
class ScalarFunction {
public:
    enum class Kind { Inverse, InverseSqrt, Log, Exp, Polynomial, Callable };

    static ScalarFunction inverse() { return ScalarFunction(Kind::Inverse); }
    static ScalarFunction inverse_sqrt() { return ScalarFunction(Kind::InverseSqrt); }
    static ScalarFunction log() { return ScalarFunction(Kind::Log); }
    static ScalarFunction exp() { return ScalarFunction(Kind::Exp); }
    /// coefficients in ascending order: p(z) = c[0] + c[1] z + ...
    static ScalarFunction polynomial(std::vector<Scalar> coefficients);
    static ScalarFunction callable(std::function<Scalar(Scalar)> fn, std::string name = "user");

    /// Parses "inv", "invsqrt", "log", "exp" (CLI spelling).
    static ScalarFunction parse(const std::string& name);

    Kind kind() const { return kind_; }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    Index degree() const { return static_cast<Index>(coeffs_.size()) - 1; }
    const std::string& name() const { return name_; }

    /// Pointwise evaluation on the principal branch. Throws DomainError where
    /// the branch is undefined (log/inverse sqrt on the closed negative real
    /// axis, inverse at zero).
    Scalar operator()(Scalar z) const;

private:
    explicit ScalarFunction(Kind k);

    Kind kind_;
    std::vector<Scalar> coeffs_;
    std::function<Scalar(Scalar)> fn_;
    std::string name_;
};

}  // namespace matprobe
