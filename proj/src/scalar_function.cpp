#include "matprobe/scalar_function.hpp"

#include <cmath>

namespace matprobe {

namespace {

bool on_closed_negative_axis(Scalar z) { return z.imag() == 0.0 && z.real() <= 0.0; }

}  // namespace

ScalarFunction::ScalarFunction(Kind k) : kind_(k) {
    switch (k) {
        case Kind::Inverse: name_ = "inv"; break;
        case Kind::InverseSqrt: name_ = "invsqrt"; break;
        case Kind::Log: name_ = "log"; break;
        case Kind::Exp: name_ = "exp"; break;
        case Kind::Polynomial: name_ = "poly"; break;
        case Kind::Callable: name_ = "user"; break;
    }
}

ScalarFunction ScalarFunction::polynomial(std::vector<Scalar> coefficients) {
    if (coefficients.empty()) throw ArgumentError("polynomial needs at least one coefficient");
    ScalarFunction f(Kind::Polynomial);
    f.coeffs_ = std::move(coefficients);
    return f;
}

ScalarFunction ScalarFunction::callable(std::function<Scalar(Scalar)> fn, std::string name) {
    if (!fn) throw ArgumentError("empty callable");
    ScalarFunction f(Kind::Callable);
    f.fn_ = std::move(fn);
    f.name_ = std::move(name);
    return f;
}

ScalarFunction ScalarFunction::parse(const std::string& name) {
    if (name == "inv" || name == "inverse") return inverse();
    if (name == "invsqrt" || name == "inverse_sqrt") return inverse_sqrt();
    if (name == "log") return log();
    if (name == "exp") return exp();
    throw ArgumentError("unknown function '" + name + "'");
}

Scalar ScalarFunction::operator()(Scalar z) const {
    switch (kind_) {
        case Kind::Inverse:
            if (z == Scalar(0.0)) throw DomainError("inverse undefined at 0");
            return Scalar(1.0) / z;
        case Kind::InverseSqrt:
            if (on_closed_negative_axis(z))
                throw DomainError("principal inverse square root undefined at " +
                                  std::to_string(z.real()));
            return Scalar(1.0) / std::sqrt(z);
        case Kind::Log:
            if (on_closed_negative_axis(z))
                throw DomainError("principal log undefined at " + std::to_string(z.real()));
            return std::log(z);
        case Kind::Exp:
            return std::exp(z);
        case Kind::Polynomial: {
            Scalar acc(0.0);
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
            return acc;
        }
        case Kind::Callable:
            return fn_(z);
    }
    throw ArgumentError("unreachable function kind");
}

}  // namespace matprobe
