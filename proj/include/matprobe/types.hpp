#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace matprobe {

using Scalar = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = std::int64_t;

/// Geodesic distances are unsigned with sentinels near the top of the range.
using Distance = std::uint32_t;

/// Sentinel for nodes that cannot be reached at all.
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();
/// Sentinel for nodes whose distance exceeds a BFS cap.
inline constexpr Distance kBeyondCap = kUnreachable - 1;
/// Cap value meaning "no cap".
inline constexpr Distance kNoCap = kBeyondCap - 1;

/// Invalid arguments, dimension mismatches, unmet preconditions.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// f undefined at a point of the spectrum (log of a nonpositive real, 1/0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical failure during evaluation (e.g. Parlett recurrence with a
/// near-zero eigenvalue gap).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the offending line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, long line)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    explicit ParseError(const std::string& msg) : ParseError(msg, -1) {}

    long line() const { return line_; }

private:
    long line_;
};

}  // namespace matprobe
