#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "matprobe/types.hpp"

namespace matprobe {

inline constexpr double kCrouzeixNormal = 1.0;
/// Crouzeix-Palencia constant for non-normal matrices.
inline const double kCrouzeixGeneral = 1.0 + std::sqrt(2.0);

/// Exponential decay model |[f(A)]_ij| <= C q^
/// d(i,j). `from_polynomial_property` marks models backed by a polynomial
/// approximation property; several bounds require it. `fitted` marks
/// heuristic models estimated from data, whose bound values are estimates
/// rather than guarantees.
struct DecayModel {
    double C = 1.0;
    double q = 0.5;
    double K = kCrouzeixNormal;
    bool from_polynomial_property = false;
    bool fitted = false;

    double epsilon(Index d) const;  // C q^d
};

enum class BoundKind {
    TraceGeneric,          // sum_l |V_l|(|V_l|-1) eps
    TraceBanded,           // eps 2n/(1-q^d)
    TraceLattice,          // 2 C D n Li_{1-D}(q^d)
    TracePoly,             // 2 K n eps (needs polynomial property)
    SparseFrobeniusPoly,   // 2 K sqrt(n) eps (needs polynomial property)
    SparseNormsGeneric,    // n (gamma-1) eps, valid for 1-, 2-, F-norms
    Sparse1NormBanded,     // 2 beta q (2+2 d beta)/(1-q) eps
    KrylovCombinedFrobenius,  // 2 K C sqrt(n) (q^d + q^(s-1))
    KrylovTrace,           // 2 K C n q^d
};

/// Parameters of a bound evaluation; only the fields needed by the kind are
/// read and missing ones raise ArgumentError.
struct BoundRequest {
    BoundKind kind;
    std::optional<Index> n;
    std::optional<Index> d;
    std::optional<Index> s;      // Arnoldi steps (Krylov bounds)
    std::optional<Index> beta;   // semi-bandwidth
    std::optional<Index> D;      // lattice dimension
    std::optional<Index> gamma;  // max class size
    std::vector<Index> class_sizes;
};

double evaluate_bound(const DecayModel& model, const BoundRequest& req);

/// Li_{-s}(z) for integer s >= 0 and z in [0,1), evaluated through the
/// Eulerian-number numerator polynomial: Li_{-s}(z) = p_s(z)/(1-z)^(s+1).
double polylog_neg_int(Index s, double z);

/// Decay model for the inverse of a Hermitian positive definite matrix with
/// spectrum in [a,b]: q = (sqrt(kappa)-1)/(sqrt(kappa)+1), kappa = b/a, and
/// C = 1/a unless overridden.
DecayModel decay_model_inverse_hpd(double a, double b,
                                   std::optional<double> c_override = std::nullopt);

/// Preset for the inverse square root: same q as the HPD inverse model,
/// C = sqrt(2) (the [2,6] constant), not backed by a polynomial
/// approximation property.
DecayModel decay_model_inverse_sqrt_hpd(double a, double b,
                                        std::optional<double> c_override = std::nullopt);

struct DecayFit {
    DecayModel model;
    bool q_clamped = false;  // slope was nonnegative, q clamped below 1
};

/// Least-squares fit of log|entry| against distance over entries above the
/// 1e-14 floor. Needs two distinct distances; K defaults to the normal
/// constant. The result is heuristic: `fitted` is set and bounds from it are
/// estimates.
DecayFit fit_decay_model(std::span<const double> magnitudes, std::span<const Distance> distances,
                         double K = kCrouzeixNormal);

/// Conservative variant: q is the largest observed ratio between consecutive
/// distance levels (of per-level maxima), C the smallest constant making
/// C q^delta majorize every observed magnitude.
DecayFit fit_decay_model_conservative(std::span<const double> magnitudes,
                                      std::span<const Distance> distances,
                                      double K = kCrouzeixNormal);

}  // namespace matprobe
