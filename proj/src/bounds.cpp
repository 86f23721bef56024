#include "matprobe/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace matprobe {

namespace {

Index require(const std::optional<Index>& v, const char* name) {
    if (!v || *v < 0) throw ArgumentError(std::string("bound request: missing or negative ") + name);
    return *v;
}

void check_model(const DecayModel& m) {
    if (!(m.C > 0.0)) throw ArgumentError("decay model: C must be positive");
    if (!(m.q >= 0.0 && m.q < 1.0)) throw ArgumentError("decay model: q must be in [0,1)");
    if (!(m.K >= 1.0)) throw ArgumentError("decay model: K must be >= 1");
}

// Eulerian numbers A(s, k), k = 0..s-1.
std::vector<double> eulerian_row(Index s) {
    std::vector<double> row{1.0};
    for (Index n = 2; n <= s; ++n) {
        std::vector<double> next(static_cast<std::size_t>(n), 0.0);
        for (Index k = 0; k < n; ++k) {
            const double left = k > 0 ? row[static_cast<std::size_t>(k - 1)] : 0.0;
            const double self = k < n - 1 ? row[static_cast<std::size_t>(k)] : 0.0;
            next[static_cast<std::size_t>(k)] =
                static_cast<double>(k + 1) * self + static_cast<double>(n - k) * left;
        }
        row = std::move(next);
    }
    return row;
}

}  // namespace

double DecayModel::epsilon(Index d) const {
    if (d < 0) throw ArgumentError("epsilon: negative distance");
    return C * std::pow(q, static_cast<double>(d));
}

double polylog_neg_int(Index s, double z) {
    if (s < 0) throw ArgumentError("polylog_neg_int: order must be >= 0");
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("polylog_neg_int: z must lie in [0,1)");
    if (z == 0.0) return 0.0;
    if (s == 0) return z / (1.0 - z);
    const auto euler = eulerian_row(s);
    // numerator p_s(z) = sum_k A(s,k) z^(s-k)
    double num = 0.0;
    for (std::size_t k = 0; k < euler.size(); ++k)
        num += euler[k] * std::pow(z, static_cast<double>(s) - static_cast<double>(k));
    return num / std::pow(1.0 - z, static_cast<double>(s) + 1.0);
}

double evaluate_bound(const DecayModel& model, const BoundRequest& req) {
    check_model(model);
    const double q = model.q;
    const double C = model.C;
    const double K = model.K;

    switch (req.kind) {
        case BoundKind::TraceGeneric: {
            const Index d = require(req.d, "d");
            if (req.class_sizes.empty())
                throw ArgumentError("bound request: trace_generic needs class sizes");
            const double eps = model.epsilon(d);
            double sum = 0.0;
            for (Index sz : req.class_sizes)
                sum += static_cast<double>(sz) * static_cast<double>(sz - 1);
            return sum * eps;
        }
        case BoundKind::TraceBanded: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            const double qd = std::pow(q, static_cast<double>(d));
            if (qd == 0.0) return 0.0;
            return model.epsilon(d) * 2.0 * static_cast<double>(n) / (1.0 - qd);
        }
        case BoundKind::TraceLattice: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            const Index D = require(req.D, "D");
            if (D < 1) throw ArgumentError("bound request: D must be >= 1");
            const double qd = std::pow(q, static_cast<double>(d));
            return 2.0 * C * static_cast<double>(D) * static_cast<double>(n) *
                   polylog_neg_int(D - 1, qd);
        }
        case BoundKind::TracePoly: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            if (!model.from_polynomial_property)
                throw ArgumentError(
                    "trace_poly bound requires a model with the polynomial approximation property");
            return 2.0 * K * static_cast<double>(n) * model.epsilon(d);
        }
        case BoundKind::SparseFrobeniusPoly: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            if (!model.from_polynomial_property)
                throw ArgumentError(
                    "sparse_frobenius_poly bound requires a model with the polynomial "
                    "approximation property");
            return 2.0 * K * std::sqrt(static_cast<double>(n)) * model.epsilon(d);
        }
        case BoundKind::SparseNormsGeneric: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            const Index gamma = require(req.gamma, "gamma");
            return static_cast<double>(n) * static_cast<double>(gamma - 1) * model.epsilon(d);
        }
        case BoundKind::Sparse1NormBanded: {
            const Index d = require(req.d, "d");
            const Index beta = require(req.beta, "beta");
            if (q == 0.0) return 0.0;
            return 2.0 * static_cast<double>(beta) * q *
                   (2.0 + 2.0 * static_cast<double>(d) * static_cast<double>(beta)) / (1.0 - q) *
                   model.epsilon(d);
        }
        case BoundKind::KrylovCombinedFrobenius: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            const Index s = require(req.s, "s");
            if (s < 1) throw ArgumentError("bound request: s must be >= 1");
            return 2.0 * K * C * std::sqrt(static_cast<double>(n)) *
                   (std::pow(q, static_cast<double>(d)) + std::pow(q, static_cast<double>(s - 1)));
        }
        case BoundKind::KrylovTrace: {
            const Index n = require(req.n, "n");
            const Index d = require(req.d, "d");
            return 2.0 * K * C * static_cast<double>(n) * std::pow(q, static_cast<double>(d));
        }
    }
    throw ArgumentError("unknown bound kind");
}

DecayModel decay_model_inverse_hpd(double a, double b, std::optional<double> c_override) {
    if (!(a > 0.0) || b < a) throw DomainError("decay_model_inverse_hpd: need 0 < a <= b");
    const double kappa = b / a;
    const double sq = std::sqrt(kappa);
    DecayModel m;
    m.q = (sq - 1.0) / (sq + 1.0);
    m.C = c_override.value_or(1.0 / a);
    m.K = kCrouzeixNormal;
    m.from_polynomial_property = true;
    return m;
}

DecayModel decay_model_inverse_sqrt_hpd(double a, double b, std::optional<double> c_override) {
    if (!(a > 0.0) || b < a) throw DomainError("decay_model_inverse_sqrt_hpd: need 0 < a <= b");
    const double kappa = b / a;
    const double sq = std::sqrt(kappa);
    DecayModel m;
    m.q = (sq - 1.0) / (sq + 1.0);
    m.C = c_override.value_or(std::sqrt(2.0));
    m.K = kCrouzeixNormal;
    m.from_polynomial_property = false;
    return m;
}

namespace {

constexpr double kFitFloor = 1e-14;
constexpr double kMaxFittedQ = 1.0 - 1e-12;

std::map<Distance, double> level_maxima(std::span<const double> magnitudes,
                                        std::span<const Distance> distances) {
    if (magnitudes.size() != distances.size())
        throw ArgumentError("fit_decay_model: magnitude/distance size mismatch");
    std::map<Distance, double> maxima;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (distances[i] >= kNoCap) continue;
        if (magnitudes[i] <= kFitFloor) continue;
        auto [it, inserted] = maxima.emplace(distances[i], magnitudes[i]);
        if (!inserted) it->second = std::max(it->second, magnitudes[i]);
    }
    if (maxima.size() < 2)
        throw NumericalError("fit_decay_model: need entries above the floor at two distances");
    return maxima;
}

}  // namespace

DecayFit fit_decay_model(std::span<const double> magnitudes, std::span<const Distance> distances,
                         double K) {
    if (magnitudes.size() != distances.size())
        throw ArgumentError("fit_decay_model: magnitude/distance size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    Distance dmin = kUnreachable, dmax = 0;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (distances[i] >= kNoCap || magnitudes[i] <= kFitFloor) continue;
        const double x = static_cast<double>(distances[i]);
        const double y = std::log(magnitudes[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
        dmin = std::min(dmin, distances[i]);
        dmax = std::max(dmax, distances[i]);
    }
    if (m < 2 || dmin == dmax)
        throw NumericalError("fit_decay_model: need entries above the floor at two distances");
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    const double slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / static_cast<double>(m);

    DecayFit fit;
    fit.model.C = std::exp(intercept);
    fit.model.q = std::exp(slope);
    if (fit.model.q >= 1.0) {
        fit.model.q = kMaxFittedQ;
        fit.q_clamped = true;
    }
    fit.model.K = K;
    fit.model.from_polynomial_property = false;
    fit.model.fitted = true;
    return fit;
}

DecayFit fit_decay_model_conservative(std::span<const double> magnitudes,
                                      std::span<const Distance> distances, double K) {
    const auto maxima = level_maxima(magnitudes, distances);

    DecayFit fit;
    double q = 0.0;
    for (auto it = maxima.begin(); std::next(it) != maxima.end(); ++it) {
        const auto nx = std::next(it);
        if (nx->first != it->first + 1) continue;
        q = std::max(q, nx->second / it->second);
    }
    if (q == 0.0) {
        // No consecutive levels; fall back to geometric-mean rates.
        for (auto it = maxima.begin(); std::next(it) != maxima.end(); ++it) {
            const auto nx = std::next(it);
            const double gap = static_cast<double>(nx->first - it->first);
            q = std::max(q, std::pow(nx->second / it->second, 1.0 / gap));
        }
    }
    if (q >= 1.0) {
        q = kMaxFittedQ;
        fit.q_clamped = true;
    }
    double C = 0.0;
    for (const auto& [delta, mag] : maxima)
        C = std::max(C, mag / std::pow(q, static_cast<double>(delta)));

    fit.model.C = C;
    fit.model.q = q;
    fit.model.K = K;
    fit.model.from_polynomial_property = false;
    fit.model.fitted = true;
    return fit;
}

}  // namespace matprobe
