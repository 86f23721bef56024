#include <doctest.h>

#include <cmath>
#include <random>

#include "matprobe/bounds.hpp"

using namespace matprobe;

namespace {

// Truncated-series oracle for Li_{-s}(z) = sum_i i^s z^i.
double polylog_series(Index s, double z, int terms) {
    double acc = 0.0;
    for (int i = 1; i <= terms; ++i)
        acc += std::pow(static_cast<double>(i), static_cast<double>(s)) *
               std::pow(z, static_cast<double>(i));
    return acc;
}

const double kQ36 = (std::sqrt(3.0) - 1.0) / (std::sqrt(3.0) + 1.0);

}  // namespace

TEST_CASE("polylog rational forms, frozen values") {
    CHECK(polylog_neg_int(1, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(polylog_neg_int(2, 0.5) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(polylog_neg_int(0, 0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("polylog matches the truncated series") {
    CHECK(std::abs(polylog_neg_int(3, 0.3) - polylog_series(3, 0.3, 200)) <
          1e-12 * polylog_series(3, 0.3, 200));
    for (Index s = 0; s <= 3; ++s) {
        for (double z : {0.1, 0.3, 0.5, 0.9}) {
            const double series = polylog_series(s, z, 500);
            CHECK(std::abs(polylog_neg_int(s, z) - series) <= 1e-12 * series);
        }
    }
}

TEST_CASE("polylog explicit rational identities") {
    for (double z : {0.1, 0.3, 0.5, 0.9}) {
        CHECK(polylog_neg_int(0, z) == doctest::Approx(z / (1 - z)).epsilon(1e-14));
        CHECK(polylog_neg_int(1, z) == doctest::Approx(z / std::pow(1 - z, 2)).epsilon(1e-14));
        CHECK(polylog_neg_int(2, z) ==
              doctest::Approx((z + z * z) / std::pow(1 - z, 3)).epsilon(1e-14));
        CHECK(polylog_neg_int(3, z) ==
              doctest::Approx((z + 4 * z * z + z * z * z) / std::pow(1 - z, 4)).epsilon(1e-14));
    }
}

TEST_CASE("polylog domain error") {
    CHECK_THROWS_AS((void)polylog_neg_int(2, 1.0), DomainError);
    CHECK_THROWS_AS((void)polylog_neg_int(2, -0.1), DomainError);
}

TEST_CASE("trace_poly bound at the tridiagonal reference point") {
    const DecayModel model = decay_model_inverse_hpd(2.0, 6.0);
    BoundRequest req;
    req.kind = BoundKind::TracePoly;
    req.n = 1000;
    req.d = 5;
    const double bound = evaluate_bound(model, req);
    CHECK(bound == doctest::Approx(2.0 * 1000.0 * 0.5 * std::pow(kQ36, 5.0)).epsilon(1e-14));
    CHECK(bound == doctest::Approx(1.3816).epsilon(1e-3));
}

TEST_CASE("trace_banded bound vanishes as d grows") {
    const DecayModel model = decay_model_inverse_hpd(2.0, 6.0);
    BoundRequest req;
    req.kind = BoundKind::TraceBanded;
    req.n = 1000;
    double previous = std::numeric_limits<double>::max();
    for (Index d = 1; d <= 400; d += 20) {
        req.d = d;
        const double b = evaluate_bound(model, req);
        CHECK(b <= previous);
        previous = b;
    }
    req.d = 400;
    CHECK(evaluate_bound(model, req) < 1e-200);
}

TEST_CASE("lattice bound at D = 1 equals the banded bound") {
    const DecayModel model = decay_model_inverse_hpd(2.0, 6.0);
    for (Index d = 1; d <= 8; ++d) {
        BoundRequest banded{BoundKind::TraceBanded};
        banded.n = 500;
        banded.d = d;
        BoundRequest lattice{BoundKind::TraceLattice};
        lattice.n = 500;
        lattice.d = d;
        lattice.D = 1;
        const double vb = evaluate_bound(model, banded);
        const double vl = evaluate_bound(model, lattice);
        CHECK(std::abs(vb - vl) <= 1e-13 * vb);
    }
}

TEST_CASE("trace_banded over trace_poly equals 1/(1-q^d)") {
    const DecayModel model = decay_model_inverse_hpd(2.0, 6.0);
    for (Index d = 1; d <= 10; ++d) {
        BoundRequest banded{BoundKind::TraceBanded};
        banded.n = 777;
        banded.d = d;
        BoundRequest poly{BoundKind::TracePoly};
        poly.n = 777;
        poly.d = d;
        const double ratio = evaluate_bound(model, banded) / evaluate_bound(model, poly);
        const double expected = 1.0 / (1.0 - std::pow(model.q, static_cast<double>(d)));
        CHECK(ratio == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("all bounds are nonnegative and non-increasing in d") {
    DecayModel model;
    model.C = 0.7;
    model.q = 0.6;
    model.K = kCrouzeixGeneral;
    model.from_polynomial_property = true;
    for (BoundKind kind :
         {BoundKind::TraceGeneric, BoundKind::TraceBanded, BoundKind::TraceLattice,
          BoundKind::TracePoly, BoundKind::SparseFrobeniusPoly, BoundKind::SparseNormsGeneric,
          BoundKind::Sparse1NormBanded, BoundKind::KrylovCombinedFrobenius,
          BoundKind::KrylovTrace}) {
        double previous = std::numeric_limits<double>::max();
        for (Index d = 1; d <= 20; ++d) {
            BoundRequest req{kind};
            req.n = 100;
            req.d = d;
            req.s = d + 1;
            req.beta = 2;
            req.D = 2;
            req.gamma = 10;
            req.class_sizes = {10, 10, 10, 10, 10, 10, 10, 10, 10, 10};
            const double b = evaluate_bound(model, req);
            CHECK(b >= 0.0);
            // The 1-norm banded bound hits exact equality at its borderline
            // (q = (1+beta)/(1+2*beta)); allow roundoff around it.
            CHECK(b <= previous * (1.0 + 1e-12));
            previous = b;
        }
    }
}

TEST_CASE("polynomial-property bounds reject plain models") {
    DecayModel model;
    model.from_polynomial_property = false;
    BoundRequest req{BoundKind::TracePoly};
    req.n = 10;
    req.d = 2;
    CHECK_THROWS_AS((void)evaluate_bound(model, req), ArgumentError);
    req.kind = BoundKind::SparseFrobeniusPoly;
    CHECK_THROWS_AS((void)evaluate_bound(model, req), ArgumentError);
}

TEST_CASE("missing request parameters raise argument errors") {
    const DecayModel model = decay_model_inverse_hpd(2.0, 6.0);
    BoundRequest req{BoundKind::TraceBanded};
    req.d = 3;  // n missing
    CHECK_THROWS_AS((void)evaluate_bound(model, req), ArgumentError);
    BoundRequest generic{BoundKind::TraceGeneric};
    generic.d = 3;  // class sizes missing
    CHECK_THROWS_AS((void)evaluate_bound(model, generic), ArgumentError);
}

TEST_CASE("q = 0 models give zero bounds for d >= 1") {
    const DecayModel model = decay_model_inverse_hpd(3.0, 3.0);
    CHECK(model.q == 0.0);
    CHECK(model.C == doctest::Approx(1.0 / 3.0));
    BoundRequest req{BoundKind::TraceBanded};
    req.n = 50;
    req.d = 1;
    CHECK(evaluate_bound(model, req) == 0.0);
}

TEST_CASE("hpd inverse decay model constants") {
    const DecayModel m1 = decay_model_inverse_hpd(2.0, 6.0);
    CHECK(m1.q == doctest::Approx(kQ36).epsilon(1e-15));
    CHECK(m1.q == doctest::Approx(0.2679491924).epsilon(1e-9));
    CHECK(m1.C == doctest::Approx(0.5));
    CHECK(m1.K == 1.0);
    CHECK(m1.from_polynomial_property);

    const DecayModel m2 = decay_model_inverse_hpd(4.0, 12.0);
    CHECK(m2.q == doctest::Approx(m1.q));  // same condition number
    CHECK(m2.C == doctest::Approx(0.25));

    const DecayModel m3 = decay_model_inverse_hpd(4.0, 12.0, 0.1);
    CHECK(m3.C == doctest::Approx(0.1));

    CHECK_THROWS_AS((void)decay_model_inverse_hpd(0.0, 1.0), DomainError);
}

TEST_CASE("inverse sqrt preset") {
    const DecayModel m = decay_model_inverse_sqrt_hpd(2.0, 6.0);
    CHECK(m.C == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.q == doctest::Approx(kQ36));
    CHECK(!m.from_polynomial_property);
}

TEST_CASE("decay fit recovers exact log-linear data") {
    const double C = 0.05, q = 0.85;
    std::vector<double> mags;
    std::vector<Distance> dists;
    for (Distance delta = 0; delta <= 30; ++delta) {
        mags.push_back(C * std::pow(q, static_cast<double>(delta)));
        dists.push_back(delta);
    }
    const DecayFit fit = fit_decay_model(mags, dists);
    CHECK(fit.model.C == doctest::Approx(C).epsilon(1e-10));
    CHECK(fit.model.q == doctest::Approx(q).epsilon(1e-10));
    CHECK(!fit.q_clamped);
    CHECK(fit.model.fitted);
}

TEST_CASE("decay fit clamps a constant column") {
    std::vector<double> mags{0.5, 0.5, 0.5, 0.5};
    std::vector<Distance> dists{0, 1, 2, 3};
    const DecayFit fit = fit_decay_model(mags, dists);
    CHECK(fit.q_clamped);
    CHECK(fit.model.q < 1.0);
}

TEST_CASE("decay fit fails below the floor") {
    std::vector<double> mags{1e-16, 1e-17, 1e-18};
    std::vector<Distance> dists{0, 1, 2};
    CHECK_THROWS_AS((void)fit_decay_model(mags, dists), NumericalError);
}

TEST_CASE("conservative fit majorizes its input") {
    std::mt19937_64 rng(9);
    std::vector<double> mags;
    std::vector<Distance> dists;
    for (Distance delta = 0; delta <= 20; ++delta) {
        const double jitter = 0.5 + static_cast<double>(rng() % 1000) / 1000.0;
        mags.push_back(0.3 * std::pow(0.7, static_cast<double>(delta)) * jitter);
        dists.push_back(delta);
    }
    const DecayFit fit = fit_decay_model_conservative(mags, dists);
    for (std::size_t i = 0; i < mags.size(); ++i)
        CHECK(mags[i] <= fit.model.C * std::pow(fit.model.q, static_cast<double>(dists[i])) *
                             (1.0 + 1e-12));
}
