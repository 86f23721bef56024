#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "matprobe/harness.hpp"
#include "matprobe/matrix_market.hpp"
#include "test_helpers.hpp"

using namespace matprobe;

TEST_CASE("tridiagonal generator matches the hand construction") {
    const SparseMatrix A = generate_matrix(TridiagSpec{4, Scalar(-1), Scalar(4), Scalar(-1)});
    CHECK(A.is_hermitian(0.0));
    const Vector rowsum = A.matvec(Vector::Ones(4));
    CHECK(rowsum[0] == Scalar(3));
    CHECK(rowsum[1] == Scalar(2));
    CHECK(rowsum[2] == Scalar(2));
    CHECK(rowsum[3] == Scalar(3));
}

TEST_CASE("shifted skew generator is normal but not Hermitian") {
    const SparseMatrix A = generate_matrix(ShiftedSkewSpec{6});
    CHECK(A.coeff(0, 0) == Scalar(2.0, 1.0));
    CHECK(A.coeff(1, 0) == Scalar(-1.0));
    CHECK(A.coeff(0, 1) == Scalar(1.0));
    CHECK(!A.is_hermitian(1e-14));
    const DenseMatrix D = A.to_dense();
    CHECK((D * D.adjoint() - D.adjoint() * D).norm() < 1e-12);
}

TEST_CASE("2D Laplacian generator has the right diagonal and spectrum") {
    const SparseMatrix A = generate_matrix(Laplace2dSpec{3, 4.0});
    CHECK(A.rows() == 9);
    for (Index i = 0; i < 9; ++i) CHECK(A.coeff(i, i) == Scalar(8.0));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.to_dense().real());
    CHECK(es.eigenvalues().minCoeff() >= 4.0 - 1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= 12.0 + 1e-12);

    // Kronecker identity: A = I (x) M + M (x) I with M = tridiag(-1,4,-1).
    const SparseMatrix M = generate_matrix(TridiagSpec{3, Scalar(-1), Scalar(4), Scalar(-1)});
    const DenseMatrix Md = M.to_dense();
    DenseMatrix expected = DenseMatrix::Zero(9, 9);
    for (Index r = 0; r < 3; ++r)
        for (Index c = 0; c < 3; ++c)
            for (Index rr = 0; rr < 3; ++rr)
                for (Index cc = 0; cc < 3; ++cc) {
                    if (r == rr) expected(r * 3 + c, rr * 3 + cc) += Md(c, cc);
                    if (c == cc) expected(r * 3 + c, rr * 3 + cc) += Md(r, rr);
                }
    CHECK((A.to_dense() - expected).norm() == 0.0);
}

TEST_CASE("covariance generator: unit diagonal, threshold radius, symmetry") {
    const SparseMatrix A = generate_matrix(CovarianceSpec{6, 2.0, 7.0});
    CHECK(A.rows() == 36);
    CHECK(A.is_hermitian(0.0));
    for (Index i = 0; i < A.rows(); ++i) CHECK(A.coeff(i, i) == Scalar(1.0));
    for (Index i = 0; i < A.rows(); ++i) {
        const Index xi = i / 6, yi = i % 6;
        for (Index j = 0; j < A.rows(); ++j) {
            const Index xj = j / 6, yj = j % 6;
            const double r = std::hypot(static_cast<double>(xi - xj),
                                        static_cast<double>(yi - yj));
            const Scalar v = A.coeff(i, j);
            if (r > 2.0) {
                CHECK(v == Scalar(0.0));
            } else {
                CHECK(v == Scalar(std::pow(1.0 - r / 2.0, 7.0)));
            }
        }
    }
}

TEST_CASE("gmrf generator: seeded, symmetric, diagonally dominant") {
    const GmrfSpec spec{200, 20.0, 0.05, 7};
    const SparseMatrix A = generate_matrix(spec);
    const SparseMatrix B = generate_matrix(spec);
    CHECK((A.to_dense() - B.to_dense()).norm() == 0.0);  // deterministic
    CHECK(A.is_hermitian(0.0));
    for (Index i = 0; i < A.rows(); ++i) {
        double offsum = 0.0;
        for (std::size_t k = 0; k < A.row_cols(i).size(); ++k)
            if (A.row_cols(i)[k] != i) offsum += std::abs(A.row_values(i)[k]);
        CHECK(A.coeff(i, i).real() == doctest::Approx(1.0 + offsum).epsilon(1e-12));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.to_dense().real());
    CHECK(es.eigenvalues().minCoeff() >= 1.0 - 1e-9);
}

TEST_CASE("gmrf reordering drops the bandwidth well below n") {
    const SparseMatrix A = generate_matrix(GmrfSpec{1000, 20.0, 0.02, 42});
    const OrderingResult r = cuthill_mckee(pattern_graph(A, false));
    CHECK(r.bandwidth > 0);
    CHECK(r.bandwidth < 250);
    MESSAGE("gmrf n=1000 RCM bandwidth: ", r.bandwidth);
}

TEST_CASE("dense_reference diagonal and decay checks") {
    const SparseMatrix D = SparseMatrix::from_triplets(
        2, 2, {{0, 0, Scalar(2)}, {1, 1, Scalar(6)}});
    const DenseMatrix F = dense_reference(D, ScalarFunction::inverse_sqrt());
    CHECK(std::abs(F(0, 0) - Scalar(1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(F(1, 1) - Scalar(1.0 / std::sqrt(6.0))) < 1e-14);

    const SparseMatrix A = generate_matrix(TridiagSpec{100, Scalar(-1), Scalar(4), Scalar(-1)});
    const DenseMatrix inv = dense_reference(A, ScalarFunction::inverse());
    const double q = (std::sqrt(3.0) - 1.0) / (std::sqrt(3.0) + 1.0);
    for (Index i = 0; i < 100; ++i)
        for (Index j = 0; j < 100; ++j)
            CHECK(std::abs(inv(i, j)) <=
                  0.5 * std::pow(q, std::abs(static_cast<double>(i - j))) + 1e-15);
}

TEST_CASE("trace of the log equals the log determinant") {
    std::mt19937 rng(43);
    const SparseMatrix A = testing::random_hermitian(60, 0.08, rng);
    const DenseMatrix logA = dense_reference(A, ScalarFunction::log());
    const Scalar trace_log = logA.trace();
    const Scalar det = A.to_dense().partialPivLu().determinant();
    CHECK(std::abs(trace_log.real() - std::log(std::abs(det))) <= 1e-8 * std::abs(trace_log));
}

TEST_CASE("dense_reference enforces the cap") {
    const SparseMatrix A = generate_matrix(TridiagSpec{50, Scalar(-1), Scalar(4), Scalar(-1)});
    CHECK_THROWS_AS((void)dense_reference(A, ScalarFunction::inverse(), 10), ArgumentError);
}

TEST_CASE("matrix spec parser") {
    const MatrixSpec t = parse_matrix_spec("tridiag:n=1000");
    CHECK(std::get<TridiagSpec>(t).n == 1000);
    const MatrixSpec l = parse_matrix_spec("laplace2d:N=32,shift=0.1");
    CHECK(std::get<Laplace2dSpec>(l).N == 32);
    CHECK(std::get<Laplace2dSpec>(l).shift == doctest::Approx(0.1));
    const MatrixSpec c = parse_matrix_spec("covariance:N=51,alpha=2,beta=7");
    CHECK(std::get<CovarianceSpec>(c).alpha == doctest::Approx(2.0));
    const MatrixSpec g = parse_matrix_spec("gmrf:n=1000,phi=20,delta=0.02,seed=9");
    CHECK(std::get<GmrfSpec>(g).seed == 9);
    CHECK_THROWS_AS((void)parse_matrix_spec("banana:n=3"), ArgumentError);
    CHECK_THROWS_AS((void)parse_matrix_spec("tridiag:n"), ArgumentError);
}

TEST_CASE("experiment sweep over d: errors below bounds, deterministic CSV") {
    ExperimentConfig cfg;
    cfg.family = TridiagSpec{200, Scalar(-1), Scalar(4), Scalar(-1)};
    cfg.f = ScalarFunction::inverse();
    cfg.task = ExperimentTask::Trace;
    cfg.sweep_variable = 'd';
    cfg.sweep_values = {1, 2, 3, 4, 5, 6};
    cfg.coloring.method = ColoringChoice::Method::Banded;
    cfg.coloring.beta = 1;
    BoundChoice bc;
    bc.kind = BoundKind::TracePoly;
    bc.source = BoundChoice::ModelSource::InverseHpd;
    bc.a = 2.0;
    bc.b = 6.0;
    cfg.bound = bc;

    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 6);
    double previous_error = std::numeric_limits<double>::max();
    for (const auto& r : records) {
        REQUIRE(r.abs_error.has_value());
        REQUIRE(r.bound.has_value());
        CHECK(*r.abs_error <= *r.bound);
        CHECK(*r.abs_error <= previous_error);
        previous_error = *r.abs_error;
        CHECK(r.m_colors == r.d + 1);
    }

    // Deterministic up to wall time: drop the trailing seconds column.
    auto strip_seconds = [](const std::string& csv) {
        std::string out;
        std::istringstream lines(csv);
        std::string line;
        while (std::getline(lines, line)) out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    };
    std::ostringstream a, b;
    write_csv(records, a);
    write_csv(run_experiment(cfg), b);
    CHECK(strip_seconds(a.str()) == strip_seconds(b.str()));
    CHECK(a.str().substr(0, 6) == "family");
}

TEST_CASE("experiment sweep over n with fixed d: flat 1-norm for the inverse sqrt") {
    ExperimentConfig cfg;
    cfg.family = TridiagSpec{100, Scalar(-1), Scalar(4), Scalar(-1)};
    cfg.f = ScalarFunction::inverse_sqrt();
    cfg.task = ExperimentTask::SparseApprox;
    cfg.sweep_variable = 'n';
    cfg.sweep_values = {100, 200, 400};
    cfg.d = 3;
    cfg.coloring.method = ColoringChoice::Method::Banded;
    cfg.coloring.beta = 1;
    BoundChoice bc;
    bc.kind = BoundKind::Sparse1NormBanded;
    bc.source = BoundChoice::ModelSource::InverseSqrtHpd;
    bc.a = 2.0;
    bc.b = 6.0;
    cfg.bound = bc;

    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 3);
    for (const auto& r : records) {
        REQUIRE(r.abs_error.has_value());
        CHECK(*r.abs_error <= *r.bound);
    }
    const double e0 = *records[0].abs_error;
    for (const auto& r : records) CHECK(std::abs(*r.abs_error - e0) <= 0.1 * e0);
}

TEST_CASE("experiment config round trip from JSON") {
    const std::string path = "harness_config_test.json";
    {
        std::ofstream out(path);
        out << R"({
          "family": "tridiag:n=150",
          "function": "inv",
          "task": "trace",
          "sweep": {"variable": "d", "values": [1, 2, 3]},
          "steps": "exact",
          "coloring": {"method": "banded", "beta": 1},
          "bound": {"kind": "banded", "model": {"type": "inverse_hpd", "a": 2, "b": 6}},
          "oracle_cap": 512
        })";
    }
    const ExperimentConfig cfg = parse_experiment_config(path);
    CHECK(std::get<TridiagSpec>(cfg.family).n == 150);
    CHECK(cfg.sweep_values == std::vector<Index>{1, 2, 3});
    CHECK(!cfg.steps.has_value());
    CHECK(cfg.bound->kind == BoundKind::TraceBanded);
    const auto records = run_experiment(cfg);
    CHECK(records.size() == 3);
    std::remove(path.c_str());
}

TEST_CASE("file-backed matrices run through the pipeline") {
    const std::string path = "harness_matrix_test.mtx";
    write_matrix_market(generate_matrix(TridiagSpec{50, Scalar(-1), Scalar(4), Scalar(-1)}),
                        path);
    ExperimentConfig cfg;
    cfg.family = FileSpec{path};
    cfg.f = ScalarFunction::inverse();
    cfg.sweep_variable = 'd';
    cfg.sweep_values = {2};
    cfg.coloring.method = ColoringChoice::Method::Greedy;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].family == "file");
    CHECK(records[0].n == 50);
    CHECK(records[0].abs_error.has_value());
    std::remove(path.c_str());
}

TEST_CASE("csv formatting survives a 17-digit round trip") {
    const double v = 0.12345678901234567;
    CHECK(std::stod(format_g17(v)) == v);
}
