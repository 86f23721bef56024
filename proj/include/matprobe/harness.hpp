#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "matprobe/bounds.hpp"
#include "matprobe/coloring.hpp"
#include "matprobe/probing.hpp"
#include "matprobe/scalar_function.hpp"
#include "matprobe/sparse_matrix.hpp"

namespace matprobe {

/// Experiment matrix families.
struct TridiagSpec {
    Index n = 0;
    Scalar sub{-1.0}, diag{4.0}, super{-1.0};
};

/// tridiag(-1, 2+i, 1): skew-Hermitian plus a real diagonal shift.
struct ShiftedSkewSpec {
    Index n = 0;
};

/// I (x) M + M (x) I on an N x N grid with M = tridiag(-1, 2 + shift/2, -1),
/// i.e. the 2D Laplacian with its diagonal shifted by `shift`.
struct Laplace2dSpec {
    Index N = 0;
    double shift = 4.0;
};

/// Thresholded covariance on an N x N integer grid:
/// a_ij = (1 - r_ij/alpha)^beta for Euclidean distance r_ij <= alpha.
struct CovarianceSpec {
    Index N = 0;
    double alpha = 2.0;
    double beta = 7.0;
};

/// GMRF precision matrix over n seeded uniform points in [0,1]; points
/// closer than delta are coupled with weight phi.
struct GmrfSpec {
    Index n = 0;
    double phi = 20.0;
    double delta = 0.02;
    unsigned seed = 42;
};

/// Matrix loaded from a Matrix Market file.
struct FileSpec {
    std::string path;
};

using MatrixSpec =
    std::variant<TridiagSpec, ShiftedSkewSpec, Laplace2dSpec, CovarianceSpec, GmrfSpec, FileSpec>;

SparseMatrix generate_matrix(const MatrixSpec& spec);

std::string family_name(const MatrixSpec& spec);
Index spec_dimension(const MatrixSpec& spec);

/// Parses CLI family specs like "tridiag:n=1000", "laplace2d:N=32,shift=4",
/// "covariance:N=51,alpha=2,beta=7", "gmrf:n=1000,phi=20,delta=0.02,seed=42".
MatrixSpec parse_matrix_spec(const std::string& text);

/// Dense f(A) used to score estimates; guarded by a size cap.
DenseMatrix dense_reference(const SparseMatrix& A, const ScalarFunction& f, Index cap = 4096);

enum class ExperimentTask { Trace, SparseApprox };

struct ColoringChoice {
    enum class Method { Greedy, Banded, Lattice };
    Method method = Method::Banded;
    std::optional<Index> beta;      // banded; defaults to the matrix bandwidth
    bool rcm = false;               // reorder with reverse Cuthill-McKee first
};

struct BoundChoice {
    enum class ModelSource { Explicit, InverseHpd, InverseSqrtHpd, Fitted };

    BoundKind kind = BoundKind::TracePoly;
    ModelSource source = ModelSource::Explicit;
    DecayModel model;        // Explicit source
    double a = 1.0, b = 1.0;  // spectrum interval for the HPD presets
};

/// A generated (and possibly RCM-permuted) matrix plus the structure data
/// colorings and bounds need.
struct PreparedMatrix {
    SparseMatrix A;
    Index beta = 0;  // semi-bandwidth of A
    std::optional<LatticeSpec> lattice;
};

PreparedMatrix prepare_matrix(const MatrixSpec& spec, const ColoringChoice& choice);

/// Coloring for one task at certificate distance `dist` (d for traces,
/// 2d for sparse approximations).
Coloring make_coloring(const PreparedMatrix& prep, const ColoringChoice& choice, Distance dist,
                       ExperimentTask task);

/// Turns a bound choice into a concrete decay model; `Fitted` computes one
/// column of f(A) (dense at small sizes, Krylov otherwise) and fits it.
DecayModel resolve_model(const BoundChoice& bc, const SparseMatrix& A, const ScalarFunction& f,
                         Index d, Index oracle_cap);

std::optional<double> evaluate_bound_choice(const BoundChoice& bc, const DecayModel& model,
                                            Index n, Index d, std::optional<Index> s, Index beta,
                                            const std::optional<LatticeSpec>& lattice,
                                            const Coloring& col);

struct ExperimentConfig {
    MatrixSpec family;
    ScalarFunction f = ScalarFunction::inverse();
    ExperimentTask task = ExperimentTask::Trace;
    char sweep_variable = 'd';       // 'n', 'd' or 's'
    std::vector<Index> sweep_values;
    Index d = 5;                     // fixed d when sweeping n or s
    std::optional<Index> steps;      // empty = exact evaluation; -1 = auto
    ColoringChoice coloring;
    std::optional<BoundChoice> bound;
    Index oracle_cap = 4096;
};

/// One CSV row. Missing values (infeasible oracle, no bound) print empty.
struct ExperimentRecord {
    std::string family;
    Index n = 0;
    std::string function;
    Index d = 0;
    Index m_colors = 0;
    std::optional<Index> s_steps;
    std::optional<Scalar> estimate;
    std::optional<Scalar> exact;
    std::optional<double> abs_error;
    std::optional<double> bound;
    std::optional<double> ratio;  // bound / error
    double seconds = 0.0;
};

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

ExperimentConfig parse_experiment_config(const std::string& path);

/// Header + rows, 17 significant digits, deterministic order.
void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
std::string csv_header();
std::string csv_row(const ExperimentRecord& r);

/// Formats a double with 17 significant digits (CSV convention).
std::string format_g17(double v);

}  // namespace matprobe
