// Command line front end: distance-d colorings, probing-based trace
// estimates and sparse approximations of matrix functions, and experiment
// sweeps driven by a JSON config.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "matprobe/graph.hpp"
#include "matprobe/harness.hpp"
#include "matprobe/matrix_market.hpp"
#include "matprobe/probing.hpp"

namespace {

using namespace matprobe;

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitNumerical = 3;

struct MatrixOptions {
    std::string matrix_path;
    std::string family;

    MatrixSpec spec() const {
        if (!matrix_path.empty() && !family.empty())
            throw ArgumentError("give either --matrix or --family, not both");
        if (!matrix_path.empty()) return FileSpec{matrix_path};
        if (!family.empty()) return parse_matrix_spec(family);
        throw ArgumentError("one of --matrix or --family is required");
    }
};

struct ColoringOptions {
    std::string method = "banded";
    std::optional<Index> beta;
    std::string order = "natural";

    ColoringChoice choice() const {
        ColoringChoice c;
        if (method == "banded")
            c.method = ColoringChoice::Method::Banded;
        else if (method == "lattice")
            c.method = ColoringChoice::Method::Lattice;
        else if (method == "greedy")
            c.method = ColoringChoice::Method::Greedy;
        else
            throw ArgumentError("unknown coloring method '" + method + "'");
        c.beta = beta;
        if (order != "rcm" && order != "natural")
            throw ArgumentError("unknown order '" + order + "'");
        c.rcm = order == "rcm";
        return c;
    }
};

std::optional<LatticeSpec> parse_dims(const std::string& text) {
    if (text.empty()) return std::nullopt;
    LatticeSpec spec;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t x = text.find('x', pos);
        const std::string part = text.substr(pos, x == std::string::npos ? x : x - pos);
        spec.dims.push_back(static_cast<Index>(std::stoll(part)));
        if (x == std::string::npos) break;
        pos = x + 1;
    }
    return spec;
}

// "exact" | "auto" | step count.
std::optional<Index> parse_steps(const std::string& text) {
    if (text.empty() || text == "exact") return std::nullopt;
    if (text == "auto") return -1;
    return static_cast<Index>(std::stoll(text));
}

void add_bound_flags(CLI::App* cmd, std::string& bound_kind, std::string& model_type, double& C,
                     double& q, double& K, bool& poly, double& spec_a, double& spec_b) {
    cmd->add_option("--bound", bound_kind,
                    "bound kind: banded|lattice|poly|generic|sparse_frobenius_poly|"
                    "sparse_norms_generic|sparse_1norm_banded|krylov_combined_frobenius|"
                    "krylov_trace");
    cmd->add_option("--model", model_type,
                    "decay model: explicit|inverse_hpd|invsqrt_hpd|fitted");
    cmd->add_option("--C", C, "decay constant C");
    cmd->add_option("--q", q, "decay rate q in [0,1)");
    cmd->add_option("--K", K, "numerical-range constant (1 normal, 1+sqrt2 otherwise)");
    cmd->add_flag("--poly", poly, "model stems from a polynomial approximation property");
    cmd->add_option("--a", spec_a, "spectrum lower bound for hpd models");
    cmd->add_option("--b", spec_b, "spectrum upper bound for hpd models");
}

std::optional<BoundChoice> make_bound_choice(const std::string& bound_kind,
                                             const std::string& model_type, double C, double q,
                                             double K, bool poly, double a, double b) {
    if (bound_kind.empty()) return std::nullopt;
    BoundChoice bc;
    if (bound_kind == "banded")
        bc.kind = BoundKind::TraceBanded;
    else if (bound_kind == "lattice")
        bc.kind = BoundKind::TraceLattice;
    else if (bound_kind == "poly")
        bc.kind = BoundKind::TracePoly;
    else if (bound_kind == "generic")
        bc.kind = BoundKind::TraceGeneric;
    else if (bound_kind == "sparse_frobenius_poly")
        bc.kind = BoundKind::SparseFrobeniusPoly;
    else if (bound_kind == "sparse_norms_generic")
        bc.kind = BoundKind::SparseNormsGeneric;
    else if (bound_kind == "sparse_1norm_banded")
        bc.kind = BoundKind::Sparse1NormBanded;
    else if (bound_kind == "krylov_combined_frobenius")
        bc.kind = BoundKind::KrylovCombinedFrobenius;
    else if (bound_kind == "krylov_trace")
        bc.kind = BoundKind::KrylovTrace;
    else
        throw ArgumentError("unknown bound kind '" + bound_kind + "'");

    if (model_type == "explicit") {
        bc.source = BoundChoice::ModelSource::Explicit;
        bc.model.C = C;
        bc.model.q = q;
        bc.model.K = K;
        bc.model.from_polynomial_property = poly;
    } else if (model_type == "inverse_hpd") {
        bc.source = BoundChoice::ModelSource::InverseHpd;
        bc.a = a;
        bc.b = b;
    } else if (model_type == "invsqrt_hpd") {
        bc.source = BoundChoice::ModelSource::InverseSqrtHpd;
        bc.a = a;
        bc.b = b;
    } else if (model_type == "fitted") {
        bc.source = BoundChoice::ModelSource::Fitted;
    } else {
        throw ArgumentError("unknown model type '" + model_type + "'");
    }
    return bc;
}

int run_color(const MatrixOptions& mat, const ColoringOptions& copt, Index d,
              const std::string& dims, const std::string& out_path) {
    Coloring col;
    const auto lattice_dims = parse_dims(dims);
    if (lattice_dims && mat.matrix_path.empty() && mat.family.empty()) {
        col = lattice_coloring(*lattice_dims, static_cast<Distance>(d));
    } else {
        PreparedMatrix prep = prepare_matrix(mat.spec(), copt.choice());
        if (lattice_dims) prep.lattice = lattice_dims;
        col = make_coloring(prep, copt.choice(), static_cast<Distance>(d),
                            ExperimentTask::Trace);
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ArgumentError("cannot open '" + out_path + "'");
        out = &file;
    }
    *out << "node,color\n";
    for (std::size_t v = 0; v < col.color_of.size(); ++v)
        *out << v << ',' << col.color_of[v] << '\n';
    std::cerr << "colors: " << col.num_colors() << "\n";
    return kExitOk;
}

int run_trace(const MatrixOptions& mat, const ColoringOptions& copt, Index d,
              const std::string& function, const std::string& steps,
              const std::optional<BoundChoice>& bound, Index oracle_cap) {
    ExperimentConfig cfg;
    cfg.family = mat.spec();
    cfg.f = ScalarFunction::parse(function);
    cfg.task = ExperimentTask::Trace;
    cfg.sweep_variable = 'd';
    cfg.sweep_values = {d};
    cfg.steps = parse_steps(steps);
    cfg.coloring = copt.choice();
    cfg.bound = bound;
    cfg.oracle_cap = oracle_cap;
    const auto records = run_experiment(cfg);
    std::cout << csv_header() << '\n' << csv_row(records.at(0)) << '\n';
    return kExitOk;
}

int run_sparse_approx(const MatrixOptions& mat, const ColoringOptions& copt, Index d,
                      const std::string& function, const std::string& steps,
                      const std::optional<BoundChoice>& bound, Index oracle_cap,
                      const std::string& out_path) {
    const ScalarFunction f = ScalarFunction::parse(function);
    const PreparedMatrix prep = prepare_matrix(mat.spec(), copt.choice());
    const Coloring col = make_coloring(prep, copt.choice(), static_cast<Distance>(2 * d),
                                       ExperimentTask::SparseApprox);

    const std::optional<Index> step_count = parse_steps(steps);
    EvalMode mode = EvalMode::exact();
    if (step_count)
        mode = EvalMode::steps(*step_count == -1
                                   ? recommended_steps({StepRule::Purpose::SparseApprox,
                                                        hermitian_probe(prep.A), d})
                                   : *step_count);

    const SparseFunctionApprox approx =
        sparse_approximation(prep.A, f, static_cast<Distance>(d), col, mode);
    if (!out_path.empty()) write_matrix_market(approx.matrix, out_path);

    ExperimentRecord rec;
    rec.family = family_name(mat.spec());
    rec.n = prep.A.rows();
    rec.function = f.name();
    rec.d = d;
    rec.m_colors = col.num_colors();
    rec.s_steps = approx.krylov_steps;
    if (prep.A.rows() <= oracle_cap) {
        const DenseMatrix reference = dense_reference(prep.A, f, oracle_cap);
        const ErrorNorms norms = error_norms(reference, approx.matrix);
        rec.abs_error = bound && bound->kind == BoundKind::Sparse1NormBanded ? norms.one_norm
                                                                             : norms.frobenius;
    }
    if (bound) {
        const DecayModel model = resolve_model(*bound, prep.A, f, d, oracle_cap);
        if (model.fitted) std::cerr << "note: fitted decay model, bound is an estimate\n";
        rec.bound = evaluate_bound_choice(*bound, model, rec.n, d, rec.s_steps, prep.beta,
                                          prep.lattice, col);
        if (rec.bound && rec.abs_error && *rec.abs_error > 0.0)
            rec.ratio = *rec.bound / *rec.abs_error;
    }
    std::cout << csv_header() << '\n' << csv_row(rec) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probing-based trace estimation and sparse approximation of matrix functions"};
    app.require_subcommand(1);

    auto* color_cmd = app.add_subcommand("color", "compute a distance-d coloring");
    MatrixOptions color_mat;
    ColoringOptions color_copt;
    Index color_d = 1;
    std::string color_dims, color_out;
    color_cmd->add_option("--matrix", color_mat.matrix_path, "Matrix Market file");
    color_cmd->add_option("--family", color_mat.family, "generated family spec");
    color_cmd->add_option("--distance", color_d, "coloring distance d")->required();
    color_cmd->add_option("--method", color_copt.method, "greedy|banded|lattice");
    color_cmd->add_option("--beta", color_copt.beta, "semi-bandwidth for banded coloring");
    color_cmd->add_option("--dims", color_dims, "lattice extents N1xN2x...");
    color_cmd->add_option("--order", color_copt.order, "natural|rcm");
    color_cmd->add_option("--out", color_out, "CSV output path (default stdout)");

    auto* trace_cmd = app.add_subcommand("trace", "estimate tr(f(A)) by probing");
    MatrixOptions trace_mat;
    ColoringOptions trace_copt;
    Index trace_d = 5;
    std::string trace_fn = "inv", trace_steps = "exact";
    std::string trace_bound_kind, trace_model = "explicit";
    double trace_C = 1.0, trace_q = 0.5, trace_K = 1.0, trace_a = 1.0, trace_b = 1.0;
    bool trace_poly = false;
    Index trace_cap = 4096;
    trace_cmd->add_option("--matrix", trace_mat.matrix_path, "Matrix Market file");
    trace_cmd->add_option("--family", trace_mat.family, "generated family spec");
    trace_cmd->add_option("--function", trace_fn, "inv|invsqrt|log|exp");
    trace_cmd->add_option("--distance", trace_d, "coloring distance d")->required();
    trace_cmd->add_option("--steps", trace_steps, "Krylov steps, 'auto' or 'exact'");
    trace_cmd->add_option("--method", trace_copt.method, "greedy|banded|lattice");
    trace_cmd->add_option("--beta", trace_copt.beta, "semi-bandwidth for banded coloring");
    trace_cmd->add_option("--order", trace_copt.order, "natural|rcm");
    trace_cmd->add_option("--oracle-cap", trace_cap, "max n for the dense oracle");
    add_bound_flags(trace_cmd, trace_bound_kind, trace_model, trace_C, trace_q, trace_K,
                    trace_poly, trace_a, trace_b);

    auto* sparse_cmd = app.add_subcommand("sparse-approx", "compute f(A)^[d] by probing");
    MatrixOptions sparse_mat;
    ColoringOptions sparse_copt;
    Index sparse_d = 5;
    std::string sparse_fn = "inv", sparse_steps = "exact", sparse_out;
    std::string sparse_bound_kind, sparse_model = "explicit";
    double sparse_C = 1.0, sparse_q = 0.5, sparse_K = 1.0, sparse_a = 1.0, sparse_b = 1.0;
    bool sparse_poly = false;
    Index sparse_cap = 4096;
    sparse_cmd->add_option("--matrix", sparse_mat.matrix_path, "Matrix Market file");
    sparse_cmd->add_option("--family", sparse_mat.family, "generated family spec");
    sparse_cmd->add_option("--function", sparse_fn, "inv|invsqrt|log|exp");
    sparse_cmd->add_option("--distance", sparse_d, "truncation distance d")->required();
    sparse_cmd->add_option("--steps", sparse_steps, "Krylov steps, 'auto' or 'exact'");
    sparse_cmd->add_option("--method", sparse_copt.method, "greedy|banded|lattice");
    sparse_cmd->add_option("--beta", sparse_copt.beta, "semi-bandwidth for banded coloring");
    sparse_cmd->add_option("--order", sparse_copt.order, "natural|rcm");
    sparse_cmd->add_option("--out", sparse_out, "write f(A)^[d] as Matrix Market");
    sparse_cmd->add_option("--oracle-cap", sparse_cap, "max n for the dense oracle");
    add_bound_flags(sparse_cmd, sparse_bound_kind, sparse_model, sparse_C, sparse_q, sparse_K,
                    sparse_poly, sparse_a, sparse_b);

    auto* exp_cmd = app.add_subcommand("experiment", "run a sweep from a JSON config");
    std::string config_path;
    exp_cmd->add_option("--config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArgument;
    }

    try {
        if (color_cmd->parsed())
            return run_color(color_mat, color_copt, color_d, color_dims, color_out);
        if (trace_cmd->parsed())
            return run_trace(trace_mat, trace_copt, trace_d, trace_fn, trace_steps,
                             make_bound_choice(trace_bound_kind, trace_model, trace_C, trace_q,
                                               trace_K, trace_poly, trace_a, trace_b),
                             trace_cap);
        if (sparse_cmd->parsed())
            return run_sparse_approx(sparse_mat, sparse_copt, sparse_d, sparse_fn, sparse_steps,
                                     make_bound_choice(sparse_bound_kind, sparse_model, sparse_C,
                                                       sparse_q, sparse_K, sparse_poly, sparse_a,
                                                       sparse_b),
                                     sparse_cap, sparse_out);
        if (exp_cmd->parsed()) {
            const auto records = run_experiment(parse_experiment_config(config_path));
            write_csv(records, std::cout);
            return kExitOk;
        }
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgument;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitArgument;
}
