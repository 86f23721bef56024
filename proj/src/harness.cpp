#include "matprobe/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "matprobe/dense_function.hpp"
#include "matprobe/graph.hpp"
#include "matprobe/matrix_market.hpp"

namespace matprobe {

namespace {

SparseMatrix tridiagonal(Index n, Scalar sub, Scalar diag, Scalar super) {
    if (n < 1) throw ArgumentError("tridiag: n must be >= 1");
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(3 * n));
    for (Index i = 0; i < n; ++i) {
        if (i > 0) t.push_back({i, i - 1, sub});
        t.push_back({i, i, diag});
        if (i + 1 < n) t.push_back({i, i + 1, super});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix laplace2d(Index N, double shift) {
    if (N < 1) throw ArgumentError("laplace2d: N must be >= 1");
    const Index n = N * N;
    const Scalar mdiag(2.0 + shift / 2.0);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(5 * n));
    auto idx = [N](Index r, Index c) { return r * N + c; };
    for (Index r = 0; r < N; ++r) {
        for (Index c = 0; c < N; ++c) {
            const Index i = idx(r, c);
            t.push_back({i, i, 2.0 * mdiag});
            if (c > 0) t.push_back({i, idx(r, c - 1), Scalar(-1.0)});
            if (c + 1 < N) t.push_back({i, idx(r, c + 1), Scalar(-1.0)});
            if (r > 0) t.push_back({i, idx(r - 1, c), Scalar(-1.0)});
            if (r + 1 < N) t.push_back({i, idx(r + 1, c), Scalar(-1.0)});
        }
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix covariance(Index N, double alpha, double beta) {
    if (N < 1) throw ArgumentError("covariance: N must be >= 1");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw ArgumentError("covariance: alpha and beta must be positive");
    const Index n = N * N;
    const Index reach = static_cast<Index>(std::floor(alpha));
    const double stencil = static_cast<double>((2 * reach + 1) * (2 * reach + 1));
    if (stencil * static_cast<double>(n) > 5e7)
        throw ArgumentError("covariance: stencil too dense for the memory cap");

    std::vector<Triplet> t;
    auto idx = [N](Index x, Index y) { return x * N + y; };
    for (Index xi = 0; xi < N; ++xi) {
        for (Index yi = 0; yi < N; ++yi) {
            const Index i = idx(xi, yi);
            for (Index dx = -reach; dx <= reach; ++dx) {
                for (Index dy = -reach; dy <= reach; ++dy) {
                    const Index xj = xi + dx, yj = yi + dy;
                    if (xj < 0 || xj >= N || yj < 0 || yj >= N) continue;
                    const double r = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
                    if (r > alpha) continue;
                    t.push_back({i, idx(xj, yj), Scalar(std::pow(1.0 - r / alpha, beta))});
                }
            }
        }
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix gmrf(Index n, double phi, double delta, unsigned seed) {
    if (n < 1) throw ArgumentError("gmrf: n must be >= 1");
    if (!(phi > 0.0)) throw ArgumentError("gmrf: phi must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("gmrf: delta must lie in (0,1)");

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> points(static_cast<std::size_t>(n));
    for (auto& p : points) p = uniform(rng);

    std::vector<Index> by_position(static_cast<std::size_t>(n));
    std::iota(by_position.begin(), by_position.end(), Index{0});
    std::sort(by_position.begin(), by_position.end(),
              [&](Index a, Index b) { return points[static_cast<std::size_t>(a)] <
                                             points[static_cast<std::size_t>(b)]; });

    std::vector<Index> degree(static_cast<std::size_t>(n), 0);
    std::vector<Triplet> t;
    for (std::size_t a = 0; a < by_position.size(); ++a) {
        for (std::size_t b = a + 1; b < by_position.size(); ++b) {
            const Index i = by_position[a], j = by_position[b];
            if (points[static_cast<std::size_t>(j)] - points[static_cast<std::size_t>(i)] >= delta)
                break;
            t.push_back({i, j, Scalar(-phi)});
            t.push_back({j, i, Scalar(-phi)});
            ++degree[static_cast<std::size_t>(i)];
            ++degree[static_cast<std::size_t>(j)];
        }
    }
    for (Index i = 0; i < n; ++i)
        t.push_back({i, i, Scalar(1.0 + phi * static_cast<double>(degree[static_cast<std::size_t>(i)]))});
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

}  // namespace

SparseMatrix generate_matrix(const MatrixSpec& spec) {
    return std::visit(
        [](const auto& s) -> SparseMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TridiagSpec>)
                return tridiagonal(s.n, s.sub, s.diag, s.super);
            else if constexpr (std::is_same_v<T, ShiftedSkewSpec>)
                return tridiagonal(s.n, Scalar(-1.0), Scalar(2.0, 1.0), Scalar(1.0));
            else if constexpr (std::is_same_v<T, Laplace2dSpec>)
                return laplace2d(s.N, s.shift);
            else if constexpr (std::is_same_v<T, CovarianceSpec>)
                return covariance(s.N, s.alpha, s.beta);
            else if constexpr (std::is_same_v<T, GmrfSpec>)
                return gmrf(s.n, s.phi, s.delta, s.seed);
            else
                return read_matrix_market(s.path);
        },
        spec);
}

std::string family_name(const MatrixSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TridiagSpec>)
                return "tridiag";
            else if constexpr (std::is_same_v<T, ShiftedSkewSpec>)
                return "shifted_skew";
            else if constexpr (std::is_same_v<T, Laplace2dSpec>)
                return "laplace2d";
            else if constexpr (std::is_same_v<T, CovarianceSpec>)
                return "covariance";
            else if constexpr (std::is_same_v<T, GmrfSpec>)
                return "gmrf";
            else
                return "file";
        },
        spec);
}

Index spec_dimension(const MatrixSpec& spec) {
    return std::visit(
        [](const auto& s) -> Index {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TridiagSpec>)
                return s.n;
            else if constexpr (std::is_same_v<T, ShiftedSkewSpec>)
                return s.n;
            else if constexpr (std::is_same_v<T, Laplace2dSpec>)
                return s.N * s.N;
            else if constexpr (std::is_same_v<T, CovarianceSpec>)
                return s.N * s.N;
            else if constexpr (std::is_same_v<T, GmrfSpec>)
                return s.n;
            else
                return read_matrix_market(s.path).rows();
        },
        spec);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ArgumentError("expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) return *fallback;
        throw ArgumentError("missing parameter '" + key + "' in family spec");
    }
    return std::stod(it->second);
}

}  // namespace

MatrixSpec parse_matrix_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                               : parse_kv(text.substr(colon + 1));
    if (name == "tridiag") {
        TridiagSpec s;
        s.n = static_cast<Index>(kv_num(kv, "n"));
        s.sub = Scalar(kv_num(kv, "a", -1.0));
        s.diag = Scalar(kv_num(kv, "b", 4.0));
        s.super = Scalar(kv_num(kv, "c", -1.0));
        return s;
    }
    if (name == "shifted_skew") return ShiftedSkewSpec{static_cast<Index>(kv_num(kv, "n"))};
    if (name == "laplace2d")
        return Laplace2dSpec{static_cast<Index>(kv_num(kv, "N")), kv_num(kv, "shift", 4.0)};
    if (name == "covariance")
        return CovarianceSpec{static_cast<Index>(kv_num(kv, "N")), kv_num(kv, "alpha", 2.0),
                              kv_num(kv, "beta", 7.0)};
    if (name == "gmrf")
        return GmrfSpec{static_cast<Index>(kv_num(kv, "n")), kv_num(kv, "phi", 20.0),
                        kv_num(kv, "delta", 0.02),
                        static_cast<unsigned>(kv_num(kv, "seed", 42.0))};
    throw ArgumentError("unknown matrix family '" + name + "'");
}

DenseMatrix dense_reference(const SparseMatrix& A, const ScalarFunction& f, Index cap) {
    if (A.rows() > cap)
        throw ArgumentError("dense_reference: dimension " + std::to_string(A.rows()) +
                            " exceeds the oracle cap " + std::to_string(cap));
    return dense_function(A.to_dense(), f);
}

namespace {

MatrixSpec with_size(const MatrixSpec& base, Index value) {
    MatrixSpec spec = base;
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TridiagSpec>)
                s.n = value;
            else if constexpr (std::is_same_v<T, ShiftedSkewSpec>)
                s.n = value;
            else if constexpr (std::is_same_v<T, Laplace2dSpec>)
                s.N = value;
            else if constexpr (std::is_same_v<T, CovarianceSpec>)
                s.N = value;
            else if constexpr (std::is_same_v<T, GmrfSpec>) {
                // Keep row density constant: delta scales like 1/n.
                s.delta = s.delta * static_cast<double>(s.n) / static_cast<double>(value);
                s.n = value;
            } else {
                throw ArgumentError("cannot sweep the size of a file-backed matrix");
            }
        },
        spec);
    return spec;
}

}  // namespace

PreparedMatrix prepare_matrix(const MatrixSpec& spec, const ColoringChoice& choice) {
    PreparedMatrix prep;
    prep.A = generate_matrix(spec);
    if (choice.rcm) {
        const auto ordering = cuthill_mckee(pattern_graph(prep.A, false));
        prep.A = prep.A.permute_symmetric(ordering.permutation);
    }
    prep.beta = choice.beta.value_or(prep.A.bandwidth());
    if (std::holds_alternative<Laplace2dSpec>(spec)) {
        const Index N = std::get<Laplace2dSpec>(spec).N;
        prep.lattice = LatticeSpec{{N, N}};
    } else if (std::holds_alternative<TridiagSpec>(spec) ||
               std::holds_alternative<ShiftedSkewSpec>(spec)) {
        prep.lattice = LatticeSpec{{prep.A.rows()}};
    }
    return prep;
}

Coloring make_coloring(const PreparedMatrix& prep, const ColoringChoice& choice, Distance dist,
                       ExperimentTask task) {
    switch (choice.method) {
        case ColoringChoice::Method::Banded:
            return banded_coloring(prep.A.rows(), prep.beta, dist);
        case ColoringChoice::Method::Lattice:
            if (!prep.lattice)
                throw ArgumentError("lattice coloring requires a lattice-structured family");
            return lattice_coloring(*prep.lattice, dist);
        case ColoringChoice::Method::Greedy: {
            const bool directed = task == ExperimentTask::Trace &&
                                  !prep.A.is_structurally_symmetric();
            return greedy_coloring(pattern_graph(prep.A, directed), dist);
        }
    }
    throw ArgumentError("unknown coloring method");
}

DecayModel resolve_model(const BoundChoice& bc, const SparseMatrix& A, const ScalarFunction& f,
                         Index d, Index oracle_cap) {
    switch (bc.source) {
        case BoundChoice::ModelSource::Explicit:
            return bc.model;
        case BoundChoice::ModelSource::InverseHpd:
            return decay_model_inverse_hpd(bc.a, bc.b);
        case BoundChoice::ModelSource::InverseSqrtHpd:
            return decay_model_inverse_sqrt_hpd(bc.a, bc.b);
        case BoundChoice::ModelSource::Fitted: {
            // One column of f(A), scored against graph distances.
            const Index j = A.rows() / 2;
            Vector ej = Vector::Zero(A.rows());
            ej[j] = Scalar(1.0);
            Vector column;
            if (A.rows() <= oracle_cap && A.rows() <= 600) {
                column = dense_reference(A, f, oracle_cap).col(j);
            } else {
                const Index s = std::min<Index>(A.rows(), std::max<Index>(60, 4 * d + 20));
                column = krylov_fun_vec(A, ej, f, s);
            }
            const auto dist = bfs_distances(pattern_graph(A, false), j);
            std::vector<double> mags(static_cast<std::size_t>(column.size()));
            for (Index i = 0; i < column.size(); ++i)
                mags[static_cast<std::size_t>(i)] = std::abs(column[i]);
            return fit_decay_model(mags, dist).model;
        }
    }
    throw ArgumentError("unknown model source");
}

std::optional<double> evaluate_bound_choice(const BoundChoice& bc, const DecayModel& model,
                                            Index n, Index d, std::optional<Index> s, Index beta,
                                            const std::optional<LatticeSpec>& lattice,
                                            const Coloring& col) {
    BoundRequest req;
    req.kind = bc.kind;
    req.n = n;
    req.d = d;
    req.s = s;
    req.beta = beta;
    if (lattice) req.D = lattice->dimension();
    req.gamma = col.max_class_size();
    for (const auto& cls : col.classes) req.class_sizes.push_back(static_cast<Index>(cls.size()));
    return evaluate_bound(model, req);
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
    if (config.sweep_values.empty()) throw ArgumentError("experiment: empty sweep");
    std::vector<ExperimentRecord> records;

    for (const Index value : config.sweep_values) {
        const Index d = config.sweep_variable == 'd' ? value : config.d;
        if (d < 1) throw ArgumentError("experiment: d must be >= 1");
        const MatrixSpec spec =
            config.sweep_variable == 'n' ? with_size(config.family, value) : config.family;
        const PreparedMatrix prep = prepare_matrix(spec, config.coloring);
        const Index n = prep.A.rows();

        const Distance col_dist = config.task == ExperimentTask::Trace
                                      ? static_cast<Distance>(d)
                                      : static_cast<Distance>(2 * d);
        const Coloring col = make_coloring(prep, config.coloring, col_dist, config.task);

        std::optional<Index> steps;
        if (config.sweep_variable == 's') {
            steps = value;
        } else if (config.steps) {
            steps = *config.steps == -1
                        ? recommended_steps({config.task == ExperimentTask::Trace
                                                 ? StepRule::Purpose::Trace
                                                 : StepRule::Purpose::SparseApprox,
                                             hermitian_probe(prep.A), d})
                        : *config.steps;
        }
        const EvalMode mode = steps ? EvalMode::steps(*steps) : EvalMode::exact();

        ExperimentRecord rec;
        rec.family = family_name(spec);
        rec.n = n;
        rec.function = config.f.name();
        rec.d = d;
        rec.m_colors = col.num_colors();
        rec.s_steps = steps;

        const bool oracle_feasible = n <= config.oracle_cap;
        std::optional<DenseMatrix> reference;
        if (oracle_feasible) reference = dense_reference(prep.A, config.f, config.oracle_cap);

        const auto t0 = std::chrono::steady_clock::now();
        if (config.task == ExperimentTask::Trace) {
            TraceEstimate estimate;
            if (mode.is_exact) {
                if (!reference)
                    throw ArgumentError("experiment: exact evaluation needs a feasible oracle");
                estimate = estimate_trace_from_dense(*reference, col);
            } else {
                estimate = estimate_trace(prep.A, config.f, col, mode);
            }
            rec.estimate = estimate.value;
            if (reference) {
                rec.exact = reference->trace();
                rec.abs_error = std::abs(*rec.exact - estimate.value);
            }
        } else {
            SparseFunctionApprox approx;
            if (mode.is_exact) {
                if (!reference)
                    throw ArgumentError("experiment: exact evaluation needs a feasible oracle");
                approx = sparse_approximation_from_dense(*reference, prep.A,
                                                         static_cast<Distance>(d), col);
            } else {
                approx = sparse_approximation(prep.A, config.f, static_cast<Distance>(d), col,
                                              mode);
            }
            if (reference) {
                const ErrorNorms norms = error_norms(*reference, approx.matrix);
                rec.abs_error = config.bound && config.bound->kind == BoundKind::Sparse1NormBanded
                                    ? norms.one_norm
                                    : norms.frobenius;
            }
        }
        const auto t1 = std::chrono::steady_clock::now();
        rec.seconds = std::chrono::duration<double>(t1 - t0).count();

        if (config.bound) {
            const DecayModel model =
                resolve_model(*config.bound, prep.A, config.f, d, config.oracle_cap);
            rec.bound = evaluate_bound_choice(*config.bound, model, n, d, steps, prep.beta,
                                              prep.lattice, col);
            if (rec.bound && rec.abs_error && *rec.abs_error > 0.0)
                rec.ratio = *rec.bound / *rec.abs_error;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

namespace {

std::string format_scalar(const Scalar& v) {
    if (v.imag() == 0.0) return format_g17(v.real());
    std::string s = format_g17(v.real());
    if (v.imag() >= 0.0) s += "+";
    s += format_g17(v.imag()) + "i";
    return s;
}

}  // namespace

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_header() {
    return "family,n,function,d,m_colors,s_steps,estimate,exact,abs_error,bound,ratio,seconds";
}

std::string csv_row(const ExperimentRecord& r) {
    std::ostringstream out;
    out << r.family << ',' << r.n << ',' << r.function << ',' << r.d << ',' << r.m_colors << ',';
    if (r.s_steps) out << *r.s_steps;
    out << ',';
    if (r.estimate) out << format_scalar(*r.estimate);
    out << ',';
    if (r.exact) out << format_scalar(*r.exact);
    out << ',';
    if (r.abs_error) out << format_g17(*r.abs_error);
    out << ',';
    if (r.bound) out << format_g17(*r.bound);
    out << ',';
    if (r.ratio) out << format_g17(*r.ratio);
    out << ',' << format_g17(r.seconds);
    return out.str();
}

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << csv_header() << '\n';
    for (const auto& r : records) out << csv_row(r) << '\n';
}

namespace {

BoundKind parse_bound_kind(const std::string& name) {
    if (name == "trace_generic" || name == "generic") return BoundKind::TraceGeneric;
    if (name == "trace_banded" || name == "banded") return BoundKind::TraceBanded;
    if (name == "trace_lattice" || name == "lattice") return BoundKind::TraceLattice;
    if (name == "trace_poly" || name == "poly") return BoundKind::TracePoly;
    if (name == "sparse_frobenius_poly") return BoundKind::SparseFrobeniusPoly;
    if (name == "sparse_norms_generic") return BoundKind::SparseNormsGeneric;
    if (name == "sparse_1norm_banded") return BoundKind::Sparse1NormBanded;
    if (name == "krylov_combined_frobenius") return BoundKind::KrylovCombinedFrobenius;
    if (name == "krylov_trace") return BoundKind::KrylovTrace;
    throw ArgumentError("unknown bound kind '" + name + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }

    ExperimentConfig cfg;
    cfg.family = parse_matrix_spec(j.at("family").get<std::string>());
    cfg.f = ScalarFunction::parse(j.value("function", "inv"));
    const std::string task = j.value("task", "trace");
    if (task == "trace")
        cfg.task = ExperimentTask::Trace;
    else if (task == "sparse_approx" || task == "sparse-approx")
        cfg.task = ExperimentTask::SparseApprox;
    else
        throw ArgumentError("config: unknown task '" + task + "'");

    const auto& sweep = j.at("sweep");
    const std::string var = sweep.at("variable").get<std::string>();
    if (var != "n" && var != "d" && var != "s")
        throw ArgumentError("config: sweep variable must be n, d or s");
    cfg.sweep_variable = var[0];
    for (const auto& v : sweep.at("values")) cfg.sweep_values.push_back(v.get<Index>());

    cfg.d = j.value("d", Index{5});
    if (j.contains("steps")) {
        const auto& s = j["steps"];
        if (s.is_string()) {
            const std::string text = s.get<std::string>();
            if (text == "exact")
                cfg.steps.reset();
            else if (text == "auto")
                cfg.steps = -1;
            else
                throw ArgumentError("config: steps must be a count, 'auto' or 'exact'");
        } else {
            cfg.steps = s.get<Index>();
        }
    }

    if (j.contains("coloring")) {
        const auto& c = j["coloring"];
        const std::string method = c.value("method", "banded");
        if (method == "banded")
            cfg.coloring.method = ColoringChoice::Method::Banded;
        else if (method == "lattice")
            cfg.coloring.method = ColoringChoice::Method::Lattice;
        else if (method == "greedy")
            cfg.coloring.method = ColoringChoice::Method::Greedy;
        else
            throw ArgumentError("config: unknown coloring method '" + method + "'");
        if (c.contains("beta")) cfg.coloring.beta = c["beta"].get<Index>();
        cfg.coloring.rcm = c.value("rcm", false);
    }

    if (j.contains("bound")) {
        const auto& b = j["bound"];
        BoundChoice bc;
        bc.kind = parse_bound_kind(b.at("kind").get<std::string>());
        const auto& m = b.at("model");
        const std::string type = m.value("type", "explicit");
        if (type == "explicit") {
            bc.source = BoundChoice::ModelSource::Explicit;
            bc.model.C = m.at("C").get<double>();
            bc.model.q = m.at("q").get<double>();
            bc.model.K = m.value("K", 1.0);
            bc.model.from_polynomial_property = m.value("poly", false);
        } else if (type == "inverse_hpd") {
            bc.source = BoundChoice::ModelSource::InverseHpd;
            bc.a = m.at("a").get<double>();
            bc.b = m.at("b").get<double>();
        } else if (type == "inverse_sqrt_hpd") {
            bc.source = BoundChoice::ModelSource::InverseSqrtHpd;
            bc.a = m.at("a").get<double>();
            bc.b = m.at("b").get<double>();
        } else if (type == "fitted") {
            bc.source = BoundChoice::ModelSource::Fitted;
        } else {
            throw ArgumentError("config: unknown model type '" + type + "'");
        }
        cfg.bound = bc;
    }
    cfg.oracle_cap = j.value("oracle_cap", Index{4096});
    return cfg;
}

}  // namespace matprobe
