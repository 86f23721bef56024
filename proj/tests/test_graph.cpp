#include <doctest.h>

#include <cmath>

#include "matprobe/graph.hpp"
#include "test_helpers.hpp"

using namespace matprobe;

namespace {

SparseMatrix path_matrix(Index n) {
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i) {
        t.push_back({i, i, Scalar(4)});
        if (i > 0) t.push_back({i, i - 1, Scalar(-1)});
        if (i + 1 < n) t.push_back({i, i + 1, Scalar(-1)});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

SparseMatrix lattice_matrix(Index N) {
    std::vector<Triplet> t;
    auto idx = [N](Index r, Index c) { return r * N + c; };
    for (Index r = 0; r < N; ++r)
        for (Index c = 0; c < N; ++c) {
            const Index i = idx(r, c);
            t.push_back({i, i, Scalar(8)});
            if (c > 0) t.push_back({i, idx(r, c - 1), Scalar(-1)});
            if (c + 1 < N) t.push_back({i, idx(r, c + 1), Scalar(-1)});
            if (r > 0) t.push_back({i, idx(r - 1, c), Scalar(-1)});
            if (r + 1 < N) t.push_back({i, idx(r + 1, c), Scalar(-1)});
        }
    return SparseMatrix::from_triplets(N * N, N * N, std::move(t));
}

// Full t-ary tree of given height; node 0 is the root.
PatternGraph t_ary_tree(Index t, Index height) {
    std::vector<std::vector<Index>> adj;
    std::vector<Index> frontier{0};
    adj.emplace_back();
    for (Index level = 0; level < height; ++level) {
        std::vector<Index> next;
        for (Index parent : frontier) {
            for (Index c = 0; c < t; ++c) {
                const Index child = static_cast<Index>(adj.size());
                adj.emplace_back();
                adj[static_cast<std::size_t>(parent)].push_back(child);
                adj[static_cast<std::size_t>(child)].push_back(parent);
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    const Index n = static_cast<Index>(adj.size());
    return PatternGraph(n, false, std::move(adj));
}

}  // namespace

TEST_CASE("pattern_graph of a banded pattern is a path") {
    const PatternGraph g = pattern_graph(path_matrix(4), false);
    CHECK(g.size() == 4);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    CHECK(g.neighbors(1)[0] == 0);
    CHECK(g.neighbors(1)[1] == 2);
}

TEST_CASE("pattern_graph symmetrizes with the pattern union") {
    const SparseMatrix A =
        SparseMatrix::from_triplets(2, 2, {{0, 1, Scalar(1)}, {0, 0, Scalar(1)}});
    const PatternGraph undirected = pattern_graph(A, false);
    CHECK(undirected.degree(0) == 1);
    CHECK(undirected.degree(1) == 1);

    const PatternGraph directed = pattern_graph(A, true);
    CHECK(directed.degree(0) == 1);
    CHECK(directed.degree(1) == 0);
    CHECK(directed.in_neighbors(1).size() == 1);
}

TEST_CASE("pattern_graph of a diagonal matrix is edgeless") {
    const PatternGraph g = pattern_graph(SparseMatrix::identity(5), false);
    CHECK(g.max_degree() == 0);
}

TEST_CASE("bfs distances on a path") {
    const PatternGraph g = pattern_graph(path_matrix(4), false);
    const auto d = bfs_distances(g, 0);
    CHECK(d == std::vector<Distance>{0, 1, 2, 3});
}

TEST_CASE("bfs reports unreachable components") {
    PatternGraph g(2, false, {{}, {}});
    const auto d = bfs_distances(g, 0);
    CHECK(d[0] == 0);
    CHECK(d[1] == kUnreachable);
}

TEST_CASE("bfs on a 7x7 lattice matches the 1-norm coordinate distance") {
    const Index N = 7;
    const PatternGraph g = pattern_graph(lattice_matrix(N), false);
    const auto d = bfs_distances(g, 0);  // corner (0,0)
    for (Index r = 0; r < N; ++r)
        for (Index c = 0; c < N; ++c)
            CHECK(d[static_cast<std::size_t>(r * N + c)] == static_cast<Distance>(r + c));
    CHECK(d[static_cast<std::size_t>(N * N - 1)] == 12);
}

TEST_CASE("bfs cap marks far nodes") {
    const PatternGraph g = pattern_graph(path_matrix(6), false);
    const auto d = bfs_distances(g, 0, 2);
    CHECK(d[2] == 2);
    CHECK(d[3] == kBeyondCap);
}

TEST_CASE("level sets of a path midpoint") {
    const PatternGraph g = pattern_graph(path_matrix(5), false);
    const LevelSets ls = level_set_sizes(g, 2);
    CHECK(ls.sizes == std::vector<Index>{1, 2, 2});
    CHECK(ls.unreachable == 0);
}

TEST_CASE("level sets of a lattice interior node at distance 1") {
    const PatternGraph g = pattern_graph(lattice_matrix(5), false);
    const LevelSets ls = level_set_sizes(g, 2 * 5 + 2);  // (2,2)
    CHECK(ls.sizes[1] == 4);
}

TEST_CASE("level sets of a t-ary tree root grow like t^delta") {
    const Index t = 3, height = 5;
    const PatternGraph g = t_ary_tree(t, height);
    const LevelSets ls = level_set_sizes(g, 0);
    Index expected = 1;
    for (Index delta = 0; delta <= height; ++delta) {
        CHECK(ls.sizes[static_cast<std::size_t>(delta)] == expected);
        expected *= t;
    }
    Index total = ls.unreachable;
    for (Index s : ls.sizes) total += s;
    CHECK(total == g.size());
}

TEST_CASE("exponential decay cannot compensate exponential level growth") {
    // With tq > 1 the root-column tail of B_ij = q^d(i,j) stays >= 1 for
    // every truncation radius short of the full height.
    const Index t = 3, height = 7;
    const double q = 0.5;
    const PatternGraph g = t_ary_tree(t, height);
    const LevelSets ls = level_set_sizes(g, 0);
    for (Index m = 0; m < height; ++m) {
        double tail = 0.0;
        for (Index delta = m + 1; delta <= height; ++delta)
            tail += static_cast<double>(ls.sizes[static_cast<std::size_t>(delta)]) *
                    std::pow(q, static_cast<double>(delta));
        const double lower = static_cast<double>(height - m) *
                             std::pow(static_cast<double>(t) * q, static_cast<double>(m + 1));
        CHECK(tail >= lower - 1e-12);
        CHECK(tail >= 1.0);
    }
}

TEST_CASE("distance_truncate keeps everything beyond the diameter") {
    const SparseMatrix A = path_matrix(5);
    const PatternGraph g = pattern_graph(A, false);
    const SparseMatrix B = distance_truncate(A, g, 10);
    CHECK(B.nnz() == A.nnz());
}

TEST_CASE("distance_truncate at zero keeps the diagonal") {
    const SparseMatrix A = path_matrix(5);
    const PatternGraph g = pattern_graph(A, false);
    const SparseMatrix B = distance_truncate(A, g, 0);
    CHECK(B.nnz() == 5);
    for (Index i = 0; i < 5; ++i) CHECK(B.coeff(i, i) == Scalar(4));
}

TEST_CASE("distance_truncate of a decay matrix on a path gives a band") {
    const Index n = 6;
    const double q = 0.5;
    const PatternGraph g = pattern_graph(path_matrix(n), false);
    DenseMatrix B(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            B(i, j) = Scalar(std::pow(q, std::abs(static_cast<double>(i - j))));
    const SparseMatrix Bm = distance_truncate(B, g, 2);
    CHECK(Bm.bandwidth() == 2);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (std::abs(i - j) <= 2)
                CHECK(Bm.coeff(i, j) == B(i, j));
            else
                CHECK(Bm.coeff(i, j) == Scalar(0));
        }
}

TEST_CASE("distance_truncate is idempotent") {
    std::mt19937 rng(3);
    const SparseMatrix A = testing::random_hermitian(25, 0.15, rng);
    const PatternGraph g = pattern_graph(A, false);
    DenseMatrix B = testing::random_general(25, 0.8, rng).to_dense();
    const SparseMatrix once = distance_truncate(B, g, 2);
    const SparseMatrix twice = distance_truncate(once, g, 2);
    CHECK((once.to_dense() - twice.to_dense()).norm() == 0.0);
}

TEST_CASE("undirected distances satisfy the triangle inequality") {
    std::mt19937 rng(17);
    const SparseMatrix A = testing::random_hermitian(40, 0.08, rng);
    const PatternGraph g = pattern_graph(A, false);
    std::vector<std::vector<Distance>> dist;
    for (Index v = 0; v < g.size(); ++v) dist.push_back(bfs_distances(g, v));
    std::uniform_int_distribution<Index> pick(0, g.size() - 1);
    for (int trial = 0; trial < 500; ++trial) {
        const Index i = pick(rng), j = pick(rng), k = pick(rng);
        const auto dij = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const auto djk = dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        const auto dik = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (dij == kUnreachable || djk == kUnreachable) continue;
        REQUIRE(dik != kUnreachable);
        CHECK(dik <= dij + djk);
    }
}

TEST_CASE("1-norm truncation error decays monotonically on a 2D lattice") {
    const Index N = 10;
    const double q = 0.4;
    const PatternGraph g = pattern_graph(lattice_matrix(N), false);
    DenseMatrix B(N * N, N * N);
    for (Index i = 0; i < N * N; ++i) {
        const auto d = bfs_distances(g, i);
        for (Index j = 0; j < N * N; ++j)
            B(i, j) = Scalar(std::pow(q, static_cast<double>(d[static_cast<std::size_t>(j)])));
    }
    double previous = std::numeric_limits<double>::max();
    double last = 0.0;
    for (Distance m = 0; m <= 18; ++m) {
        const DenseMatrix E = B - distance_truncate(B, g, m).to_dense();
        last = E.cwiseAbs().colwise().sum().maxCoeff();
        CHECK(last <= previous + 1e-15);
        previous = last;
    }
    CHECK(last < 1e-6);
}

TEST_CASE("cuthill_mckee keeps a path at bandwidth 1") {
    const PatternGraph g = pattern_graph(path_matrix(8), false);
    const OrderingResult r = cuthill_mckee(g);
    CHECK(r.bandwidth == 1);
}

TEST_CASE("cuthill_mckee returns a permutation on a star") {
    std::vector<std::vector<Index>> adj{{1, 2, 3, 4}, {0}, {0}, {0}, {0}};
    const PatternGraph g(5, false, std::move(adj));
    const OrderingResult r = cuthill_mckee(g);
    std::vector<bool> seen(5, false);
    for (Index v : r.permutation) {
        CHECK(!seen[static_cast<std::size_t>(v)]);
        seen[static_cast<std::size_t>(v)] = true;
    }
    CHECK(r.bandwidth <= 4);
}
