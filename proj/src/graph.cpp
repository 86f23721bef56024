#include "matprobe/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace matprobe {

PatternGraph::PatternGraph(Index n, bool directed, std::vector<std::vector<Index>> out_adjacency)
    : n_(n), directed_(directed), out_(std::move(out_adjacency)) {
    if (static_cast<Index>(out_.size()) != n) throw ArgumentError("adjacency size mismatch");
    for (Index v = 0; v < n; ++v) {
        auto& nb = out_[static_cast<std::size_t>(v)];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        for (Index u : nb)
            if (u < 0 || u >= n || u == v)
                throw ArgumentError("adjacency entry out of range or self loop");
    }
    if (directed_) {
        in_.assign(static_cast<std::size_t>(n), {});
        for (Index v = 0; v < n; ++v)
            for (Index u : out_[static_cast<std::size_t>(v)])
                in_[static_cast<std::size_t>(u)].push_back(v);
        for (auto& nb : in_) std::sort(nb.begin(), nb.end());
    }
}

Index PatternGraph::max_degree() const {
    Index d = 0;
    for (Index v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

PatternGraph pattern_graph(const SparseMatrix& A, bool directed) {
    if (A.rows() != A.cols()) throw ArgumentError("pattern_graph: matrix not square");
    const Index n = A.rows();
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        for (Index j : A.row_cols(i)) {
            if (i == j) continue;
            adj[static_cast<std::size_t>(i)].push_back(j);
            if (!directed) adj[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    return PatternGraph(n, directed, std::move(adj));
}

namespace {

template <typename NeighborFn>
std::vector<Distance> bfs_impl(Index n, Index source, Distance cap, NeighborFn neighbors) {
    if (source < 0 || source >= n) throw ArgumentError("bfs: source out of range");
    std::vector<Distance> dist(static_cast<std::size_t>(n), kUnreachable);
    std::deque<Index> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop_front();
        const Distance dv = dist[static_cast<std::size_t>(v)];
        if (dv >= cap) continue;
        for (Index u : neighbors(v)) {
            if (dist[static_cast<std::size_t>(u)] == kUnreachable) {
                dist[static_cast<std::size_t>(u)] = dv + 1;
                queue.push_back(u);
            }
        }
    }
    if (cap != kNoCap) {
        // Unvisited nodes may still be reachable beyond the cap; tell them
        // apart from truly unreachable ones only if someone asks, which would
        // need a full BFS. Report all unvisited as beyond-cap.
        for (auto& d : dist)
            if (d == kUnreachable) d = kBeyondCap;
    }
    return dist;
}

}  // namespace

std::vector<Distance> bfs_distances(const PatternGraph& g, Index source, Distance cap) {
    return bfs_impl(g.size(), source, cap, [&](Index v) { return g.neighbors(v); });
}

std::vector<Distance> bfs_distances_reverse(const PatternGraph& g, Index source, Distance cap) {
    return bfs_impl(g.size(), source, cap, [&](Index v) { return g.in_neighbors(v); });
}

LevelSets level_set_sizes(const PatternGraph& g, Index source) {
    const auto dist = bfs_distances(g, source);
    LevelSets ls;
    ls.source = source;
    for (Distance d : dist) {
        if (d == kUnreachable) {
            ++ls.unreachable;
            continue;
        }
        if (static_cast<std::size_t>(d) >= ls.sizes.size()) ls.sizes.resize(d + 1, 0);
        ++ls.sizes[d];
    }
    return ls;
}

SparseMatrix distance_truncate(const SparseMatrix& B, const PatternGraph& g, Distance m) {
    if (B.rows() != g.size() || B.cols() != g.size())
        throw ArgumentError("distance_truncate: dimension mismatch");
    std::vector<Triplet> kept;
    for (Index i = 0; i < B.rows(); ++i) {
        const auto dist = bfs_distances(g, i, m);
        const auto cols = B.row_cols(i);
        const auto vals = B.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (dist[static_cast<std::size_t>(cols[k])] <= m) kept.push_back({i, cols[k], vals[k]});
    }
    return SparseMatrix::from_triplets(B.rows(), B.cols(), std::move(kept));
}

SparseMatrix distance_truncate(const DenseMatrix& B, const PatternGraph& g, Distance m) {
    if (B.rows() != g.size() || B.cols() != g.size())
        throw ArgumentError("distance_truncate: dimension mismatch");
    std::vector<Triplet> kept;
    for (Index i = 0; i < B.rows(); ++i) {
        const auto dist = bfs_distances(g, i, m);
        for (Index j = 0; j < B.cols(); ++j)
            if (dist[static_cast<std::size_t>(j)] <= m && B(i, j) != Scalar(0.0))
                kept.push_back({i, j, B(i, j)});
    }
    return SparseMatrix::from_triplets(B.rows(), B.cols(), std::move(kept));
}

OrderingResult cuthill_mckee(const PatternGraph& g) {
    const Index n = g.size();
    std::vector<Index> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<bool> visited(static_cast<std::size_t>(n), false);

    std::vector<Index> by_degree(static_cast<std::size_t>(n));
    std::iota(by_degree.begin(), by_degree.end(), Index{0});
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Index a, Index b) { return g.degree(a) < g.degree(b); });

    std::vector<Index> sorted_nb;
    for (Index start : by_degree) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        // Cuthill-McKee sweep of this component from a min-degree node.
        std::deque<Index> queue{start};
        visited[static_cast<std::size_t>(start)] = true;
        while (!queue.empty()) {
            const Index v = queue.front();
            queue.pop_front();
            order.push_back(v);
            sorted_nb.clear();
            for (Index u : g.neighbors(v))
                if (!visited[static_cast<std::size_t>(u)]) sorted_nb.push_back(u);
            std::stable_sort(sorted_nb.begin(), sorted_nb.end(),
                             [&](Index a, Index b) { return g.degree(a) < g.degree(b); });
            for (Index u : sorted_nb) {
                visited[static_cast<std::size_t>(u)] = true;
                queue.push_back(u);
            }
        }
    }
    std::reverse(order.begin(), order.end());

    std::vector<Index> position(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) position[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
    Index bw = 0;
    for (Index v = 0; v < n; ++v)
        for (Index u : g.neighbors(v))
            bw = std::max(bw, std::abs(position[static_cast<std::size_t>(v)] -
                                       position[static_cast<std::size_t>(u)]));
    return {std::move(order), bw};
}

}  // namespace matprobe
