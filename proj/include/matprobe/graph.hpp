#pragma once

#include <limits>
#include <span>
#include <vector>

#include "matprobe/sparse_matrix.hpp"
#include "matprobe/types.hpp"

namespace matprobe {

/// Graph view of a sparsity pattern: nodes 0..n-1, an edge (i,j) for every
/// stored off-diagonal entry. Undirected graphs symmetrize with the pattern
/// union (edge whenever a_ij != 0 or a_ji != 0). No self loops.
class PatternGraph {
public:
    PatternGraph() = default;
    PatternGraph(Index n, bool directed, std::vector<std::vector<Index>> out_adjacency);

    Index size() const { return n_; }
    bool directed() const { return directed_; }

    std::span<const Index> neighbors(Index v) const { return out_[static_cast<std::size_t>(v)]; }
    /// In-neighbors; equals neighbors() for undirected graphs.
    std::span<const Index> in_neighbors(Index v) const {
        return directed_ ? std::span<const Index>(in_[static_cast<std::size_t>(v)])
                         : neighbors(v);
    }

    Index degree(Index v) const { return static_cast<Index>(neighbors(v).size()); }
    Index max_degree() const;

private:
    Index n_ = 0;
    bool directed_ = false;
    std::vector<std::vector<Index>> out_;
    std::vector<std::vector<Index>> in_;  // only populated when directed
};

/// Level-set sizes of one BFS source: sizes[delta] = #nodes at distance delta.
struct LevelSets {
    Index source = 0;
    std::vector<Index> sizes;
    Index unreachable = 0;
};

PatternGraph pattern_graph(const SparseMatrix& A, bool directed);

/// Distances from `source`. Without a cap, unreachable nodes read
/// kUnreachable. With a finite cap the search stops at `cap`, so every
/// unvisited node reads kBeyondCap ("greater than cap, possibly infinite").
std::vector<Distance> bfs_distances(const PatternGraph& g, Index source, Distance cap = kNoCap);

/// Reverse-edge variant: distance from every node *to* `source`.
std::vector<Distance> bfs_distances_reverse(const PatternGraph& g, Index source,
                                            Distance cap = kNoCap);

LevelSets level_set_sizes(const PatternGraph& g, Index source);

/// Keeps B_ij iff d(i,j) <= m in g (directed distance if g is directed).
SparseMatrix distance_truncate(const SparseMatrix& B, const PatternGraph& g, Distance m);
SparseMatrix distance_truncate(const DenseMatrix& B, const PatternGraph& g, Distance m);

struct OrderingResult {
    std::vector<Index> permutation;  // permutation[k] = original index of new node k
    Index bandwidth = 0;             // bandwidth of the permuted pattern
};

/// Reverse Cuthill-McKee ordering; disconnected graphs are handled
/// component-wise starting from minimum-degree nodes.
OrderingResult cuthill_mckee(const PatternGraph& g);

}  // namespace matprobe
