#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matprobe/graph.hpp"
#include "matprobe/types.hpp"

namespace matprobe {

/// Which graph's distance the coloring certificate refers to. An undirected
/// certificate is the stronger one: dbar(i,j) <= min(d(i,j), d(j,i)), so a
/// distance-d coloring of |G(A)| is also one of G(A).
enum class GraphMode { Directed, Undirected };

enum class ColoringSource { Greedy, Banded, Lattice };

/// A distance-d coloring: same-colored nodes are more than d apart. Colors
/// are 1..m with no empty class.
struct Coloring {
    std::vector<int> color_of;                 // per node, 1-based colors
    std::vector<std::vector<Index>> classes;   // classes[c] = nodes of color c+1
    Distance certified_distance = 0;
    GraphMode mode = GraphMode::Undirected;
    ColoringSource source = ColoringSource::Greedy;

    Index size() const { return static_cast<Index>(color_of.size()); }
    int num_colors() const { return static_cast<int>(classes.size()); }
    Index max_class_size() const;
};

/// Regular D-dimensional lattice extents (N_1, ..., N_D). Node coordinates
/// map to linear indices with dimension 0 fastest, matching the Kronecker
/// ordering of the 2D Laplacian generator.
struct LatticeSpec {
    std::vector<Index> dims;

    Index dimension() const { return static_cast<Index>(dims.size()); }
    Index node_count() const;
    std::vector<Index> coordinates(Index node) const;
    Index node(const std::vector<Index>& coords) const;
};

/// Greedy distance-d coloring in the given node order (natural order when
/// empty). For directed graphs a color is forbidden whenever the already
/// colored node is within distance d in either orientation. Uses at most
/// Delta(G)^d + 1 colors on undirected graphs.
Coloring greedy_coloring(const PatternGraph& g, Distance d, std::vector<Index> order = {});

/// col(i) = (i-1) mod (d*beta+1) + 1: a distance-d coloring for any pattern
/// of semi-bandwidth beta, with min(n, d*beta+1) colors.
Coloring banded_coloring(Index n, Index beta, Distance d);

/// col(w) = sum_k (w_k mod (d+1)) (d+1)^k + 1: a distance-d coloring of the
/// lattice with at most (d+1)^D colors; each class is a coarse sub-lattice
/// with spacing d+1.
Coloring lattice_coloring(const LatticeSpec& spec, Distance d);

struct ColoringValidation {
    bool ok = true;
    Index witness_i = -1;  // violating pair when !ok
    Index witness_j = -1;

    explicit operator bool() const { return ok; }
};

/// Checks col(i) != col(j) whenever d(i,j) <= d (either orientation for
/// directed graphs); returns a violating pair otherwise.
ColoringValidation validate_coloring(const PatternGraph& g, const Coloring& col, Distance d);

/// l_D(d) = |{z in Z^D : ||z||_1 <= d}| = sum_k C(D,k) C(d+D-k, D).
/// Evaluated in wide integer arithmetic; throws NumericalError if the result
/// exceeds 64 bits.
std::uint64_t lattice_ball_size(Index D, Index d);

struct SphereSize {
    std::uint64_t exact;  // l_D(d) - l_D(d-1)
    std::uint64_t bound;  // 2 D d^(D-1)
};

std::uint64_t lattice_sphere_bound(Index D, Index d);
SphereSize lattice_sphere_size(Index D, Index d);

}  // namespace matprobe
