#include "matprobe/coloring.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace matprobe {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(Index n, Index k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (Index i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

std::uint64_t to_u64(const BigInt& v, const char* what) {
    if (v > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw NumericalError(std::string(what) + " exceeds 64-bit range");
    return static_cast<std::uint64_t>(v);
}

std::vector<std::vector<Index>> build_classes(const std::vector<int>& color_of, int num_colors) {
    std::vector<std::vector<Index>> classes(static_cast<std::size_t>(num_colors));
    for (std::size_t v = 0; v < color_of.size(); ++v)
        classes[static_cast<std::size_t>(color_of[v] - 1)].push_back(static_cast<Index>(v));
    return classes;
}

// Drops empty classes and renumbers colors consecutively (ascending raw color).
void compact(Coloring& col) {
    std::vector<int> remap(col.classes.size() + 1, 0);
    std::vector<std::vector<Index>> kept;
    for (std::size_t c = 0; c < col.classes.size(); ++c) {
        if (col.classes[c].empty()) continue;
        remap[c + 1] = static_cast<int>(kept.size()) + 1;
        kept.push_back(std::move(col.classes[c]));
    }
    for (auto& c : col.color_of) c = remap[static_cast<std::size_t>(c)];
    col.classes = std::move(kept);
}

}  // namespace

Index Coloring::max_class_size() const {
    Index m = 0;
    for (const auto& cls : classes) m = std::max(m, static_cast<Index>(cls.size()));
    return m;
}

Index LatticeSpec::node_count() const {
    Index n = 1;
    for (Index e : dims) {
        if (e < 1) throw ArgumentError("lattice extent must be >= 1");
        n *= e;
    }
    return n;
}

std::vector<Index> LatticeSpec::coordinates(Index node) const {
    std::vector<Index> c(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        c[k] = node % dims[k];
        node /= dims[k];
    }
    return c;
}

Index LatticeSpec::node(const std::vector<Index>& coords) const {
    if (coords.size() != dims.size()) throw ArgumentError("coordinate arity mismatch");
    Index idx = 0;
    for (std::size_t k = dims.size(); k-- > 0;) {
        if (coords[k] < 0 || coords[k] >= dims[k]) throw ArgumentError("coordinate out of range");
        idx = idx * dims[k] + coords[k];
    }
    return idx;
}

Coloring greedy_coloring(const PatternGraph& g, Distance d, std::vector<Index> order) {
    if (d < 1) throw ArgumentError("greedy_coloring: distance must be >= 1");
    const Index n = g.size();
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Index{0});
    } else {
        if (static_cast<Index>(order.size()) != n)
            throw ArgumentError("greedy_coloring: order is not a permutation");
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (Index v : order) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                throw ArgumentError("greedy_coloring: order is not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    std::vector<int> color_of(static_cast<std::size_t>(n), 0);
    std::vector<char> forbidden;
    int max_color = 0;
    for (Index v : order) {
        forbidden.assign(static_cast<std::size_t>(max_color) + 2, 0);
        auto forbid_within = [&](const std::vector<Distance>& dist) {
            for (Index u = 0; u < n; ++u) {
                if (u == v || dist[static_cast<std::size_t>(u)] > d) continue;
                const int c = color_of[static_cast<std::size_t>(u)];
                if (c > 0 && c < static_cast<int>(forbidden.size())) forbidden[c] = 1;
            }
        };
        forbid_within(bfs_distances(g, v, d));
        if (g.directed()) forbid_within(bfs_distances_reverse(g, v, d));

        int c = 1;
        while (c < static_cast<int>(forbidden.size()) && forbidden[c]) ++c;
        color_of[static_cast<std::size_t>(v)] = c;
        max_color = std::max(max_color, c);
    }

    Coloring col;
    col.color_of = std::move(color_of);
    col.classes = build_classes(col.color_of, max_color);
    col.certified_distance = d;
    col.mode = g.directed() ? GraphMode::Directed : GraphMode::Undirected;
    col.source = ColoringSource::Greedy;
    return col;
}

Coloring banded_coloring(Index n, Index beta, Distance d) {
    if (n < 1 || beta < 1 || d < 1) throw ArgumentError("banded_coloring: bad arguments");
    const Index m = static_cast<Index>(d) * beta + 1;
    Coloring col;
    col.color_of.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) col.color_of[static_cast<std::size_t>(i)] = static_cast<int>(i % m) + 1;
    col.classes = build_classes(col.color_of, static_cast<int>(std::min(n, m)));
    col.certified_distance = d;
    col.mode = GraphMode::Undirected;
    col.source = ColoringSource::Banded;
    return col;
}

Coloring lattice_coloring(const LatticeSpec& spec, Distance d) {
    if (d < 1) throw ArgumentError("lattice_coloring: distance must be >= 1");
    const Index n = spec.node_count();
    const Index D = spec.dimension();
    Index num_raw = 1;
    for (Index k = 0; k < D; ++k) num_raw *= static_cast<Index>(d) + 1;

    Coloring col;
    col.color_of.resize(static_cast<std::size_t>(n));
    for (Index v = 0; v < n; ++v) {
        const auto w = spec.coordinates(v);
        Index c = 0, weight = 1;
        for (Index k = 0; k < D; ++k) {
            c += (w[static_cast<std::size_t>(k)] % (static_cast<Index>(d) + 1)) * weight;
            weight *= static_cast<Index>(d) + 1;
        }
        col.color_of[static_cast<std::size_t>(v)] = static_cast<int>(c) + 1;
    }
    col.classes = build_classes(col.color_of, static_cast<int>(num_raw));
    compact(col);
    col.certified_distance = d;
    col.mode = GraphMode::Undirected;
    col.source = ColoringSource::Lattice;
    return col;
}

ColoringValidation validate_coloring(const PatternGraph& g, const Coloring& col, Distance d) {
    if (col.size() != g.size()) throw ArgumentError("validate_coloring: size mismatch");
    // Checking d(i, .) <= d from every i covers both orientations of each pair.
    for (Index i = 0; i < g.size(); ++i) {
        const auto dist = bfs_distances(g, i, d);
        for (Index j = 0; j < g.size(); ++j) {
            if (j == i || dist[static_cast<std::size_t>(j)] > d) continue;
            if (col.color_of[static_cast<std::size_t>(i)] ==
                col.color_of[static_cast<std::size_t>(j)])
                return {false, i, j};
        }
    }
    return {};
}

std::uint64_t lattice_ball_size(Index D, Index d) {
    if (D < 1 || d < 0) throw ArgumentError("lattice_ball_size: need D >= 1, d >= 0");
    BigInt total = 0;
    for (Index k = 0; k <= D; ++k) total += binomial(D, k) * binomial(d + D - k, D);
    return to_u64(total, "lattice ball size");
}

std::uint64_t lattice_sphere_bound(Index D, Index d) {
    if (D < 1 || d < 1) throw ArgumentError("lattice_sphere_bound: need D >= 1, d >= 1");
    BigInt b = 2 * BigInt(D);
    for (Index i = 0; i < D - 1; ++i) b *= d;
    return to_u64(b, "lattice sphere bound");
}

SphereSize lattice_sphere_size(Index D, Index d) {
    if (D < 1 || d < 1) throw ArgumentError("lattice_sphere_size: need D >= 1, d >= 1");
    return {lattice_ball_size(D, d) - lattice_ball_size(D, d - 1), lattice_sphere_bound(D, d)};
}

}  // namespace matprobe
