#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsteer/error.hpp"

namespace gsteer {

/// Simple undirected graph on vertices 1..N. Edges are stored as (min, max)
/// pairs in insertion order.
class Graph {
public:
    using Edge = std::pair<int, int>;

    /// Throws ValidationError on self-loops, duplicate edges or out-of-range endpoints.
    Graph(int n_vertices, std::vector<Edge> edges);

    int n_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int i, int j) const;

    /// Adjacent vertices of `v`, ascending.
    std::vector<int> neighbors(int v) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

Graph make_star(int n);
Graph make_chain(int n);

/// colors[v] in {0, 1} for v = 1..N; index 0 is unused.
struct TwoColoring {
    std::vector<int> colors;

    int operator[](int v) const { return colors[static_cast<std::size_t>(v)]; }
    /// Vertices of the given color, ascending.
    std::vector<int> vertices(int color) const;
};

/// Breadth-first two-coloring; the lowest-indexed vertex of each connected
/// component gets color 0. Throws NotTwoColorable naming one odd cycle.
TwoColoring two_color(const Graph& g);

/// Odd cycle found by two_color, empty for bipartite graphs.
std::vector<int> find_odd_cycle(const Graph& g);

class Bipartition {
public:
    /// `side_a` lists the A-side vertices; B is the complement. Both must be
    /// non-empty.
    Bipartition(int n_vertices, std::vector<int> side_a);

    const std::vector<int>& side_a() const { return a_; }
    const std::vector<int>& side_b() const { return b_; }
    int n_vertices() const { return static_cast<int>(a_.size() + b_.size()); }
    bool in_a(int v) const;

    /// A-side vertices first, each side ascending.
    std::vector<int> qudit_order() const;

    friend bool operator==(const Bipartition&, const Bipartition&) = default;

private:
    std::vector<int> a_;
    std::vector<int> b_;
};

/// All bipartitions of 1..N with non-empty sides, ordered by A-side bitmask.
std::vector<Bipartition> all_bipartitions(int n_vertices);

/// True when every A-side vertex with a neighbor in B sees exactly the same
/// set of B-side neighbors (and at least one edge crosses). For these cuts the
/// graph state has Schmidt rank exactly d.
bool is_single_constraint_cut(const Graph& g, const Bipartition& part);

struct GraphFile {
    Graph graph;
    int local_dim;
};

/// Parses {"n": <int>, "d": <int>, "edges": [[i, j], ...]}.
GraphFile parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g, int local_dim);

/// Parses a comma-separated vertex list such as "1,4".
std::vector<int> parse_vertex_list(std::string_view text);

} // namespace gsteer
