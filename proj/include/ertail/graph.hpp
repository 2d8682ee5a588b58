#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ertail {

using Edge = std::pair<int, int>;

// Undirected simple graph on vertex set {0, ..., n-1}. Edges are normalized to
// u < v and kept sorted lexicographically; adjacency lists are sorted too.
// Graphs are immutable after construction: every operation returns a new one.
// Subgraph operations preserve vertex ids (vertices outside the kept set just
// become isolated), so edge sets of derived graphs remain directly comparable.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj;

    Graph() = default;
    // Rejects out-of-range endpoints, self-loops and duplicate edges.
    Graph(int n_, std::vector<Edge> edge_list);

    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;
    int max_degree() const;
    int nonisolated_count() const;

    bool operator==(const Graph& o) const { return n == o.n && edges == o.edges; }
};

// G(n, p): one uniform per vertex pair, pairs visited in lexicographic order,
// edge kept iff the draw is < p. Identical (n, seed) couple graphs across p
// monotonically: raising p only adds edges.
Graph sample_er(int n, double p, std::uint64_t seed);

// Adds every missing edge inside s. Vertices of s must be distinct.
Graph plant_clique(const Graph& g, const std::vector<int>& s);

// Adds seeded edges at v until deg(v) >= d, choosing new neighbours uniformly
// without replacement from the ascending list of current non-neighbours.
// Errors when d > n-1 (no simple graph has such a degree).
Graph plant_hub(const Graph& g, int v, int d, std::uint64_t seed);

// Maximal subgraph in which every non-isolated vertex has degree >= 2
// (iterated removal of degree <= 1 vertices). Idempotent.
Graph two_core(const Graph& g);

// Edges with both endpoints in s.
Graph induced_subgraph(const Graph& g, const std::vector<int>& s);

// Edges with one endpoint in a and the other in b; a and b must be disjoint.
Graph bipartite_subgraph(const Graph& g, const std::vector<int>& a,
                         const std::vector<int>& b);

// g minus one existing edge / minus a set of edges (each must be present).
Graph remove_edge(const Graph& g, Edge e);
Graph remove_edges(const Graph& g, const std::vector<Edge>& es);

struct DegreeStats {
    int n = 0;
    int edge_count = 0;
    int max_degree = 0;
    int min_degree = 0;             // over all vertices (0 when isolated ones exist)
    int min_degree_nonisolated = 0; // 0 for the empty graph
    double mean_degree = 0.0;
    std::map<int, int> histogram;   // degree -> vertex count
};
DegreeStats degree_stats(const Graph& g);

// Vertex lists of the connected components (singletons included), each sorted,
// ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

// Text format: header "n m", then one "u v" line per edge, 1-based, u < v,
// lexicographically sorted. Round-trips bit-exactly.
std::string format_edge_list(const Graph& g);
Graph parse_edge_list(const std::string& text);

}  // namespace ertail
