#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ertail/graph.hpp"

namespace ertail {

// Largest adjacency eigenvalue. Power iteration on A + I restricted to each
// connected component (the shift makes lambda_1 + 1 strictly dominant in
// modulus, so bipartite components cannot stall the iteration), seeded positive
// start vector, Rayleigh-quotient stopping with an extra residual check.
// Deterministic for a given graph and tol. Throws after 10^6 iterations
// without convergence.
double spectral_radius(const Graph& g, double tol = 1e-10);

// The elementary eigenvalue bounds, evaluated on one graph. Bounds that do not
// apply are left empty with the reason recorded in `absent`.
struct BoundReport {
    double lambda = 0.0;
    int max_degree = 0;
    double sqrt_max_degree = 0.0;  // lower bound: sqrt(max degree) <= lambda
    double degree_bound = 0.0;     // lambda <= max degree
    double sqrt_two_edges = 0.0;   // lambda <= sqrt(2 e)
    std::optional<double> forest_bound;              // 2 sqrt(max_degree - 1), forests with max degree >= 2
    std::optional<double> bipartite_product_bound;   // sqrt(D1 D2), D_i = max degree inside side i
    std::optional<double> bipartite_neighbor_bound;  // min over sides of max_v sqrt(sum of neighbour degrees)
    std::optional<double> excess_edge_bound;         // sqrt(2(e - v) + max_degree + 2), min degree >= 2
    std::map<std::string, std::string> absent;       // bound name -> reason it is not applicable
};
BoundReport bound_report(const Graph& g, double tol = 1e-10);

// True when every edge of sub is an edge of g (and sub.n <= g.n).
bool is_subgraph(const Graph& sub, const Graph& g);

struct MonotonicityCheck {
    double lambda_sub = 0.0;
    double lambda_super = 0.0;
    bool holds = false;  // lambda_sub <= lambda_super + tol
};
// Verifies lambda(sub) <= lambda(g); throws when sub is not a subgraph of g.
MonotonicityCheck subgraph_monotonicity_check(const Graph& sub, const Graph& g,
                                              double tol = 1e-10);

// Two-colouring over non-isolated vertices: (side0, side1) when g is bipartite
// (components coloured independently, lowest vertex of each gets side 0),
// nullopt when any odd cycle exists.
std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(const Graph& g);

// True when g has no cycle.
bool is_forest(const Graph& g);

}  // namespace ertail
