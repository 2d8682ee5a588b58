#pragma once

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ertail/graph.hpp"
#include "ertail/params.hpp"

namespace ertail {

// Exact counts: closed-walk counts overflow 64 bits already at modest n and t.
using HomCount = mpz_class;

inline std::string hom_to_string(const HomCount& c) { return c.get_str(); }

// Number of homomorphisms C_{2t} -> g, i.e. closed walks of length 2t.
// Computed per start vertex as ||A^t e_v||^2 with sparse mat-vecs; never
// materializes a dense matrix power.  t >= 1.
HomCount hom_cycle(const Graph& g, int t);

// Homomorphisms C_{2t} -> g whose image uses edge e at least once, counted
// once each: hom_cycle(g,t) - hom_cycle(g - e, t).  Requires e in E(g).
HomCount hom_cycle_edge(const Graph& g, int t, Edge e);

// All adjacency-preserving maps V(h) -> V(g) by backtracking.  Work is
// bounded by v(g)^v(h) <= 1e8; throws when the budget would be exceeded.
HomCount hom_brute(const Graph& h, const Graph& g);

// Injective homomorphisms h -> g (labelled copies of h in g).
HomCount labeled_copies(const Graph& h, const Graph& g);

// Sum of labeled_copies(h/pi, g) over all vertex partitions pi of V(h) whose
// quotient stays simple.  Equals hom_brute(h, g).
HomCount hom_via_quotients(const Graph& h, const Graph& g);

struct QuotientGraph {
  std::vector<int> partition;  // restricted growth string over the 2t cycle vertices
  Graph graph;                 // quotient of C_{2t}, loops dropped
  bool has_loop;               // some part contains two cyclically adjacent vertices
};

// Streams every set partition of the 2t cycle vertices in lexicographic
// restricted-growth-string order, each with its quotient graph, without
// materializing the full list (t = 6 already has 4.2 million partitions).
// 2 <= t <= 6.
void for_each_quotient(int t, const std::function<void(const QuotientGraph&)>& fn);

// The streamed partitions collected into a vector; prefer for_each_quotient
// at t >= 5.
std::vector<QuotientGraph> enumerate_quotients(int t);

// The subset of enumerate_quotients(t) with has_loop == false, same order.
std::vector<QuotientGraph> enumerate_simple_quotients(int t);

// Simple quotients of C_{2t} that are trees on exactly t+1 vertices, by
// enumeration; equals the Catalan number binom(2t,t)/(t+1).  2 <= t <= 6.
int tree_quotient_count(int t);

// Two-term mean approximation (np)^{2t} + Catalan(t) n^{t+1} p^t.
double expected_hom(const RegimeParams& params);

// Upper bound (2e)^ceil((ell+1)/2) on homomorphisms of the ell-edge path.
// ell = -1 is the empty path (bound 1), ell = 0 a single vertex.
double path_hom_bound(const Graph& g, int ell);

// Upper bound 2*alpha*t*e(g)^t + 2*sum_{w in U2} deg(w)^t on hom_cycle(g,t)
// for bipartite g with sides (U1, U2) and e(g) - |U1| <= alpha*e(g).
double bipartite_hom_bound(const Graph& g, const std::vector<int>& u1,
                           const std::vector<int>& u2, int t, double alpha);

// Per-edge bound for a d-regular graph H on vh vertices with eh edges:
// 4*eh*(2e)^(vh/2 - (2d-1)/d) * (4 deg(u) deg(v))^((d-1)/d) for e = {u,v}.
double local_hom_bound(const Graph& g, Edge e, int h_degree, int vh, int eh);

// Bound eh*(2e_g)^(vh/2)*(e_sub/e_g)^(1/d) on the per-edge sums over E(g_sub).
// Requires g_sub to be a subgraph of g and e(g) > 0.
double excess_hom_bound(const Graph& g, const Graph& g_sub, int h_degree,
                        int vh, int eh);

// Cycle C_k as a graph (k >= 3), handy when pairing hom_cycle with hom_brute.
Graph cycle_graph(int k);

// Exact Catalan number binom(2t,t)/(t+1).
HomCount catalan(int t);

}  // namespace ertail
