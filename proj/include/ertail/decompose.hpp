#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ertail/graph.hpp"
#include "ertail/hom.hpp"
#include "ertail/params.hpp"

namespace ertail {

// Degree-class split of a graph.  Vertex classes cover the non-isolated
// vertices; the eight subgraphs partition the edge set (high-low2 edges are
// impossible since low vertices adjacent to a high vertex land in low1).
// All subgraphs keep the original vertex numbering.
struct Decomposition {
  double varpi = 0.0;           // high-degree threshold used
  double low_cap = 0.0;         // (1 + delta(1-eps)) np, the low-degree cap

  std::vector<int> v_high;      // deg >= varpi
  std::vector<int> v_mid;       // the rest of the non-isolated vertices
  std::vector<int> v_low1;      // low-degree vertices adjacent to v_high
  std::vector<int> v_low2;      // low-degree vertices not adjacent to v_high

  Graph g_h, g_m, g_l1, g_l2;   // edges inside one class
  Graph g_hm, g_ml, g_l1l2, g_hl1;  // edges across classes (ml = mid to low1+low2)

  Graph core_l1l2, core_l1, core_hl1;      // two-cores of the matching subgraphs
  Graph forest_l1l2, forest_l1, forest_hl1;  // what the two-cores leave behind

  Graph star_hl1;      // forest_hl1 edges at degree-1 low1 vertices: star union
  Graph residual_hl1;  // remaining forest_hl1 edges

  Decomposition()
      : g_h(0, {}), g_m(0, {}), g_l1(0, {}), g_l2(0, {}), g_hm(0, {}), g_ml(0, {}),
        g_l1l2(0, {}), g_hl1(0, {}), core_l1l2(0, {}), core_l1(0, {}), core_hl1(0, {}),
        forest_l1l2(0, {}), forest_l1(0, {}), forest_hl1(0, {}), star_hl1(0, {}),
        residual_hl1(0, {}) {}
};

Decomposition decompose(const Graph& g, const RegimeParams& params);

// Splits a forest on (V_H, V_L1) cross edges into the star part (edges at
// degree-1 low1 vertices; a vertex-disjoint union of stars centered in V_H)
// and the residual.  Throws if the input is not a forest or has an edge that
// does not cross the two sets.
std::pair<Graph, Graph> star_forest_split(const Graph& forest,
                                          const std::vector<int>& v_high,
                                          const std::vector<int>& v_low1);

// Edges with deg(u)*deg(v) >= c0 * n^2 p^2 versus the rest.
std::pair<Graph, Graph> high_low_split(const Graph& g, double c0,
                                       const RegimeParams& params);

// Keeps vertices of degree >= gamma_star * np, then takes the two-core.
Graph gamma_prune_step(const Graph& g, double gamma_star, const RegimeParams& params);

struct PruneResult {
  Graph graph;
  int removed = 0;
};

// Repeatedly deletes the edge with the lowest per-edge cycle count while that
// count is below theta (ties broken by edge order), recomputing after every
// deletion.  Total count decrease is at most theta * removed.
PruneResult prune_core(const Graph& g, int t, double theta);

struct ClassifyThresholds {
  double cbar = 1.0;               // edge budget constant for seed/core
  std::optional<double> cstar;     // strong-core budget; default 8 * delta_hat^(1/t)
};

// Witnesses and verdicts for the seed / core / strong-core conditions.
struct CoreReport {
  bool is_preseed_surrogate = false;
  bool is_seed = false;
  bool is_core = false;
  bool is_strong_core = false;

  HomCount hom = 0;                // Hom(C_{2t}, g)
  long long edge_count = 0;
  HomCount min_edge_hom = 0;       // min per-edge count; 0 when there are no edges

  double preseed_hom_threshold = 0.0;  // (1 + delta_hat(1-eps)) E[Hom] - (np)^{2t}
  double seed_hom_threshold = 0.0;     // delta_hat (1-2eps) (np)^{2t}
  double core_hom_threshold = 0.0;     // delta_hat (1-3eps) (np)^{2t}
  double strong_hom_threshold = 0.0;   // delta_hat (1-6eps) (np)^{2t}
  double edge_budget = 0.0;            // cbar n^2 p^2 log(1/p)
  double strong_edge_budget = 0.0;     // cstar n^2 p^2
  double core_min_edge_threshold = 0.0;    // delta_hat eps (np)^{2t} / edge_budget
  double strong_min_edge_threshold = 0.0;  // (delta_hat eps / cstar)(np)^{2t-2}
  double cbar = 0.0;
  double cstar = 0.0;
};

CoreReport classify(const Graph& g, const RegimeParams& params,
                    ClassifyThresholds thresholds = {});

}  // namespace ertail
