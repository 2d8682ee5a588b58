#include "ertail/decompose.hpp"

#include <cmath>
#include <stdexcept>

#include "ertail/spectral.hpp"

namespace ertail {

namespace {

enum class Cls { none, high, mid, low1, low2 };

Graph edges_to_graph(int n, std::vector<Edge> edges) { return Graph(n, std::move(edges)); }

// Edges of g_part that survive into its two-core; the rest is acyclic.
std::pair<Graph, Graph> core_and_forest(const Graph& g_part) {
  Graph core = two_core(g_part);
  std::vector<Edge> rest;
  for (const Edge& e : g_part.edges) {
    if (!core.has_edge(e.first, e.second)) rest.push_back(e);
  }
  return {std::move(core), edges_to_graph(g_part.n, std::move(rest))};
}

}  // namespace

Decomposition decompose(const Graph& g, const RegimeParams& params) {
  Decomposition d;
  d.varpi = varpi(params);
  d.low_cap = low_degree_cap(params);

  std::vector<Cls> cls(g.n, Cls::none);
  for (int v = 0; v < g.n; ++v) {
    int deg = g.degree(v);
    if (deg == 0) continue;
    if (deg >= d.varpi) {
      cls[v] = Cls::high;
    } else if (deg <= d.low_cap) {
      cls[v] = Cls::low2;  // refined to low1 below
    } else {
      cls[v] = Cls::mid;
    }
  }
  for (int v = 0; v < g.n; ++v) {
    if (cls[v] != Cls::low2) continue;
    for (int u : g.adj[v]) {
      if (cls[u] == Cls::high) {
        cls[v] = Cls::low1;
        break;
      }
    }
  }
  for (int v = 0; v < g.n; ++v) {
    switch (cls[v]) {
      case Cls::high: d.v_high.push_back(v); break;
      case Cls::mid: d.v_mid.push_back(v); break;
      case Cls::low1: d.v_low1.push_back(v); break;
      case Cls::low2: d.v_low2.push_back(v); break;
      case Cls::none: break;
    }
  }

  std::vector<Edge> eh, em, el1, el2, ehm, eml, el1l2, ehl1;
  for (const Edge& e : g.edges) {
    Cls a = cls[e.first];
    Cls b = cls[e.second];
    if (a == b) {
      switch (a) {
        case Cls::high: eh.push_back(e); break;
        case Cls::mid: em.push_back(e); break;
        case Cls::low1: el1.push_back(e); break;
        case Cls::low2: el2.push_back(e); break;
        case Cls::none: break;
      }
      continue;
    }
    auto pair_is = [&](Cls x, Cls y) { return (a == x && b == y) || (a == y && b == x); };
    if (pair_is(Cls::high, Cls::mid)) {
      ehm.push_back(e);
    } else if (pair_is(Cls::mid, Cls::low1) || pair_is(Cls::mid, Cls::low2)) {
      eml.push_back(e);
    } else if (pair_is(Cls::low1, Cls::low2)) {
      el1l2.push_back(e);
    } else if (pair_is(Cls::high, Cls::low1)) {
      ehl1.push_back(e);
    } else {
      // high-low2 cannot happen: a low vertex next to a high one is low1.
      throw std::logic_error("decompose: impossible class pair");
    }
  }
  d.g_h = edges_to_graph(g.n, std::move(eh));
  d.g_m = edges_to_graph(g.n, std::move(em));
  d.g_l1 = edges_to_graph(g.n, std::move(el1));
  d.g_l2 = edges_to_graph(g.n, std::move(el2));
  d.g_hm = edges_to_graph(g.n, std::move(ehm));
  d.g_ml = edges_to_graph(g.n, std::move(eml));
  d.g_l1l2 = edges_to_graph(g.n, std::move(el1l2));
  d.g_hl1 = edges_to_graph(g.n, std::move(ehl1));

  std::tie(d.core_l1l2, d.forest_l1l2) = core_and_forest(d.g_l1l2);
  std::tie(d.core_l1, d.forest_l1) = core_and_forest(d.g_l1);
  std::tie(d.core_hl1, d.forest_hl1) = core_and_forest(d.g_hl1);
  std::tie(d.star_hl1, d.residual_hl1) = star_forest_split(d.forest_hl1, d.v_high, d.v_low1);
  return d;
}

std::pair<Graph, Graph> star_forest_split(const Graph& forest,
                                          const std::vector<int>& v_high,
                                          const std::vector<int>& v_low1) {
  if (!is_forest(forest)) {
    throw std::invalid_argument("star_forest_split: input has a cycle");
  }
  std::vector<char> side(forest.n, 0);
  for (int v : v_high) {
    if (v < 0 || v >= forest.n) throw std::invalid_argument("star_forest_split: vertex out of range");
    side[v] = 1;
  }
  for (int v : v_low1) {
    if (v < 0 || v >= forest.n) throw std::invalid_argument("star_forest_split: vertex out of range");
    if (side[v] != 0) throw std::invalid_argument("star_forest_split: sets are not disjoint");
    side[v] = 2;
  }
  std::vector<Edge> star, residual;
  for (const Edge& e : forest.edges) {
    if (side[e.first] + side[e.second] != 3) {
      throw std::invalid_argument("star_forest_split: edge does not cross the two sets");
    }
    int low = side[e.first] == 2 ? e.first : e.second;
    if (forest.degree(low) == 1) {
      star.push_back(e);
    } else {
      residual.push_back(e);
    }
  }
  return {edges_to_graph(forest.n, std::move(star)),
          edges_to_graph(forest.n, std::move(residual))};
}

std::pair<Graph, Graph> high_low_split(const Graph& g, double c0,
                                       const RegimeParams& params) {
  double threshold = c0 * params.n * params.p * params.n * params.p;
  std::vector<Edge> high, low;
  for (const Edge& e : g.edges) {
    double prod = static_cast<double>(g.degree(e.first)) * g.degree(e.second);
    (prod >= threshold ? high : low).push_back(e);
  }
  return {edges_to_graph(g.n, std::move(high)), edges_to_graph(g.n, std::move(low))};
}

Graph gamma_prune_step(const Graph& g, double gamma_star, const RegimeParams& params) {
  double threshold = gamma_star * params.n * params.p;
  std::vector<int> keep;
  for (int v = 0; v < g.n; ++v) {
    if (g.degree(v) >= threshold) keep.push_back(v);
  }
  return two_core(induced_subgraph(g, keep));
}

PruneResult prune_core(const Graph& g, int t, double theta) {
  Graph cur = g;
  int removed = 0;
  while (cur.edge_count() > 0) {
    HomCount total = hom_cycle(cur, t);
    bool found = false;
    Edge victim{0, 0};
    HomCount lowest = 0;
    for (const Edge& e : cur.edges) {  // edges are sorted: ties fall to the first
      HomCount local = total - hom_cycle(remove_edge(cur, e), t);
      if (mpz_cmp_d(local.get_mpz_t(), theta) < 0 && (!found || local < lowest)) {
        found = true;
        lowest = local;
        victim = e;
      }
    }
    if (!found) break;
    cur = remove_edge(cur, victim);
    ++removed;
  }
  return {std::move(cur), removed};
}

CoreReport classify(const Graph& g, const RegimeParams& params,
                    ClassifyThresholds thresholds) {
  CoreReport r;
  double np = params.n * params.p;
  double pow_2t = std::pow(np, 2.0 * params.t);
  r.cbar = thresholds.cbar;
  r.cstar = thresholds.cstar.value_or(8.0 * std::pow(params.delta_hat, 1.0 / params.t));

  r.hom = hom_cycle(g, params.t);
  r.edge_count = g.edge_count();
  if (r.edge_count > 0) {
    bool first = true;
    for (const Edge& e : g.edges) {
      HomCount local = r.hom - hom_cycle(remove_edge(g, e), params.t);
      if (first || local < r.min_edge_hom) {
        r.min_edge_hom = local;
        first = false;
      }
    }
  }

  r.preseed_hom_threshold =
      (1.0 + params.delta_hat * (1.0 - params.eps)) * expected_hom(params) - pow_2t;
  r.seed_hom_threshold = params.delta_hat * (1.0 - 2.0 * params.eps) * pow_2t;
  r.core_hom_threshold = params.delta_hat * (1.0 - 3.0 * params.eps) * pow_2t;
  r.strong_hom_threshold = params.delta_hat * (1.0 - 6.0 * params.eps) * pow_2t;
  r.edge_budget = r.cbar * np * np * std::log(1.0 / params.p);
  r.strong_edge_budget = r.cstar * np * np;
  r.core_min_edge_threshold = params.delta_hat * params.eps * pow_2t / r.edge_budget;
  r.strong_min_edge_threshold =
      (params.delta_hat * params.eps / r.cstar) * std::pow(np, 2.0 * params.t - 2.0);

  auto hom_at_least = [](const HomCount& c, double thr) {
    return mpz_cmp_d(c.get_mpz_t(), thr) >= 0;
  };
  bool s1 = hom_at_least(r.hom, r.seed_hom_threshold);
  bool s2 = static_cast<double>(r.edge_count) <= r.edge_budget;
  bool ps1 = hom_at_least(r.hom, r.preseed_hom_threshold);
  bool c1 = hom_at_least(r.hom, r.core_hom_threshold);
  bool c3 = r.edge_count == 0 || hom_at_least(r.min_edge_hom, r.core_min_edge_threshold);
  bool sc1 = hom_at_least(r.hom, r.strong_hom_threshold);
  bool sc2 = static_cast<double>(r.edge_count) <= r.strong_edge_budget;
  bool sc3 = r.edge_count == 0 || hom_at_least(r.min_edge_hom, r.strong_min_edge_threshold);

  r.is_preseed_surrogate = ps1 && s2;
  r.is_seed = s1 && s2;
  r.is_core = c1 && s2 && c3;
  r.is_strong_core = sc1 && sc2 && sc3;
  return r;
}

}  // namespace ertail
