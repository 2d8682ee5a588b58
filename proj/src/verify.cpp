#include "ertail/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ertail/decompose.hpp"
#include "ertail/graph.hpp"
#include "ertail/hom.hpp"
#include "ertail/json_io.hpp"
#include "ertail/montecarlo.hpp"
#include "ertail/params.hpp"
#include "ertail/rates.hpp"
#include "ertail/rng.hpp"
#include "ertail/spectral.hpp"

namespace ertail {

namespace {

constexpr double kSlack = 1e-8;  // numerical slack for eigenvalue comparisons

Graph complete_graph(int m) {
  std::vector<Edge> es;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) es.push_back({i, j});
  return Graph(m, std::move(es));
}

Graph path_graph(int vertices) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < vertices; ++i) es.push_back({i, i + 1});
  return Graph(vertices, std::move(es));
}

Graph star_graph(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
  return Graph(leaves + 1, std::move(es));
}

Graph random_bipartite(int a, int b, double p, std::uint64_t seed) {
  UniformStream stream(seed);
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (stream.next() < p) es.push_back({i, a + j});
  return Graph(a + b, std::move(es));
}

// Full spectrum by cyclic Jacobi; deliberately independent of the power
// iteration so the trace check has a second opinion.
std::vector<double> jacobi_eigenvalues(const Graph& g) {
  int n = g.n;
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges) {
    a[e.first][e.second] = 1.0;
    a[e.second][e.first] = 1.0;
  }
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off <= 1e-22) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= 1e-15) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[i][i];
  return eig;
}

double exact_binomial_tail(long long n_trials, double s, long long k0) {
  if (k0 <= 0) return 1.0;
  if (k0 > n_trials) return 0.0;
  double total = 0.0;
  for (long long k = k0; k <= n_trials; ++k) {
    double lt = std::lgamma(n_trials + 1.0) - std::lgamma(k + 1.0) -
                std::lgamma(n_trials - k + 1.0) + k * std::log(s) +
                (n_trials - k) * std::log1p(-s);
    total += std::exp(lt);
  }
  return total;
}

// 0.99 quantiles of chi-square, df = 1..20.
constexpr double kChi2Q99[20] = {
    6.634896601021,  9.210340371976,  11.344866730144, 13.276704135988,
    15.086272469389, 16.811893829771, 18.475306906582, 20.090235029663,
    21.665994333462, 23.209251158954, 24.724970311318, 26.216967305536,
    27.688249610457, 29.141237740673, 30.577914166892, 31.999926908815,
    33.408663605005, 34.805305734705, 36.190869129270, 37.566234786625};

// Two-sample chi-square with greedy binning to pooled counts >= 10.
double chi_square_two_sample(const std::map<int, std::uint64_t>& a,
                             const std::map<int, std::uint64_t>& b, int& df_out) {
  std::vector<int> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : b) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<std::pair<double, double>> bins;
  double cur_a = 0.0, cur_b = 0.0;
  for (int k : keys) {
    auto ia = a.find(k);
    auto ib = b.find(k);
    cur_a += ia == a.end() ? 0.0 : static_cast<double>(ia->second);
    cur_b += ib == b.end() ? 0.0 : static_cast<double>(ib->second);
    if (cur_a + cur_b >= 10.0) {
      bins.push_back({cur_a, cur_b});
      cur_a = cur_b = 0.0;
    }
  }
  if (cur_a + cur_b > 0.0) {
    if (bins.empty()) {
      bins.push_back({cur_a, cur_b});
    } else {
      bins.back().first += cur_a;
      bins.back().second += cur_b;
    }
  }
  double ma = 0.0, mb = 0.0;
  for (const auto& [x, y] : bins) {
    ma += x;
    mb += y;
  }
  double x2 = 0.0;
  for (const auto& [x, y] : bins) {
    double num = mb * x - ma * y;
    x2 += num * num / (ma * mb * (x + y));
  }
  df_out = static_cast<int>(bins.size()) - 1;
  return x2;
}

struct Suite {
  std::vector<CheckResult>& out;

  template <typename Fn>
  void run(const std::string& name, Fn&& fn) {
    CheckResult r;
    r.name = name;
    try {
      std::ostringstream detail;
      r.pass = fn(detail);
      r.detail = detail.str();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("unexpected exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
};

}  // namespace

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  Suite suite{results};

  // ---- graph core ----

  suite.run("sample_er_reproducible", [&](std::ostringstream& d) {
    for (int k = 0; k < 5; ++k) {
      Graph a = sample_er(40, 0.2, sub_seed(seed, k));
      Graph b = sample_er(40, 0.2, sub_seed(seed, k));
      if (!(a == b)) {
        d << "seed index " << k << " gave two different edge sets";
        return false;
      }
    }
    d << "5 seeds, n=40";
    return true;
  });

  suite.run("sample_er_monotone_coupling", [&](std::ostringstream& d) {
    const double ps[] = {0.05, 0.15, 0.35, 0.7, 1.0};
    for (int k = 0; k < 5; ++k) {
      std::uint64_t s = sub_seed(seed, 100 + k);
      for (int i = 0; i + 1 < 5; ++i) {
        Graph lo = sample_er(30, ps[i], s);
        Graph hi = sample_er(30, ps[i + 1], s);
        if (!is_subgraph(lo, hi)) {
          d << "p=" << ps[i] << " not nested in p=" << ps[i + 1];
          return false;
        }
      }
    }
    d << "nested chains over 5 seeds";
    return true;
  });

  suite.run("plant_ops_are_supersets", [&](std::ostringstream& d) {
    for (int k = 0; k < 5; ++k) {
      Graph g = sample_er(25, 0.15, sub_seed(seed, 200 + k));
      Graph c = plant_clique(g, {0, 3, 7, 11, 19});
      Graph h = plant_hub(g, 2, 18, sub_seed(seed, 300 + k));
      if (!is_subgraph(g, c) || !is_subgraph(g, h)) {
        d << "planted graph lost an input edge at seed index " << k;
        return false;
      }
      if (h.degree(2) != 18) {
        d << "hub degree " << h.degree(2) << " != 18";
        return false;
      }
    }
    d << "clique and hub plants over 5 seeds";
    return true;
  });

  suite.run("two_core_contract", [&](std::ostringstream& d) {
    for (int k = 0; k < 8; ++k) {
      Graph g = sample_er(30, 0.08, sub_seed(seed, 400 + k));
      Graph core = two_core(g);
      if (!is_subgraph(core, g)) {
        d << "two-core not a subgraph";
        return false;
      }
      DegreeStats s = degree_stats(core);
      if (core.edge_count() > 0 && s.min_degree_nonisolated < 2) {
        d << "two-core has a vertex of degree " << s.min_degree_nonisolated;
        return false;
      }
      if (!(two_core(core) == core)) {
        d << "two-core not idempotent";
        return false;
      }
    }
    d << "8 sparse graphs";
    return true;
  });

  // ---- spectral ----

  suite.run("spectral_degree_edge_bounds", [&](std::ostringstream& d) {
    for (int k = 0; k < 120; ++k) {
      int n = 4 + static_cast<int>(sub_seed(seed, 500 + k) % 29);
      double p = (k % 3 == 0) ? 0.05 : (k % 3 == 1 ? 0.1 : 0.3);
      Graph g = sample_er(n, p, sub_seed(seed, 600 + k));
      double lam = spectral_radius(g);
      DegreeStats s = degree_stats(g);
      double upper = std::min(static_cast<double>(s.max_degree),
                              std::sqrt(2.0 * s.edge_count));
      if (std::sqrt(static_cast<double>(s.max_degree)) - kSlack > lam ||
          lam > upper + kSlack) {
        d << "bound violated at n=" << n << " p=" << p;
        return false;
      }
    }
    d << "120 random graphs";
    return true;
  });

  suite.run("spectral_edge_partition_subadditive", [&](std::ostringstream& d) {
    for (int k = 0; k < 40; ++k) {
      Graph g = sample_er(20, 0.3, sub_seed(seed, 700 + k));
      std::vector<Edge> e1, e2;
      for (std::size_t i = 0; i < g.edges.size(); ++i) {
        (i % 2 == 0 ? e1 : e2).push_back(g.edges[i]);
      }
      Graph g1(g.n, e1), g2(g.n, e2);
      if (spectral_radius(g) > spectral_radius(g1) + spectral_radius(g2) + kSlack) {
        d << "subadditivity violated at seed index " << k;
        return false;
      }
    }
    d << "40 alternating edge partitions";
    return true;
  });

  suite.run("spectral_disjoint_union_is_max", [&](std::ostringstream& d) {
    for (int k = 0; k < 10; ++k) {
      Graph g1 = sample_er(12, 0.3, sub_seed(seed, 800 + k));
      Graph g2 = sample_er(9, 0.4, sub_seed(seed, 900 + k));
      std::vector<Edge> es = g1.edges;
      for (const Edge& e : g2.edges) es.push_back({e.first + g1.n, e.second + g1.n});
      Graph u(g1.n + g2.n, es);
      double expect = std::max(spectral_radius(g1), spectral_radius(g2));
      if (std::abs(spectral_radius(u) - expect) > 1e-12) {
        d << "union lambda differs from max at seed index " << k;
        return false;
      }
    }
    d << "10 disjoint unions";
    return true;
  });

  suite.run("spectral_bipartite_side_bounds", [&](std::ostringstream& d) {
    for (int k = 0; k < 25; ++k) {
      Graph g = random_bipartite(7, 9, 0.35, sub_seed(seed, 1000 + k));
      BoundReport r = bound_report(g);
      if (g.edge_count() == 0) continue;
      if (!r.bipartite_product_bound || !r.bipartite_neighbor_bound) {
        d << "bipartite bounds missing on a bipartite graph";
        return false;
      }
      if (*r.bipartite_product_bound < r.lambda - kSlack ||
          *r.bipartite_neighbor_bound < r.lambda - kSlack) {
        d << "a bipartite bound fell below lambda";
        return false;
      }
    }
    d << "25 random bipartite graphs";
    return true;
  });

  suite.run("spectral_excess_bound_on_two_cores", [&](std::ostringstream& d) {
    int checked = 0;
    for (int k = 0; k < 30; ++k) {
      Graph core = two_core(sample_er(26, 0.12, sub_seed(seed, 1100 + k)));
      if (core.edge_count() == 0) continue;
      BoundReport r = bound_report(core);
      if (!r.excess_edge_bound) {
        d << "excess bound missing on a two-core";
        return false;
      }
      if (*r.excess_edge_bound < r.lambda - kSlack) {
        d << "excess bound below lambda";
        return false;
      }
      ++checked;
    }
    d << checked << " nonempty two-cores";
    return checked > 0;
  });

  // ---- homomorphisms ----

  suite.run("hom_cycle_matches_brute_force", [&](std::ostringstream& d) {
    for (int k = 0; k < 40; ++k) {
      int n = 3 + static_cast<int>(sub_seed(seed, 1200 + k) % 4);
      Graph g = sample_er(n, 0.5, sub_seed(seed, 1300 + k));
      for (int t : {2, 3}) {
        if (hom_cycle(g, t) != hom_brute(cycle_graph(2 * t), g)) {
          d << "mismatch at n=" << n << " t=" << t;
          return false;
        }
      }
    }
    d << "40 graphs, t in {2,3}";
    return true;
  });

  suite.run("hom_trace_consistency_jacobi", [&](std::ostringstream& d) {
    for (int k = 0; k < 20; ++k) {
      Graph g = sample_er(9, 0.4, sub_seed(seed, 1400 + k));
      HomCount h = hom_cycle(g, 2);
      if (h == 0) continue;
      double trace = 0.0;
      for (double lam : jacobi_eigenvalues(g)) trace += std::pow(lam, 4);
      double rel = std::abs(trace - h.get_d()) / h.get_d();
      if (rel > 1e-6) {
        d << "trace mismatch, rel err " << rel;
        return false;
      }
    }
    d << "20 graphs against a dense eigensolver";
    return true;
  });

  suite.run("hom_edge_sum_sandwich", [&](std::ostringstream& d) {
    for (int k = 0; k < 20; ++k) {
      Graph g = sample_er(10, 0.35, sub_seed(seed, 1500 + k));
      for (int t : {2, 3}) {
        HomCount total = hom_cycle(g, t);
        HomCount edge_sum = 0;
        for (const Edge& e : g.edges) edge_sum += hom_cycle_edge(g, t, e);
        if (edge_sum < total || edge_sum > 2 * t * total) {
          d << "sandwich violated at t=" << t;
          return false;
        }
      }
    }
    d << "20 graphs, exact integers";
    return true;
  });

  suite.run("hom_quotient_identity", [&](std::ostringstream& d) {
    std::vector<Graph> hs = {cycle_graph(4), complete_graph(3), path_graph(4), star_graph(3)};
    for (int k = 0; k < 6; ++k) {
      Graph g = sample_er(5, 0.5, sub_seed(seed, 1600 + k));
      for (const Graph& h : hs) {
        if (hom_via_quotients(h, g) != hom_brute(h, g)) {
          d << "quotient sum differs from brute force";
          return false;
        }
      }
    }
    d << "4 pattern graphs x 6 targets";
    return true;
  });

  suite.run("hom_dominates_lambda_power", [&](std::ostringstream& d) {
    for (int k = 0; k < 25; ++k) {
      Graph g = sample_er(12, 0.3, sub_seed(seed, 1700 + k));
      double lam = spectral_radius(g);
      for (int t : {2, 3}) {
        if (std::pow(lam, 2.0 * t) > hom_cycle(g, t).get_d() * (1.0 + kSlack) + kSlack) {
          d << "lambda^(2t) exceeded the cycle count";
          return false;
        }
      }
    }
    d << "25 graphs, t in {2,3}";
    return true;
  });

  suite.run("hom_closed_bounds_dominate", [&](std::ostringstream& d) {
    for (int k = 0; k < 12; ++k) {
      Graph g = sample_er(8, 0.45, sub_seed(seed, 1800 + k));
      // path bound vs exact path homomorphism counts
      for (int ell = -1; ell <= 4; ++ell) {
        double exact;
        if (ell == -1) {
          exact = 1.0;
        } else if (ell == 0) {
          exact = static_cast<double>(g.nonisolated_count());
        } else {
          exact = hom_brute(path_graph(ell + 1), g).get_d();
        }
        if (exact > path_hom_bound(g, ell) * (1.0 + 1e-12)) {
          d << "path bound failed at ell=" << ell;
          return false;
        }
      }
      // per-edge and excess bounds with H = C_4 and C_6
      for (int t : {2, 3}) {
        for (const Edge& e : g.edges) {
          double bound = local_hom_bound(g, e, 2, 2 * t, 2 * t);
          if (hom_cycle_edge(g, t, e).get_d() > bound * (1.0 + 1e-12)) {
            d << "local bound failed at t=" << t;
            return false;
          }
        }
        if (g.edge_count() > 0) {
          std::vector<Edge> half(g.edges.begin(),
                                 g.edges.begin() + static_cast<long>(g.edges.size() / 2));
          for (const Graph& sub : {Graph(g.n, half), g}) {
            HomCount exact_sum = 0;
            for (const Edge& e : sub.edges) exact_sum += hom_cycle_edge(g, t, e);
            if (exact_sum.get_d() >
                excess_hom_bound(g, sub, 2, 2 * t, 2 * t) * (1.0 + 1e-12)) {
              d << "excess bound failed at t=" << t;
              return false;
            }
          }
        }
      }
    }
    // bipartite bound on bipartite fixtures
    for (int k = 0; k < 8; ++k) {
      Graph g = random_bipartite(5, 6, 0.4, sub_seed(seed, 1900 + k));
      auto sides = bipartition(g);
      if (!sides || g.edge_count() == 0) continue;
      for (int t : {2, 3}) {
        double e_count = g.edge_count();
        double alpha =
            (e_count - static_cast<double>(sides->first.size()) + 1e-9) / e_count;
        double bound = bipartite_hom_bound(g, sides->first, sides->second, t, alpha);
        if (hom_cycle(g, t).get_d() > bound * (1.0 + 1e-12)) {
          d << "bipartite bound failed at t=" << t;
          return false;
        }
      }
    }
    d << "path/local/excess/bipartite bounds on random fixtures";
    return true;
  });

  // ---- decomposition ----

  suite.run("decompose_partitions_edges_and_vertices", [&](std::ostringstream& d) {
    for (int k = 0; k < 10; ++k) {
      RegimeParams params;
      params.n = 24;
      params.p = 0.18;
      Graph g = sample_er(params.n, params.p, sub_seed(seed, 2000 + k));
      Decomposition dec = decompose(g, params);

      std::vector<int> cls(g.n, -1);
      auto mark = [&](const std::vector<int>& vs, int label) {
        for (int v : vs) {
          if (cls[v] != -1) return false;
          cls[v] = label;
        }
        return true;
      };
      if (!mark(dec.v_high, 0) || !mark(dec.v_mid, 1) || !mark(dec.v_low1, 2) ||
          !mark(dec.v_low2, 3)) {
        d << "vertex classes overlap";
        return false;
      }
      for (int v = 0; v < g.n; ++v) {
        if ((g.degree(v) > 0) != (cls[v] != -1)) {
          d << "classes do not cover exactly the non-isolated vertices";
          return false;
        }
      }

      const Graph* parts[] = {&dec.g_h, &dec.g_m,    &dec.g_l1,   &dec.g_l2,
                              &dec.g_hm, &dec.g_ml, &dec.g_l1l2, &dec.g_hl1};
      std::map<Edge, int> seen;
      long long total = 0;
      for (const Graph* part : parts) {
        for (const Edge& e : part->edges) ++seen[e];
        total += part->edge_count();
      }
      if (total != g.edge_count() || static_cast<long long>(seen.size()) != g.edge_count()) {
        d << "edges are not partitioned by the eight subgraphs";
        return false;
      }
      for (const auto& [e, cnt] : seen) {
        if (cnt != 1 || !g.has_edge(e.first, e.second)) {
          d << "edge appears " << cnt << " times across subgraphs";
          return false;
        }
      }

      for (const Graph* f : {&dec.forest_l1l2, &dec.forest_l1, &dec.forest_hl1}) {
        if (!is_forest(*f)) {
          d << "a residual forest has a cycle";
          return false;
        }
      }
      std::vector<char> in_high(g.n, 0);
      for (int v : dec.v_high) in_high[v] = 1;
      for (const Edge& e : dec.star_hl1.edges) {
        int low = in_high[e.first] ? e.second : e.first;
        int high = in_high[e.first] ? e.first : e.second;
        if (!in_high[high] || dec.star_hl1.degree(low) != 1) {
          d << "star split has a non-star component";
          return false;
        }
      }
      long long split_total = dec.star_hl1.edge_count() + dec.residual_hl1.edge_count();
      if (split_total != dec.forest_hl1.edge_count()) {
        d << "star split loses forest edges";
        return false;
      }
    }
    d << "10 random graphs at n=24";
    return true;
  });

  suite.run("prune_core_contract", [&](std::ostringstream& d) {
    for (int k = 0; k < 8; ++k) {
      Graph g = sample_er(12, 0.3, sub_seed(seed, 2100 + k));
      double theta = 50.0;
      int t = 2;
      PruneResult res = prune_core(g, t, theta);
      for (const Edge& e : res.graph.edges) {
        HomCount local = hom_cycle_edge(res.graph, t, e);
        if (mpz_cmp_d(local.get_mpz_t(), theta) < 0) {
          d << "surviving edge below theta";
          return false;
        }
      }
      HomCount drop = hom_cycle(g, t) - hom_cycle(res.graph, t);
      if (mpz_cmp_d(drop.get_mpz_t(), theta * res.removed) > 0) {
        d << "count dropped by more than theta per removed edge";
        return false;
      }
      PruneResult again = prune_core(res.graph, t, theta);
      if (again.removed != 0 || !(again.graph == res.graph)) {
        d << "prune_core is not idempotent";
        return false;
      }
    }
    d << "8 random graphs, theta=50";
    return true;
  });

  suite.run("classify_monotone_in_delta_hat", [&](std::ostringstream& d) {
    ClassifyThresholds fixed;
    fixed.cbar = 1.0;
    fixed.cstar = 8.0;
    const double dh[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    for (int k = 0; k < 8; ++k) {
      RegimeParams params;
      params.n = 14;
      params.p = 0.35;
      Graph g = sample_er(params.n, params.p, sub_seed(seed, 2200 + k));
      for (int i = 0; i + 1 < 5; ++i) {
        params.delta_hat = dh[i];
        CoreReport lo = classify(g, params, fixed);
        params.delta_hat = dh[i + 1];
        CoreReport hi = classify(g, params, fixed);
        bool monotone = (!hi.is_preseed_surrogate || lo.is_preseed_surrogate) &&
                        (!hi.is_seed || lo.is_seed) && (!hi.is_core || lo.is_core) &&
                        (!hi.is_strong_core || lo.is_strong_core);
        if (!monotone) {
          d << "raising delta_hat turned a flag from false to true";
          return false;
        }
      }
    }
    d << "8 graphs x 5 delta_hat levels at fixed budget constants";
    return true;
  });

  suite.run("gamma_prune_step_degree_guarantee", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 20;
    params.p = 0.25;
    for (int k = 0; k < 8; ++k) {
      Graph g = sample_er(params.n, params.p, sub_seed(seed, 2300 + k));
      for (double gs : {0.2, 0.8, 1.4, 3.0}) {
        Graph pruned = gamma_prune_step(g, gs, params);
        if (!is_subgraph(pruned, g)) {
          d << "pruned graph is not a subgraph";
          return false;
        }
        DegreeStats s = degree_stats(pruned);
        if (pruned.edge_count() > 0 && s.min_degree_nonisolated < 2) {
          d << "pruned graph has degree-1 vertices";
          return false;
        }
      }
    }
    d << "8 graphs x 4 gamma levels";
    return true;
  });

  // ---- rates ----

  suite.run("binomial_sandwich_grid", [&](std::ostringstream& d) {
    const long long ns[] = {10, 20, 50, 100, 200};
    const double ss[] = {0.05, 0.1, 0.2, 0.3, 0.5};
    int tested = 0;
    for (long long n_trials : ns) {
      for (double s : ss) {
        for (long long k = static_cast<long long>(std::floor(n_trials * s)) + 1;
             k <= n_trials - 1; ++k) {
          double lam = static_cast<double>(k) / static_cast<double>(n_trials);
          if (!(lam > s && lam < 1.0)) continue;
          auto [lower, upper] = binomial_tail_bounds(n_trials, s, lam);
          double exact = exact_binomial_tail(n_trials, s, k);
          if (lower > exact * (1.0 + 1e-9) || exact > upper * (1.0 + 1e-9)) {
            d << "sandwich violated at N=" << n_trials << " s=" << s << " k=" << k;
            return false;
          }
          ++tested;
        }
      }
    }
    d << tested << " integral grid points";
    return true;
  });

  suite.run("chernoff_dominates_grid", [&](std::ostringstream& d) {
    const long long ns[] = {10, 20, 50, 100, 200};
    const double ss[] = {0.05, 0.1, 0.2, 0.3, 0.5};
    int tested = 0;
    for (long long n_trials : ns) {
      for (double s : ss) {
        for (double gamma : {0.25, 0.5, 1.0, 2.0}) {
          if ((1.0 + gamma) * s > 1.0) continue;
          double bound = chernoff_bound(n_trials, s, gamma);
          long long k0 = ceil_snap((1.0 + gamma) * n_trials * s);
          double exact = exact_binomial_tail(n_trials, s, k0);
          if (exact > bound * (1.0 + 1e-9)) {
            d << "Chernoff undercut at N=" << n_trials << " s=" << s << " gamma=" << gamma;
            return false;
          }
          ++tested;
        }
      }
    }
    d << tested << " grid points";
    return true;
  });

  suite.run("rate_intermediate_branch_structure", [&](std::ostringstream& d) {
    for (double delta : {0.5, 1.0}) {
      double scale = (1.0 + delta) * (1.0 + delta);
      double h = 0.002;
      for (double alpha = 0.52; alpha + h < 0.99; alpha += h) {
        double gap = std::abs(rate_intermediate(delta, alpha + h) -
                              rate_intermediate(delta, alpha));
        if (gap > 16.0 * h + 1e-12) {
          d << "rate jump of " << gap << " over step " << h;
          return false;
        }
      }
      if (std::abs(rate_intermediate(delta, 2.0 / 3.0) - 0.5 * scale) > 1e-12) {
        d << "branches disagree at alpha = 2/3";
        return false;
      }
      if (!(rate_intermediate(delta, 0.6) == 0.5 * scale) ||
          !(rate_intermediate(delta, 0.75) < 0.5 * scale)) {
        d << "argmin does not switch across 2/3";
        return false;
      }
    }
    d << "continuity and the 2/3 crossover for two deltas";
    return true;
  });

  suite.run("rate_hom_crossover_increasing", [&](std::ostringstream& d) {
    double prev = 0.0;
    for (int t = 3; t <= 10; ++t) {
      double a_star = hom_crossover_alpha(t);
      if (a_star <= prev) {
        d << "crossover not increasing at t=" << t;
        return false;
      }
      prev = a_star;
      double flat = rate_hom(t, 1.0, a_star - 0.01);
      if (std::abs(flat - 0.5) > 1e-12 || rate_hom(t, 1.0, a_star + 0.01) >= flat) {
        d << "branch switch misplaced at t=" << t;
        return false;
      }
    }
    d << "t = 3..10";
    return true;
  });

  suite.run("cost_crossover_single_sign_change", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 1000;
    params.delta = 0.5;
    int changes = 0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double step = (0.05 - 0.002) / 49.0;
    double prev_diff = 0.0;
    for (int i = 0; i < 50; ++i) {
      params.p = 0.002 + i * step;
      double diff = clique_cost(params) - hub_cost(params);
      if (i > 0 && (diff > 0) != (prev_diff > 0)) {
        ++changes;
        bracket_lo = params.p - step;
        bracket_hi = params.p;
      }
      prev_diff = diff;
    }
    if (changes != 1) {
      d << changes << " sign changes on the 50-point grid";
      return false;
    }
    double crossing = 0.01;  // n^(-2/3) at n=1000
    double dist = std::min(std::abs(bracket_lo - crossing), std::abs(bracket_hi - crossing));
    if (dist > step * 1.0000001) {
      d << "sign change " << dist << " away from n^(-2/3)";
      return false;
    }
    d << "one change, within one grid step of p=0.01";
    return true;
  });

  suite.run("mean_field_cost_zero_iff_flat", [&](std::ostringstream& d) {
    double p = 0.05;
    std::vector<double> xi(10, p);
    if (mean_field_cost(xi, p) > 1e-12) {
      d << "flat profile has positive cost";
      return false;
    }
    xi[3] = p + 0.1;
    if (mean_field_cost(xi, p) <= 1e-12) {
      d << "perturbed profile has zero cost";
      return false;
    }
    std::vector<double> clique_profile(10, 1.0);
    for (int i = 0; i < 20; ++i) clique_profile.push_back(p);
    double cost = mean_field_cost(clique_profile, p);
    double expect = 10.0 * std::log(1.0 / p);
    if (std::abs(cost - expect) > 1e-12 * expect) {
      d << "clique profile cost differs from e(G) log(1/p)";
      return false;
    }
    d << "flat, perturbed and clique profiles";
    return true;
  });

  suite.run("rate_report_consistency", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 1000;
    params.delta = 0.5;
    // the grid stays inside alpha = log(1/p)/log n in (1/2, 1) at n = 1000
    for (double p : {0.002, 0.005, 0.01, 0.02, 0.03}) {
      params.p = p;
      RateReport r = rate_report(params);
      if (std::abs(r.raw_log_cost - r.rate * r.speed) >
          1e-12 * std::abs(r.raw_log_cost)) {
        d << "raw_log_cost drifted from rate*speed";
        return false;
      }
      double c = clique_cost(params), h = hub_cost(params);
      bool tie = std::abs(c - h) <= 1e-9 * std::max(c, h);
      Structure expect = tie ? Structure::tie : (c < h ? Structure::clique : Structure::hub);
      if (r.dominant_structure != expect) {
        d << "dominant structure inconsistent with the cost comparison at p=" << p;
        return false;
      }
      std::string expect_regime = alpha_of(params) >= 2.0 / 3.0 ? "sparse" : "intermediate";
      if (r.regime != expect_regime) {
        d << "regime tag wrong at p=" << p;
        return false;
      }
    }
    RegimeParams hp;
    hp.n = 1000000;
    hp.p = 1e-4;
    hp.t = 3;
    hp.delta_hat = 1.0;
    RateReport hr = hom_rate_report(hp);
    if (std::abs(hr.raw_log_cost - phi_t(hp)) > 1e-9 * phi_t(hp)) {
      d << "hom report cost differs from the phi formula";
      return false;
    }
    d << "spectral grid plus the hom report";
    return true;
  });

  // ---- monte carlo ----

  suite.run("estimate_tail_matches_exhaustive", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 4;
    params.p = 0.5;
    params.t = 2;
    constexpr double kZ99 = 2.5758293035489004;
    struct Case {
      Statistic stat;
      double threshold;
    } cases[] = {{Statistic::spectral_radius, 2.0},
                 {Statistic::hom_cycle, 18.0},
                 {Statistic::max_degree, 2.0}};
    int idx = 0;
    for (const Case& c : cases) {
      double exact = exhaustive_tail(params, c.stat, c.threshold).get_d();
      TailEstimate est = estimate_tail(params, c.stat, c.threshold, 20000,
                                       sub_seed(seed, 2400 + idx), 2);
      if (est.p_hat != static_cast<double>(est.hits) / est.samples ||
          est.wilson_lo > est.p_hat || est.p_hat > est.wilson_hi) {
        d << "estimate internals inconsistent";
        return false;
      }
      auto [lo99, hi99] = wilson_interval(est.hits, est.samples, kZ99);
      if (exact < lo99 || exact > hi99) {
        d << "exact " << exact << " outside the 99% interval [" << lo99 << ", " << hi99
          << "]";
        return false;
      }
      ++idx;
    }
    d << "3 statistics at n=4, p=1/2";
    return true;
  });

  suite.run("tilted_estimator_unbiased", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 4;
    params.p = 0.5;
    params.t = 2;
    std::uint64_t m = 20000;
    TailEstimate crude =
        estimate_tail(params, Statistic::spectral_radius, 2.0, m, sub_seed(seed, 2500), 2);
    double tau = 0.05;
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      TiltedSample ts = tilted_sample(params, tau, sub_seed(sub_seed(seed, 2501), i));
      double w = event_holds(ts.graph, params, Statistic::spectral_radius, 2.0)
                     ? std::exp(ts.log_lr)
                     : 0.0;
      sum += w;
      sum_sq += w * w;
    }
    double mean_t = sum / m;
    double var_t = (sum_sq / m - mean_t * mean_t) / m;
    double var_c = crude.p_hat * (1.0 - crude.p_hat) / m;
    double gap = std::abs(crude.p_hat - mean_t);
    double limit = 3.0 * std::sqrt(var_t + var_c);
    if (gap > limit) {
      d << "reweighted estimate off by " << gap << " > " << limit;
      return false;
    }
    d << "crude vs tilted gap " << gap << " within 3 sigma";
    return true;
  });

  suite.run("conditional_trivial_event_matches_unconditional", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 10;
    params.p = 0.3;
    std::uint64_t m = 4000;
    ConditionalHistogram cond = conditional_max_degree(
        params, Statistic::max_degree, -std::numeric_limits<double>::infinity(), m,
        sub_seed(seed, 2600), 2);
    if (cond.accepted != m) {
      d << "trivially-true event rejected a sample";
      return false;
    }
    std::map<int, std::uint64_t> direct;
    for (std::uint64_t i = 0; i < m; ++i) {
      Graph g = sample_er(params.n, params.p, sub_seed(sub_seed(seed, 2601), i));
      ++direct[g.max_degree()];
    }
    int df = 0;
    double x2 = chi_square_two_sample(cond.histogram, direct, df);
    if (df < 1 || df > 20) {
      d << "degenerate binning, df=" << df;
      return false;
    }
    if (x2 > kChi2Q99[df - 1]) {
      d << "chi-square " << x2 << " above the 1% critical value for df=" << df;
      return false;
    }
    d << "chi-square " << x2 << " at df=" << df;
    return true;
  });

  suite.run("planted_check_guarantees", [&](std::ostringstream& d) {
    RegimeParams params;
    params.delta = 0.5;
    const int ns[] = {50, 200, 1000, 10000};
    const double ps[] = {0.002, 0.01, 0.05, 0.1};
    for (int n : ns) {
      for (double p : ps) {
        params.n = n;
        params.p = p;
        double np = n * p;
        // clique
        bool expect_throw = ceil_snap(1.5 * np) + 1 > n;
        bool threw = false, value = false;
        try {
          value = planted_check(params, Structure::clique);
        } catch (const std::invalid_argument&) {
          threw = true;
        }
        if (threw != expect_throw || (!threw && !value)) {
          d << "clique check wrong at n=" << n << " p=" << p;
          return false;
        }
        // hub: infeasible exactly when the target degree exceeds n-1
        expect_throw = ceil_snap(2.25 * np * np) > n - 1;
        threw = false;
        value = false;
        try {
          value = planted_check(params, Structure::hub);
        } catch (const std::invalid_argument&) {
          threw = true;
        }
        if (threw != expect_throw || (!threw && !value)) {
          d << "hub check wrong at n=" << n << " p=" << p;
          return false;
        }
      }
    }
    d << "16 grid points, deterministic";
    return true;
  });

  suite.run("worker_count_invariance", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 12;
    params.p = 0.3;
    params.t = 2;
    TailEstimate a =
        estimate_tail(params, Statistic::spectral_radius, 4.0, 5000, sub_seed(seed, 2700), 1);
    TailEstimate b =
        estimate_tail(params, Statistic::spectral_radius, 4.0, 5000, sub_seed(seed, 2700), 3);
    if (a.hits != b.hits) {
      d << "hit counts differ across worker counts";
      return false;
    }
    auto [m1, s1] = empirical_expected_hom(params, 2000, sub_seed(seed, 2701), 1);
    auto [m4, s4] = empirical_expected_hom(params, 2000, sub_seed(seed, 2701), 4);
    if (m1 != m4 || s1 != s4) {
      d << "mean/stderr differ across worker counts";
      return false;
    }
    d << "1 vs 3 workers and 1 vs 4 workers bitwise equal";
    return true;
  });

  suite.run("serialization_deterministic", [&](std::ostringstream& d) {
    RegimeParams params;
    params.n = 4;
    params.p = 0.5;
    TailEstimate est =
        estimate_tail(params, Statistic::spectral_radius, 2.0, 2000, sub_seed(seed, 2800), 2);
    nlohmann::json j1 = est, j2 = est;
    RegimeParams rp;
    rp.n = 1000;
    rp.p = 0.02;
    nlohmann::json r1 = rate_report(rp), r2 = rate_report(rp);
    if (j1.dump() != j2.dump() || r1.dump() != r2.dump()) {
      d << "repeated serialization differs";
      return false;
    }
    d << "tail estimate and rate report dumps are stable";
    return true;
  });

  return results;
}

}  // namespace ertail
