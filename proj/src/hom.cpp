#include "ertail/hom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "ertail/spectral.hpp"

namespace ertail {

namespace {

// Closed 2t-walk total with 64-bit accumulators; false on any overflow.
bool walk_total_u64(const Graph& g, int t, unsigned long long& out) {
  unsigned long long total = 0;
  std::vector<unsigned long long> w(g.n), nw(g.n);
  for (int v = 0; v < g.n; ++v) {
    std::fill(w.begin(), w.end(), 0ULL);
    w[v] = 1;
    for (int step = 0; step < t; ++step) {
      std::fill(nw.begin(), nw.end(), 0ULL);
      for (int u = 0; u < g.n; ++u) {
        if (w[u] == 0) continue;
        for (int x : g.adj[u]) {
          if (__builtin_add_overflow(nw[x], w[u], &nw[x])) return false;
        }
      }
      w.swap(nw);
    }
    for (int u = 0; u < g.n; ++u) {
      unsigned long long sq;
      if (__builtin_mul_overflow(w[u], w[u], &sq)) return false;
      if (__builtin_add_overflow(total, sq, &total)) return false;
    }
  }
  out = total;
  return true;
}

HomCount walk_total_mpz(const Graph& g, int t) {
  HomCount total = 0;
  std::vector<HomCount> w(g.n), nw(g.n);
  for (int v = 0; v < g.n; ++v) {
    for (auto& x : w) x = 0;
    w[v] = 1;
    for (int step = 0; step < t; ++step) {
      for (auto& x : nw) x = 0;
      for (int u = 0; u < g.n; ++u) {
        if (w[u] == 0) continue;
        for (int x : g.adj[u]) nw[x] += w[u];
      }
      w.swap(nw);
    }
    for (int u = 0; u < g.n; ++u) total += w[u] * w[u];
  }
  return total;
}

void brute_rec(const Graph& h, const Graph& g, int i, std::vector<int>& img,
               std::vector<char>* used, HomCount& acc) {
  if (i == h.n) {
    acc += 1;
    return;
  }
  for (int c = 0; c < g.n; ++c) {
    if (used && (*used)[c]) continue;
    bool ok = true;
    for (int j : h.adj[i]) {
      if (j < i && !g.has_edge(img[j], c)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    img[i] = c;
    if (used) (*used)[c] = 1;
    brute_rec(h, g, i + 1, img, used, acc);
    if (used) (*used)[c] = 0;
  }
}

void check_map_budget(const Graph& h, const Graph& g) {
  double budget = std::pow(static_cast<double>(g.n), static_cast<double>(h.n));
  if (!(budget <= 1e8)) {
    throw std::runtime_error("hom enumeration budget exceeded: |V(g)|^|V(h)| > 1e8");
  }
}

HomCount count_maps(const Graph& h, const Graph& g, bool injective) {
  check_map_budget(h, g);
  HomCount acc = 0;
  std::vector<int> img(h.n, -1);
  std::vector<char> used(g.n, 0);
  brute_rec(h, g, 0, img, injective ? &used : nullptr, acc);
  return acc;
}

// Quotient of h by a restricted-growth-string partition; loops dropped,
// flagged instead.
std::pair<Graph, bool> quotient_of(const Graph& h, const std::vector<int>& rgs) {
  int parts = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
  bool loop = false;
  std::set<Edge> edges;
  for (const Edge& e : h.edges) {
    int a = rgs[e.first];
    int b = rgs[e.second];
    if (a == b) {
      loop = true;
    } else {
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return {Graph(parts, std::vector<Edge>(edges.begin(), edges.end())), loop};
}

// All restricted growth strings of length m in lexicographic order.
template <typename Fn>
void for_each_rgs(int m, Fn&& fn) {
  std::vector<int> a(m, 0);
  auto rec = [&](auto&& self, int i, int mx) -> void {
    if (i == m) {
      fn(a);
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(mx, v));
    }
  };
  if (m == 0) {
    fn(a);
  } else {
    a[0] = 0;
    rec(rec, 1, 0);
  }
}

}  // namespace

HomCount hom_cycle(const Graph& g, int t) {
  if (t < 1) throw std::invalid_argument("hom_cycle: t must be >= 1");
  if (g.n == 0) return 0;
  unsigned long long total = 0;
  if (walk_total_u64(g, t, total))
    return HomCount(static_cast<unsigned long>(total));  // gmpxx lacks a long long ctor
  return walk_total_mpz(g, t);
}

HomCount hom_cycle_edge(const Graph& g, int t, Edge e) {
  return hom_cycle(g, t) - hom_cycle(remove_edge(g, e), t);
}

HomCount hom_brute(const Graph& h, const Graph& g) { return count_maps(h, g, false); }

HomCount labeled_copies(const Graph& h, const Graph& g) { return count_maps(h, g, true); }

HomCount hom_via_quotients(const Graph& h, const Graph& g) {
  HomCount acc = 0;
  for_each_rgs(h.n, [&](const std::vector<int>& rgs) {
    auto [q, loop] = quotient_of(h, rgs);
    if (!loop) acc += labeled_copies(q, g);
  });
  return acc;
}

void for_each_quotient(int t, const std::function<void(const QuotientGraph&)>& fn) {
  if (t < 2 || t > 6) throw std::invalid_argument("for_each_quotient: t must be in [2, 6]");
  Graph cycle = cycle_graph(2 * t);
  for_each_rgs(2 * t, [&](const std::vector<int>& rgs) {
    auto [q, loop] = quotient_of(cycle, rgs);
    QuotientGraph item{rgs, std::move(q), loop};
    fn(item);
  });
}

std::vector<QuotientGraph> enumerate_quotients(int t) {
  std::vector<QuotientGraph> out;
  for_each_quotient(t, [&](const QuotientGraph& q) { out.push_back(q); });
  return out;
}

std::vector<QuotientGraph> enumerate_simple_quotients(int t) {
  std::vector<QuotientGraph> out;
  for_each_quotient(t, [&](const QuotientGraph& q) {
    if (!q.has_loop) out.push_back(q);
  });
  return out;
}

int tree_quotient_count(int t) {
  if (t < 2 || t > 6) throw std::invalid_argument("tree_quotient_count: t must be in [2, 6]");
  int count = 0;
  // Stream rather than collect: trees are a sliver of the full partition list.
  for_each_quotient(t, [&](const QuotientGraph& q) {
    if (!q.has_loop && q.graph.n == t + 1 && q.graph.edge_count() == t) ++count;
  });
  return count;
}

HomCount catalan(int t) {
  if (t < 0) throw std::invalid_argument("catalan: t must be >= 0");
  HomCount r;
  mpz_bin_uiui(r.get_mpz_t(), 2 * t, t);
  r /= (t + 1);
  return r;
}

double expected_hom(const RegimeParams& params) {
  double np = params.n * params.p;
  double main_term = std::pow(np, 2.0 * params.t);
  double tree_term = catalan(params.t).get_d() *
                     std::pow(static_cast<double>(params.n), params.t + 1.0) *
                     std::pow(params.p, static_cast<double>(params.t));
  return main_term + tree_term;
}

double path_hom_bound(const Graph& g, int ell) {
  if (ell < -1) throw std::invalid_argument("path_hom_bound: ell must be >= -1");
  int exponent = (ell + 2) / 2;  // ceil((ell+1)/2) for ell >= -1
  return std::pow(2.0 * g.edge_count(), static_cast<double>(exponent));
}

double bipartite_hom_bound(const Graph& g, const std::vector<int>& u1,
                           const std::vector<int>& u2, int t, double alpha) {
  if (t < 1) throw std::invalid_argument("bipartite_hom_bound: t must be >= 1");
  std::vector<char> side(g.n, 0);
  for (int v : u1) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("bipartite_hom_bound: vertex out of range");
    side[v] = 1;
  }
  for (int v : u2) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("bipartite_hom_bound: vertex out of range");
    if (side[v] != 0) throw std::invalid_argument("bipartite_hom_bound: sides are not disjoint");
    side[v] = 2;
  }
  for (const Edge& e : g.edges) {
    if (side[e.first] + side[e.second] != 3) {
      throw std::invalid_argument("bipartite_hom_bound: (U1, U2) is not a bipartition of g");
    }
  }
  double e_count = static_cast<double>(g.edge_count());
  if (e_count - static_cast<double>(u1.size()) > alpha * e_count) {
    throw std::invalid_argument("bipartite_hom_bound: e(g) - |U1| exceeds alpha * e(g)");
  }
  double tail = 0.0;
  for (int w : u2) tail += std::pow(static_cast<double>(g.degree(w)), static_cast<double>(t));
  return 2.0 * alpha * t * std::pow(e_count, static_cast<double>(t)) + 2.0 * tail;
}

double local_hom_bound(const Graph& g, Edge e, int h_degree, int vh, int eh) {
  if (h_degree < 2) throw std::invalid_argument("local_hom_bound: H degree must be >= 2");
  if (!g.has_edge(e.first, e.second)) {
    throw std::invalid_argument("local_hom_bound: e is not an edge of g");
  }
  double d = h_degree;
  double two_e = 2.0 * g.edge_count();
  double prod = 4.0 * g.degree(e.first) * g.degree(e.second);
  return 4.0 * eh * std::pow(two_e, vh / 2.0 - (2.0 * d - 1.0) / d) *
         std::pow(prod, (d - 1.0) / d);
}

double excess_hom_bound(const Graph& g, const Graph& g_sub, int h_degree, int vh, int eh) {
  if (h_degree < 2) throw std::invalid_argument("excess_hom_bound: H degree must be >= 2");
  if (!is_subgraph(g_sub, g)) {
    throw std::invalid_argument("excess_hom_bound: g_sub is not a subgraph of g");
  }
  if (g.edge_count() == 0) throw std::invalid_argument("excess_hom_bound: g has no edges");
  double e_g = static_cast<double>(g.edge_count());
  double e_sub = static_cast<double>(g_sub.edge_count());
  return eh * std::pow(2.0 * e_g, vh / 2.0) * std::pow(e_sub / e_g, 1.0 / h_degree);
}

Graph cycle_graph(int k) {
  if (k < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, k - 1});
  return Graph(k, edges);
}

}  // namespace ertail
