#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>
#include <gmpxx.h>

#include "ertail/decompose.hpp"
#include "ertail/graph.hpp"
#include "ertail/hom.hpp"
#include "ertail/params.hpp"
#include "ertail/spectral.hpp"
#include "oracles.hpp"

using namespace ertail;

namespace {

// One vertex per degree class: 0 is the only high vertex, 1 the only mid
// vertex, 0's neighbours land in low1, everything else in low2, 12 isolated.
Graph class_fixture() {
  return Graph(13, {{0, 2}, {0, 4}, {0, 5}, {0, 6}, {1, 3}, {1, 7}, {1, 8},
                    {2, 3}, {4, 5}, {7, 8}, {9, 10}, {10, 11}});
}

RegimeParams fixture_params() {
  RegimeParams params{.n = 1000000, .p = 1.724e-6};
  return params;  // np = 1.724, varpi = 3.95, low cap = 2.50
}

void check_edge_partition(const Graph& g, const Decomposition& d) {
  std::map<Edge, int> count;
  for (const Graph* part : {&d.g_h, &d.g_m, &d.g_l1, &d.g_l2, &d.g_hm, &d.g_ml,
                            &d.g_l1l2, &d.g_hl1}) {
    for (const Edge& e : part->edges) ++count[e];
  }
  CHECK(count.size() == g.edges.size());
  for (const auto& [e, c] : count) {
    CHECK(c == 1);
    CHECK(g.has_edge(e.first, e.second));
  }
}

}  // namespace

TEST_CASE("decompose sorts the hand fixture into the documented classes") {
  Graph g = class_fixture();
  RegimeParams params = fixture_params();
  Decomposition d = decompose(g, params);

  double np = params.n * params.p;
  double expect_varpi = np * std::sqrt(std::log(1e6) / std::log(std::log(1e6)));
  CHECK(d.varpi == doctest::Approx(expect_varpi).epsilon(1e-12));
  CHECK(d.low_cap == doctest::Approx(1.45 * np).epsilon(1e-12));

  CHECK(d.v_high == std::vector<int>{0});
  CHECK(d.v_mid == std::vector<int>{1});
  CHECK(d.v_low1 == std::vector<int>{2, 4, 5, 6});
  CHECK(d.v_low2 == std::vector<int>{3, 7, 8, 9, 10, 11});

  CHECK(d.g_h.edge_count() == 0);
  CHECK(d.g_m.edge_count() == 0);
  CHECK(d.g_hm.edge_count() == 0);
  CHECK(d.g_hl1.edges == std::vector<Edge>{{0, 2}, {0, 4}, {0, 5}, {0, 6}});
  CHECK(d.g_ml.edges == std::vector<Edge>{{1, 3}, {1, 7}, {1, 8}});
  CHECK(d.g_l1.edges == std::vector<Edge>{{4, 5}});
  CHECK(d.g_l2.edges == std::vector<Edge>{{7, 8}, {9, 10}, {10, 11}});
  CHECK(d.g_l1l2.edges == std::vector<Edge>{{2, 3}});

  // All three low subgraphs are forests here, so the two-cores are empty.
  CHECK(d.core_l1l2.edge_count() == 0);
  CHECK(d.core_l1.edge_count() == 0);
  CHECK(d.core_hl1.edge_count() == 0);
  CHECK(d.forest_l1l2.edges == d.g_l1l2.edges);
  CHECK(d.forest_l1.edges == d.g_l1.edges);
  CHECK(d.forest_hl1.edges == d.g_hl1.edges);

  // Every low1 endpoint has degree 1 in the cross forest: all edges are stars.
  CHECK(d.star_hl1.edges == d.g_hl1.edges);
  CHECK(d.residual_hl1.edge_count() == 0);

  check_edge_partition(g, d);
}

TEST_CASE("decompose partitions vertices and edges on seeded graphs") {
  for (int trial = 0; trial < 6; ++trial) {
    Graph g = sample_er(40, 0.12 + 0.05 * trial, 5200 + trial);
    RegimeParams params{.n = 1000000, .p = 5e-6};
    Decomposition d = decompose(g, params);

    std::set<int> seen;
    std::size_t classified = 0;
    for (const std::vector<int>* cls : {&d.v_high, &d.v_mid, &d.v_low1, &d.v_low2}) {
      for (int v : *cls) CHECK(seen.insert(v).second);
      classified += cls->size();
    }
    CHECK(classified == static_cast<std::size_t>(g.nonisolated_count()));

    check_edge_partition(g, d);

    for (const auto& [core, forest, whole] :
         {std::tuple{&d.core_l1l2, &d.forest_l1l2, &d.g_l1l2},
          std::tuple{&d.core_l1, &d.forest_l1, &d.g_l1},
          std::tuple{&d.core_hl1, &d.forest_hl1, &d.g_hl1}}) {
      CHECK(core->edge_count() + forest->edge_count() == whole->edge_count());
      CHECK(is_forest(*forest));
      for (const Edge& e : core->edges) CHECK(whole->has_edge(e.first, e.second));
    }
    CHECK(d.star_hl1.edge_count() + d.residual_hl1.edge_count() ==
          d.forest_hl1.edge_count());
  }
}

TEST_CASE("decompose rejects parameters outside the regime") {
  Graph g = oracle::complete(4);
  CHECK_THROWS_AS(decompose(g, RegimeParams{.n = 1000, .p = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(decompose(g, RegimeParams{.n = 2, .p = 0.5}), std::invalid_argument);
}

TEST_CASE("star_forest_split") {
  // Path whose single low1 vertex has degree 2: nothing qualifies as a star.
  Graph path(3, {{0, 1}, {1, 2}});
  auto [star0, residual0] = star_forest_split(path, {0, 2}, {1});
  CHECK(star0.edge_count() == 0);
  CHECK(residual0.edges == path.edges);

  // Star with degree-1 leaves: everything is a star edge.
  Graph star(4, {{0, 1}, {0, 3}});
  auto [star1, residual1] = star_forest_split(star, {0}, {1, 3});
  CHECK(star1.edges == star.edges);
  CHECK(residual1.edge_count() == 0);

  // Mixed: leaf 2 keeps its star edge, the degree-2 vertex 1 does not.
  Graph mixed(4, {{0, 1}, {0, 2}, {1, 3}});
  auto [star2, residual2] = star_forest_split(mixed, {0, 3}, {1, 2});
  CHECK(star2.edges == std::vector<Edge>{{0, 2}});
  CHECK(residual2.edges == std::vector<Edge>{{0, 1}, {1, 3}});

  CHECK_THROWS_AS(star_forest_split(oracle::complete(3), {0}, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(star_forest_split(path, {0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(star_forest_split(Graph(2, {{0, 1}}), {0, 1}, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(star_forest_split(Graph(3, {{0, 1}}), {0, 9}, {1}),
                  std::invalid_argument);
}

TEST_CASE("high_low_split splits on the degree product") {
  RegimeParams params{.n = 30, .p = 0.2};  // n^2 p^2 = 36
  Graph g = sample_er(30, 0.2, 888);
  for (double c0 : {0.5, 1.0, 2.0}) {
    auto [high, low] = high_low_split(g, c0, params);
    CHECK(high.edge_count() + low.edge_count() == g.edge_count());
    double cut = c0 * 36.0;
    for (const Edge& e : high.edges) {
      CHECK(static_cast<double>(g.degree(e.first)) * g.degree(e.second) >= cut);
      CHECK(g.has_edge(e.first, e.second));
    }
    for (const Edge& e : low.edges) {
      CHECK(static_cast<double>(g.degree(e.first)) * g.degree(e.second) < cut);
      CHECK(g.has_edge(e.first, e.second));
    }
  }
  auto [all_high, none_low] = high_low_split(g, 0.0, params);
  CHECK(all_high.edges == g.edges);
  CHECK(none_low.edge_count() == 0);
}

TEST_CASE("gamma_prune_step keeps heavy vertices then takes the two-core") {
  // K_6 on 0..5 with one pendant hanging off each of 0..3.
  std::vector<Edge> es;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) es.push_back({u, v});
  es.insert(es.end(), {{0, 6}, {1, 7}, {2, 8}, {3, 9}});
  Graph g(10, es);
  RegimeParams params{.n = 10, .p = 0.4};  // np = 4

  Graph full = gamma_prune_step(g, 1.0, params);  // degree cut 4: keeps 0..5
  CHECK(full.edges == oracle::complete(6).edges);

  Graph quad = gamma_prune_step(g, 1.3, params);  // degree cut 5.2: keeps 0..3
  CHECK(quad.edges == oracle::complete(4).edges);

  Graph none = gamma_prune_step(g, 10.0, params);
  CHECK(none.edge_count() == 0);

  // The result is always its own two-core.
  for (double gs : {0.2, 0.9, 1.1}) {
    Graph r = gamma_prune_step(sample_er(25, 0.3, 4321), gs, RegimeParams{.n = 25, .p = 0.3});
    CHECK(two_core(r).edges == r.edges);
  }
}

TEST_CASE("prune_core removes cheap edges one at a time") {
  // K_4 plus one far-away edge: the pendant edge carries 2 closed 4-walk
  // pairs, each K_4 edge carries 34.
  std::vector<Edge> es;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) es.push_back({u, v});
  es.push_back({4, 5});
  Graph g(6, es);

  PruneResult low = prune_core(g, 2, 3.0);
  CHECK(low.removed == 1);
  CHECK(low.graph.edges == oracle::complete(4).edges);

  PruneResult all = prune_core(g, 2, 35.0);
  CHECK(all.removed == 7);
  CHECK(all.graph.edge_count() == 0);

  PruneResult keep = prune_core(g, 2, 0.0);
  CHECK(keep.removed == 0);
  CHECK(keep.graph.edges == g.edges);

  PruneResult empty = prune_core(Graph(3, {}), 2, 50.0);
  CHECK(empty.removed == 0);
  CHECK(empty.graph.edge_count() == 0);

  // Contract on a seeded graph: survivors are expensive, the total count
  // drop is bounded by theta * removed, and the result is a fixed point.
  Graph h = sample_er(10, 0.35, 999);
  double theta = 40.0;
  PruneResult r = prune_core(h, 2, theta);
  for (const Edge& e : r.graph.edges) {
    HomCount pe = hom_cycle_edge(r.graph, 2, e);
    CHECK(mpz_cmp_d(pe.get_mpz_t(), theta) >= 0);
  }
  HomCount drop = hom_cycle(h, 2) - hom_cycle(r.graph, 2);
  CHECK(mpz_cmp_d(drop.get_mpz_t(), theta * r.removed) <= 0);
  PruneResult again = prune_core(r.graph, 2, theta);
  CHECK(again.removed == 0);
}

TEST_CASE("classify flags K_5 as seed and core but not strong core") {
  Graph g = oracle::complete(5);
  RegimeParams params{.n = 100, .p = 0.05};  // np = 5
  params.delta_hat = 1e-3;
  params.t = 2;
  CoreReport r = classify(g, params);

  CHECK(r.hom == 260);
  CHECK(r.edge_count == 10);
  CHECK(r.min_edge_hom == 74);

  CHECK_FALSE(r.is_preseed_surrogate);
  CHECK(r.is_seed);
  CHECK(r.is_core);
  CHECK_FALSE(r.is_strong_core);

  double np4 = 625.0;
  CHECK(r.preseed_hom_threshold ==
        doctest::Approx(1.0009 * 5625.0 - np4).epsilon(1e-9));
  CHECK(r.seed_hom_threshold == doctest::Approx(1e-3 * 0.8 * np4).epsilon(1e-12));
  CHECK(r.core_hom_threshold == doctest::Approx(1e-3 * 0.7 * np4).epsilon(1e-12));
  CHECK(r.strong_hom_threshold == doctest::Approx(1e-3 * 0.4 * np4).epsilon(1e-12));
  CHECK(r.edge_budget == doctest::Approx(25.0 * std::log(20.0)).epsilon(1e-12));
  CHECK(r.cbar == 1.0);
  CHECK(r.cstar == doctest::Approx(8.0 * std::sqrt(1e-3)).epsilon(1e-12));
  CHECK(r.strong_edge_budget == doctest::Approx(8.0 * std::sqrt(1e-3) * 25.0).epsilon(1e-12));
  CHECK(r.core_min_edge_threshold ==
        doctest::Approx(1e-3 * 0.1 * np4 / (25.0 * std::log(20.0))).epsilon(1e-12));
  CHECK(r.strong_min_edge_threshold ==
        doctest::Approx((1e-3 * 0.1 / (8.0 * std::sqrt(1e-3))) * 25.0).epsilon(1e-12));

  // A larger strong-core budget flips only the strong verdict.
  ClassifyThresholds wide;
  wide.cstar = 100.0;
  CoreReport r2 = classify(g, params, wide);
  CHECK(r2.is_seed);
  CHECK(r2.is_core);
  CHECK(r2.is_strong_core);
  CHECK(r2.cstar == 100.0);

  // Empty graphs satisfy nothing.
  CoreReport r3 = classify(Graph(5, {}), params);
  CHECK_FALSE(r3.is_preseed_surrogate);
  CHECK_FALSE(r3.is_seed);
  CHECK_FALSE(r3.is_core);
  CHECK_FALSE(r3.is_strong_core);
  CHECK(r3.hom == 0);
  CHECK(r3.min_edge_hom == 0);
}
