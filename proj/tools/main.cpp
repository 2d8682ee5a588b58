#include <clocale>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ertail/decompose.hpp"
#include "ertail/graph.hpp"
#include "ertail/hom.hpp"
#include "ertail/json_io.hpp"
#include "ertail/montecarlo.hpp"
#include "ertail/params.hpp"
#include "ertail/rates.hpp"
#include "ertail/spectral.hpp"
#include "ertail/verify.hpp"

namespace {

using nlohmann::json;
using namespace ertail;

void with_output_stream(const std::string& output,
                        const std::function<void(std::ostream&)>& fn) {
  if (output.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(output);
  if (!f) throw std::runtime_error("cannot open output file: " + output);
  fn(f);
}

void emit(const std::string& output, const std::string& text) {
  with_output_stream(output, [&](std::ostream& os) { os << text; });
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

// Graph source shared by the graph-consuming subcommands: an edge-list file
// when --input is given, otherwise a fresh G(n, p) sample.
Graph load_or_sample(const std::string& input, const ExperimentConfig& cfg) {
  if (!input.empty()) {
    std::ifstream f(input);
    if (!f) throw std::runtime_error("cannot open input file: " + input);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      return parse_edge_list(ss.str());
    } catch (const std::exception& e) {
      throw std::runtime_error("cannot parse " + input + ": " + e.what());
    }
  }
  if (cfg.n < 1) throw ConfigError("n must be >= 1 to sample a graph");
  if (cfg.p < 0.0 || cfg.p > 1.0) throw ConfigError("p must lie in [0, 1]");
  return sample_er(cfg.n, cfg.p, cfg.seed);
}

void run_sample(const ExperimentConfig& cfg) {
  Graph g = load_or_sample("", cfg);
  if (cfg.format == "json") {
    emit(cfg.output, render(json(g)));
  } else {
    emit(cfg.output, format_edge_list(g));
  }
}

void run_spectrum(const ExperimentConfig& cfg, const std::string& input) {
  Graph g = load_or_sample(input, cfg);
  BoundReport r = bound_report(g);
  if (cfg.format == "json") {
    emit(cfg.output, render(json(r)));
    return;
  }
  std::string text = csv_row({"bound", "applicable", "value", "reason"});
  auto row = [&](const std::string& name, double value) {
    text += csv_row({name, "true", csv_double(value), ""});
  };
  auto opt_row = [&](const std::string& name, const std::optional<double>& value) {
    if (value) {
      row(name, *value);
    } else {
      auto it = r.absent.find(name);
      text += csv_row({name, "false", "", it == r.absent.end() ? "" : it->second});
    }
  };
  row("lambda", r.lambda);
  row("max_degree", r.max_degree);
  row("sqrt_max_degree", r.sqrt_max_degree);
  row("degree_bound", r.degree_bound);
  row("sqrt_two_edges", r.sqrt_two_edges);
  opt_row("forest_bound", r.forest_bound);
  opt_row("bipartite_product_bound", r.bipartite_product_bound);
  opt_row("bipartite_neighbor_bound", r.bipartite_neighbor_bound);
  opt_row("excess_edge_bound", r.excess_edge_bound);
  emit(cfg.output, text);
}

void run_hom(const ExperimentConfig& cfg, const std::string& input, bool quotients) {
  if (quotients) {
    // partition table of the cycle C_{2t}; streamed, t = 6 has 4.2M rows
    const char* symbols = "0123456789abcdefghijklmnopqrstuvwxyz";
    with_output_stream(cfg.output, [&](std::ostream& os) {
      bool as_json = cfg.format == "json";
      if (as_json) {
        os << "[\n";
      } else {
        os << "rgs,vertices,edges,has_loop,is_tree\n";
      }
      bool first = true;
      for_each_quotient(cfg.t, [&](const QuotientGraph& q) {
        std::string rgs;
        for (int v : q.partition) rgs += symbols[v];
        bool is_tree = !q.has_loop && q.graph.n == cfg.t + 1 &&
                       q.graph.edge_count() == cfg.t;
        if (as_json) {
          json j{{"rgs", rgs},
                 {"vertices", q.graph.n},
                 {"edges", q.graph.edge_count()},
                 {"has_loop", q.has_loop},
                 {"is_tree", is_tree}};
          os << (first ? "  " : ",\n  ") << j.dump();
          first = false;
        } else {
          os << rgs << ',' << q.graph.n << ',' << q.graph.edge_count() << ','
             << (q.has_loop ? "true" : "false") << ',' << (is_tree ? "true" : "false")
             << '\n';
        }
      });
      if (as_json) os << "\n]\n";
    });
    return;
  }

  Graph g = load_or_sample(input, cfg);
  HomCount total = hom_cycle(g, cfg.t);
  HomCount edge_sum = 0;
  std::vector<std::pair<Edge, HomCount>> per_edge;
  per_edge.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    HomCount c = hom_cycle_edge(g, cfg.t, e);
    edge_sum += c;
    per_edge.push_back({e, c});
  }
  if (cfg.format == "json") {
    json edges_json = json::array();
    for (const auto& [e, c] : per_edge) {
      edges_json.push_back(
          {{"edge", {e.first + 1, e.second + 1}}, {"count", hom_to_string(c)}});
    }
    json j{{"n", g.n},
           {"t", cfg.t},
           {"total", hom_to_string(total)},
           {"edge_sum", hom_to_string(edge_sum)},
           {"per_edge", edges_json}};
    emit(cfg.output, render(j));
    return;
  }
  std::string text = csv_row({"kind", "u", "v", "count"});
  text += csv_row({"total", "", "", hom_to_string(total)});
  text += csv_row({"edge_sum", "", "", hom_to_string(edge_sum)});
  for (const auto& [e, c] : per_edge) {
    text += csv_row({"edge", std::to_string(e.first + 1), std::to_string(e.second + 1),
                     hom_to_string(c)});
  }
  emit(cfg.output, text);
}

void run_decompose(const ExperimentConfig& cfg, const std::string& input) {
  Graph g = load_or_sample(input, cfg);
  Decomposition dec = decompose(g, cfg.params());
  if (cfg.format == "json") {
    emit(cfg.output, render(json(dec)));
    return;
  }
  std::string text = csv_row({"item", "kind", "value"});
  text += csv_row({"varpi", "threshold", csv_double(dec.varpi)});
  text += csv_row({"low_cap", "threshold", csv_double(dec.low_cap)});
  auto size_row = [&](const std::string& name, const std::vector<int>& vs) {
    text += csv_row({name, "size", std::to_string(vs.size())});
  };
  size_row("v_high", dec.v_high);
  size_row("v_mid", dec.v_mid);
  size_row("v_low1", dec.v_low1);
  size_row("v_low2", dec.v_low2);
  auto edge_row = [&](const std::string& name, const Graph& part) {
    text += csv_row({name, "edges", std::to_string(part.edge_count())});
  };
  edge_row("g_h", dec.g_h);
  edge_row("g_m", dec.g_m);
  edge_row("g_l1", dec.g_l1);
  edge_row("g_l2", dec.g_l2);
  edge_row("g_hm", dec.g_hm);
  edge_row("g_ml", dec.g_ml);
  edge_row("g_l1l2", dec.g_l1l2);
  edge_row("g_hl1", dec.g_hl1);
  edge_row("core_l1l2", dec.core_l1l2);
  edge_row("core_l1", dec.core_l1);
  edge_row("core_hl1", dec.core_hl1);
  edge_row("forest_l1l2", dec.forest_l1l2);
  edge_row("forest_l1", dec.forest_l1);
  edge_row("forest_hl1", dec.forest_hl1);
  edge_row("star_hl1", dec.star_hl1);
  edge_row("residual_hl1", dec.residual_hl1);
  emit(cfg.output, text);
}

void run_classify(const ExperimentConfig& cfg, const std::string& input,
                  const ClassifyThresholds& thresholds) {
  Graph g = load_or_sample(input, cfg);
  CoreReport r = classify(g, cfg.params(), thresholds);
  if (cfg.format == "json") {
    emit(cfg.output, render(json(r)));
    return;
  }
  std::string text = csv_row({"key", "value"});
  auto flag = [&](const std::string& k, bool v) {
    text += csv_row({k, v ? "true" : "false"});
  };
  auto num = [&](const std::string& k, double v) { text += csv_row({k, csv_double(v)}); };
  flag("is_preseed_surrogate", r.is_preseed_surrogate);
  flag("is_seed", r.is_seed);
  flag("is_core", r.is_core);
  flag("is_strong_core", r.is_strong_core);
  text += csv_row({"hom", hom_to_string(r.hom)});
  text += csv_row({"edge_count", std::to_string(r.edge_count)});
  text += csv_row({"min_edge_hom", hom_to_string(r.min_edge_hom)});
  num("preseed_hom_threshold", r.preseed_hom_threshold);
  num("seed_hom_threshold", r.seed_hom_threshold);
  num("core_hom_threshold", r.core_hom_threshold);
  num("strong_hom_threshold", r.strong_hom_threshold);
  num("edge_budget", r.edge_budget);
  num("strong_edge_budget", r.strong_edge_budget);
  num("core_min_edge_threshold", r.core_min_edge_threshold);
  num("strong_min_edge_threshold", r.strong_min_edge_threshold);
  num("cbar", r.cbar);
  num("cstar", r.cstar);
  emit(cfg.output, text);
}

void run_prune(const ExperimentConfig& cfg, const std::string& input,
               const std::string& mode, std::optional<double> theta,
               std::optional<double> gamma_star) {
  Graph g = load_or_sample(input, cfg);
  Graph result(0, {});
  int removed = 0;
  if (mode == "core") {
    if (!theta) throw ConfigError("prune --mode core requires --theta");
    PruneResult r = prune_core(g, cfg.t, *theta);
    result = r.graph;
    removed = r.removed;
  } else {
    if (!gamma_star) throw ConfigError("prune --mode gamma requires --gamma-star");
    result = gamma_prune_step(g, *gamma_star, cfg.params());
    removed = g.edge_count() - result.edge_count();
  }
  if (cfg.format == "json") {
    json j{{"mode", mode}, {"removed", removed}, {"graph", json(result)}};
    emit(cfg.output, render(j));
    return;
  }
  std::string text = csv_row({"kind", "a", "b"});
  text += csv_row({"removed", std::to_string(removed), ""});
  for (const Edge& e : result.edges) {
    text += csv_row({"edge", std::to_string(e.first + 1), std::to_string(e.second + 1)});
  }
  emit(cfg.output, text);
}

void run_rates(const ExperimentConfig& cfg, double pmin, double pmax, int points) {
  if (points < 1) throw ConfigError("rates needs --points >= 1");
  if (!(pmin > 0.0) || !(pmax < 1.0) || pmin > pmax)
    throw ConfigError("rates needs 0 < pmin <= pmax < 1");
  if (cfg.n < 2) throw ConfigError("rates needs n >= 2");
  json rows = json::array();
  std::string text = csv_row({"n", "p", "alpha", "clique_cost", "hub_cost", "dominant",
                              "rate", "speed"});
  RegimeParams params = cfg.params();
  for (int i = 0; i < points; ++i) {
    params.p = points == 1 ? pmin : pmin + i * (pmax - pmin) / (points - 1);
    double alpha = alpha_of(params);
    RateReport r = rate_report(params);
    double cc = clique_cost(params);
    double hc = hub_cost(params);
    if (cfg.format == "json") {
      rows.push_back({{"n", params.n},
                      {"p", params.p},
                      {"alpha", alpha},
                      {"regime", r.regime},
                      {"speed", r.speed},
                      {"rate", r.rate},
                      {"raw_log_cost", r.raw_log_cost},
                      {"clique_cost", cc},
                      {"hub_cost", hc},
                      {"dominant", to_string(r.dominant_structure)}});
    } else {
      text += csv_row({std::to_string(params.n), csv_double(params.p), csv_double(alpha),
                       csv_double(cc), csv_double(hc), to_string(r.dominant_structure),
                       csv_double(r.rate), csv_double(r.speed)});
    }
  }
  if (cfg.format == "json") {
    emit(cfg.output, render(rows));
  } else {
    emit(cfg.output, text);
  }
}

void run_tail(const ExperimentConfig& cfg, int workers, const std::string& statistic,
              double threshold, bool exhaustive) {
  Statistic stat = statistic_from_string(statistic);
  RegimeParams params = cfg.params();
  std::vector<BatchCount> batches;
  TailEstimate est =
      estimate_tail(params, stat, threshold, cfg.samples, cfg.seed, workers, &batches);
  if (cfg.format == "json") {
    json j(est);
    json batch_rows = json::array();
    for (const BatchCount& b : batches) {
      batch_rows.push_back({{"samples", b.samples}, {"hits", b.hits}});
    }
    j["batches"] = batch_rows;
    if (exhaustive) {
      mpq_class exact = exhaustive_tail(params, stat, threshold);
      j["exact"] = {{"rational", exact.get_str()},
                    {"value", exact.get_d()},
                    {"abs_error", std::abs(est.p_hat - exact.get_d())}};
    }
    emit(cfg.output, render(j));
    return;
  }
  std::string text = csv_row({"statistic", "threshold", "samples", "hits", "p_hat",
                              "wilson_lo", "wilson_hi", "log_p_hat"});
  text += csv_row({to_string(est.statistic), csv_double(est.threshold),
                   std::to_string(est.samples), std::to_string(est.hits),
                   csv_double(est.p_hat), csv_double(est.wilson_lo),
                   csv_double(est.wilson_hi), csv_double(est.log_p_hat)});
  emit(cfg.output, text);
}

void run_conditional(const ExperimentConfig& cfg, int workers,
                     const std::string& statistic, double threshold) {
  Statistic stat = statistic_from_string(statistic);
  ConditionalHistogram h =
      conditional_max_degree(cfg.params(), stat, threshold, cfg.samples, cfg.seed, workers);
  if (cfg.format == "json") {
    emit(cfg.output, render(json(h)));
    return;
  }
  std::string text = csv_row({"key", "value"});
  for (const auto& [deg, count] : h.histogram) {
    text += csv_row({std::to_string(deg), std::to_string(count)});
  }
  text += csv_row({"samples", std::to_string(h.samples)});
  text += csv_row({"accepted", std::to_string(h.accepted)});
  text += csv_row({"acceptance_rate", csv_double(h.acceptance_rate)});
  emit(cfg.output, text);
}

int run_verify(const ExperimentConfig& cfg) {
  std::vector<CheckResult> results = run_all_checks(cfg.seed);
  int failed = 0;
  if (cfg.format == "json") {
    json rows = json::array();
    for (const CheckResult& r : results) {
      rows.push_back(json(r));
      if (!r.pass) ++failed;
    }
    emit(cfg.output, render(rows));
  } else {
    std::string text;
    for (const CheckResult& r : results) {
      if (!r.pass) ++failed;
      text += r.pass ? "PASS " : "FAIL ";
      text += r.name;
      if (!r.detail.empty()) text += " (" + r.detail + ")";
      text += '\n';
    }
    text += std::to_string(results.size() - failed) + "/" +
            std::to_string(results.size()) + " checks passed\n";
    emit(cfg.output, text);
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  ExperimentConfig cfg;
  // The config file is located before CLI11 runs so that flags given on the
  // command line always override values loaded from the file.
  try {
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
      std::string a = argv[i];
      if (a == "--config" && i + 1 < argc) {
        config_path = argv[i + 1];
      } else if (a.rfind("--config=", 0) == 0) {
        config_path = a.substr(9);
      }
    }
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Sparse random graph upper-tail laboratory"};
  app.require_subcommand(1);
  std::string config_path_flag;
  app.add_option("--config", config_path_flag,
                 "JSON config file (flags override its values)");
  int workers = 1;
  std::string input;
  bool quotients = false;
  ClassifyThresholds thresholds;
  double cstar_flag = 0.0;
  std::string prune_mode = "core";
  double theta_flag = 0.0;
  double gamma_star_flag = 0.0;
  // default grid stays inside alpha = log(1/p)/log n in (1/2, 1) at n = 1000
  double pmin = 0.002, pmax = 0.03;
  int points = 50;
  std::string statistic = "spectral_radius";
  double threshold = 0.0;
  bool exhaustive = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path_flag, "JSON config file (flags override)");
    sub->add_option("-n,--n", cfg.n, "number of vertices");
    sub->add_option("-p,--p", cfg.p, "edge probability");
    sub->add_option("--delta", cfg.delta, "spectral excess delta");
    sub->add_option("--delta-hat", cfg.delta_hat, "cycle-count excess delta-hat");
    sub->add_option("-t,--t", cfg.t, "half cycle length (counts concern C_{2t})");
    sub->add_option("--eps", cfg.eps, "slack parameter epsilon");
    sub->add_option("--eta", cfg.eta, "slack parameter eta");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", workers, "worker thread count")
        ->envname("ERTAIL_WORKERS")
        ->check(CLI::PositiveNumber);
    return sub;
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", input, "edge-list file instead of sampling");
    return sub;
  };

  CLI::App* sc_sample = add_common(app.add_subcommand("sample", "draw one G(n,p) graph"));
  CLI::App* sc_spectrum =
      add_input(add_common(app.add_subcommand("spectrum", "eigenvalue bound report")));
  CLI::App* sc_hom = add_input(
      add_common(app.add_subcommand("hom", "cycle homomorphism counts per edge")));
  sc_hom->add_flag("--quotients", quotients,
                   "list the partitions of C_{2t} with their quotients instead");
  CLI::App* sc_decompose =
      add_input(add_common(app.add_subcommand("decompose", "degree-class decomposition")));
  CLI::App* sc_classify = add_input(
      add_common(app.add_subcommand("classify", "seed / core / strong-core verdicts")));
  sc_classify->add_option("--cbar", thresholds.cbar, "edge budget constant");
  CLI::Option* cstar_opt =
      sc_classify->add_option("--cstar", cstar_flag, "strong-core budget constant");
  CLI::App* sc_prune =
      add_input(add_common(app.add_subcommand("prune", "iterative edge pruning")));
  sc_prune->add_option("--mode", prune_mode, "core (per-edge counts) or gamma (degrees)")
      ->check(CLI::IsMember({"core", "gamma"}));
  CLI::Option* theta_opt =
      sc_prune->add_option("--theta", theta_flag, "per-edge count floor for --mode core");
  CLI::Option* gs_opt = sc_prune->add_option("--gamma-star", gamma_star_flag,
                                             "degree multiplier for --mode gamma");
  CLI::App* sc_rates =
      add_common(app.add_subcommand("rates", "rate report over a p grid"));
  sc_rates->add_option("--pmin", pmin, "grid start");
  sc_rates->add_option("--pmax", pmax, "grid end");
  sc_rates->add_option("--points", points, "grid size");
  CLI::App* sc_tail =
      add_common(app.add_subcommand("tail", "Monte Carlo tail probability"));
  sc_tail->add_option("--statistic", statistic, "event statistic")
      ->check(CLI::IsMember({"spectral_radius", "hom_cycle", "max_degree"}));
  CLI::Option* tail_thr =
      sc_tail->add_option("--threshold", threshold, "event threshold")->required();
  sc_tail->add_flag("--exhaustive", exhaustive,
                    "also sum the exact probability over all graphs (n <= 5)");
  CLI::App* sc_conditional = add_common(
      app.add_subcommand("conditional", "max-degree histogram given the event"));
  sc_conditional->add_option("--statistic", statistic, "event statistic")
      ->check(CLI::IsMember({"spectral_radius", "hom_cycle", "max_degree"}));
  CLI::Option* cond_thr =
      sc_conditional->add_option("--threshold", threshold, "event threshold")->required();
  CLI::App* sc_verify =
      add_common(app.add_subcommand("verify", "run the full invariant suite"));
  (void)tail_thr;
  (void)cond_thr;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(sc_sample)) {
      cfg.subcommand = "sample";
      run_sample(cfg);
    } else if (app.got_subcommand(sc_spectrum)) {
      cfg.subcommand = "spectrum";
      run_spectrum(cfg, input);
    } else if (app.got_subcommand(sc_hom)) {
      cfg.subcommand = "hom";
      run_hom(cfg, input, quotients);
    } else if (app.got_subcommand(sc_decompose)) {
      cfg.subcommand = "decompose";
      run_decompose(cfg, input);
    } else if (app.got_subcommand(sc_classify)) {
      cfg.subcommand = "classify";
      if (cstar_opt->count() > 0) thresholds.cstar = cstar_flag;
      run_classify(cfg, input, thresholds);
    } else if (app.got_subcommand(sc_prune)) {
      cfg.subcommand = "prune";
      std::optional<double> theta, gamma_star;
      if (theta_opt->count() > 0) theta = theta_flag;
      if (gs_opt->count() > 0) gamma_star = gamma_star_flag;
      run_prune(cfg, input, prune_mode, theta, gamma_star);
    } else if (app.got_subcommand(sc_rates)) {
      cfg.subcommand = "rates";
      run_rates(cfg, pmin, pmax, points);
    } else if (app.got_subcommand(sc_tail)) {
      cfg.subcommand = "tail";
      run_tail(cfg, workers, statistic, threshold, exhaustive);
    } else if (app.got_subcommand(sc_conditional)) {
      cfg.subcommand = "conditional";
      run_conditional(cfg, workers, statistic, threshold);
    } else if (app.got_subcommand(sc_verify)) {
      cfg.subcommand = "verify";
      return run_verify(cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
