#include "ertail/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace ertail {

namespace {

nlohmann::json vertices_1based(const std::vector<int>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (int v : vs) a.push_back(v + 1);
  return a;
}

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"subcommand", c.subcommand},
                     {"n", c.n},
                     {"p", c.p},
                     {"delta", c.delta},
                     {"delta_hat", c.delta_hat},
                     {"t", c.t},
                     {"eps", c.eps},
                     {"eta", c.eta},
                     {"seed", c.seed},
                     {"samples", c.samples},
                     {"output", c.output},
                     {"format", c.format}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) { c = parse_config(j); }

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "subcommand") {
        c.subcommand = value.get<std::string>();
      } else if (key == "n") {
        c.n = value.get<int>();
      } else if (key == "p") {
        c.p = value.get<double>();
      } else if (key == "delta") {
        c.delta = value.get<double>();
      } else if (key == "delta_hat") {
        c.delta_hat = value.get<double>();
      } else if (key == "t") {
        c.t = value.get<int>();
      } else if (key == "eps") {
        c.eps = value.get<double>();
      } else if (key == "eta") {
        c.eta = value.get<double>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "samples") {
        c.samples = value.get<std::uint64_t>();
      } else if (key == "output") {
        c.output = value.get<std::string>();
      } else if (key == "format") {
        c.format = value.get<std::string>();
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("config key '" + key + "' has the wrong type");
    }
  }
  if (c.format != "json" && c.format != "csv") {
    throw ConfigError("config format must be \"json\" or \"csv\"");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

void to_json(nlohmann::json& j, const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges) {
    edges.push_back(nlohmann::json::array({e.first + 1, e.second + 1}));
  }
  j = nlohmann::json{{"n", g.n}, {"edges", std::move(edges)}};
}

void to_json(nlohmann::json& j, const DegreeStats& s) {
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto& [deg, count] : s.histogram) histogram[std::to_string(deg)] = count;
  j = nlohmann::json{{"n", s.n},
                     {"edge_count", s.edge_count},
                     {"max_degree", s.max_degree},
                     {"min_degree", s.min_degree},
                     {"min_degree_nonisolated", s.min_degree_nonisolated},
                     {"mean_degree", s.mean_degree},
                     {"histogram", std::move(histogram)}};
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = nlohmann::json{{"lambda", r.lambda},
                     {"max_degree", r.max_degree},
                     {"sqrt_max_degree", r.sqrt_max_degree},
                     {"degree_bound", r.degree_bound},
                     {"sqrt_two_edges", r.sqrt_two_edges}};
  auto opt = [&](const char* name, const std::optional<double>& v) {
    j[name] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  opt("forest_bound", r.forest_bound);
  opt("bipartite_product_bound", r.bipartite_product_bound);
  opt("bipartite_neighbor_bound", r.bipartite_neighbor_bound);
  opt("excess_edge_bound", r.excess_edge_bound);
  j["absent"] = r.absent;
}

void to_json(nlohmann::json& j, const Decomposition& d) {
  j = nlohmann::json{{"varpi", d.varpi},
                     {"low_cap", d.low_cap},
                     {"v_high", vertices_1based(d.v_high)},
                     {"v_mid", vertices_1based(d.v_mid)},
                     {"v_low1", vertices_1based(d.v_low1)},
                     {"v_low2", vertices_1based(d.v_low2)},
                     {"g_h", d.g_h},
                     {"g_m", d.g_m},
                     {"g_l1", d.g_l1},
                     {"g_l2", d.g_l2},
                     {"g_hm", d.g_hm},
                     {"g_ml", d.g_ml},
                     {"g_l1l2", d.g_l1l2},
                     {"g_hl1", d.g_hl1},
                     {"core_l1l2", d.core_l1l2},
                     {"core_l1", d.core_l1},
                     {"core_hl1", d.core_hl1},
                     {"forest_l1l2", d.forest_l1l2},
                     {"forest_l1", d.forest_l1},
                     {"forest_hl1", d.forest_hl1},
                     {"star_hl1", d.star_hl1},
                     {"residual_hl1", d.residual_hl1}};
}

void to_json(nlohmann::json& j, const CoreReport& r) {
  j = nlohmann::json{{"is_preseed_surrogate", r.is_preseed_surrogate},
                     {"is_seed", r.is_seed},
                     {"is_core", r.is_core},
                     {"is_strong_core", r.is_strong_core},
                     {"hom", hom_to_string(r.hom)},
                     {"edge_count", r.edge_count},
                     {"min_edge_hom", hom_to_string(r.min_edge_hom)},
                     {"preseed_hom_threshold", r.preseed_hom_threshold},
                     {"seed_hom_threshold", r.seed_hom_threshold},
                     {"core_hom_threshold", r.core_hom_threshold},
                     {"strong_hom_threshold", r.strong_hom_threshold},
                     {"edge_budget", r.edge_budget},
                     {"strong_edge_budget", r.strong_edge_budget},
                     {"core_min_edge_threshold", r.core_min_edge_threshold},
                     {"strong_min_edge_threshold", r.strong_min_edge_threshold},
                     {"cbar", r.cbar},
                     {"cstar", r.cstar}};
}

void to_json(nlohmann::json& j, const PruneResult& r) {
  j = nlohmann::json{{"graph", r.graph}, {"removed", r.removed}};
}

void to_json(nlohmann::json& j, const RateReport& r) {
  j = nlohmann::json{{"regime", r.regime},
                     {"speed", r.speed},
                     {"rate", r.rate},
                     {"raw_log_cost", r.raw_log_cost},
                     {"dominant_structure", to_string(r.dominant_structure)}};
}

void to_json(nlohmann::json& j, const TailEstimate& e) {
  j = nlohmann::json{{"statistic", to_string(e.statistic)},
                     {"threshold", finite_or_null(e.threshold)},
                     {"samples", e.samples},
                     {"hits", e.hits},
                     {"p_hat", e.p_hat},
                     {"wilson_lo", e.wilson_lo},
                     {"wilson_hi", e.wilson_hi},
                     {"log_p_hat", finite_or_null(e.log_p_hat)}};
}

void to_json(nlohmann::json& j, const ConditionalHistogram& h) {
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto& [deg, count] : h.histogram) histogram[std::to_string(deg)] = count;
  j = nlohmann::json{{"histogram", std::move(histogram)},
                     {"samples", h.samples},
                     {"accepted", h.accepted},
                     {"acceptance_rate", h.acceptance_rate}};
}

void to_json(nlohmann::json& j, const CheckResult& c) {
  j = nlohmann::json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
}

}  // namespace ertail
