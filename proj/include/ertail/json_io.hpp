#pragma once

#include <string>

#include <json.hpp>

#include "ertail/decompose.hpp"
#include "ertail/graph.hpp"
#include "ertail/montecarlo.hpp"
#include "ertail/params.hpp"
#include "ertail/rates.hpp"
#include "ertail/spectral.hpp"
#include "ertail/verify.hpp"

namespace ertail {

// One flat record driving a CLI run; round-trips losslessly through JSON.
struct ExperimentConfig {
  std::string subcommand;
  int n = 0;
  double p = 0.0;
  double delta = 0.5;
  double delta_hat = 1.0;
  int t = 2;
  double eps = 0.1;
  double eta = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  std::string output;           // empty file path means stdout
  std::string format = "json";  // "json" or "csv"

  bool operator==(const ExperimentConfig&) const = default;

  RegimeParams params() const {
    return RegimeParams{n, p, delta, delta_hat, t, eps, eta};
  }
};

// Raised for malformed configs; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

// Parses a flat JSON config, rejecting unknown keys and wrong types.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

void to_json(nlohmann::json& j, const Graph& g);  // 1-based edge pairs
void to_json(nlohmann::json& j, const DegreeStats& s);
void to_json(nlohmann::json& j, const BoundReport& r);
void to_json(nlohmann::json& j, const Decomposition& d);
void to_json(nlohmann::json& j, const CoreReport& r);
void to_json(nlohmann::json& j, const PruneResult& r);
void to_json(nlohmann::json& j, const RateReport& r);
void to_json(nlohmann::json& j, const TailEstimate& e);
void to_json(nlohmann::json& j, const ConditionalHistogram& h);
void to_json(nlohmann::json& j, const CheckResult& c);

// Full-precision double formatting used by every CSV emitter (%.17g).
std::string csv_double(double x);

}  // namespace ertail
