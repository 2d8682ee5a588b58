#include "ertail/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ertail {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::clique: return "clique";
    case Structure::hub: return "hub";
    case Structure::tie: return "tie";
  }
  return "tie";
}

double binary_entropy(double s, double lam) {
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("binary_entropy: s must lie in (0,1)");
  }
  if (!(lam >= 0.0 && lam <= 1.0)) {
    throw std::invalid_argument("binary_entropy: lam must lie in [0,1]");
  }
  if (lam == 0.0) return -std::log1p(-s);
  if (lam == 1.0) return std::log(1.0 / s);
  return lam * std::log(lam / s) + (1.0 - lam) * std::log((1.0 - lam) / (1.0 - s));
}

std::pair<double, double> binomial_tail_bounds(long long n_trials, double s, double lam) {
  if (!(lam > s && lam < 1.0)) {
    throw std::invalid_argument("binomial_tail_bounds: need s < lam < 1");
  }
  if (n_trials < 1) throw std::invalid_argument("binomial_tail_bounds: N must be >= 1");
  double upper = std::exp(-static_cast<double>(n_trials) * binary_entropy(s, lam));
  double lower = upper / std::sqrt(8.0 * n_trials * lam * (1.0 - lam));
  return {lower, upper};
}

double chernoff_bound(long long n_trials, double s, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("chernoff_bound: gamma must be > 0");
  if (!((1.0 + gamma) * s <= 1.0)) {
    throw std::invalid_argument("chernoff_bound: (1+gamma) s must be <= 1");
  }
  return std::exp(-gamma * gamma / (2.0 + gamma) * n_trials * s);
}

double lambda_p(long long n, double p) {
  if (n < 2) throw std::invalid_argument("lambda_p: n must be >= 2");
  double denom = std::log(std::log(static_cast<double>(n))) - std::log(n * p);
  if (!(denom > 0.0)) {
    throw std::invalid_argument("lambda_p: log log n must exceed log(np)");
  }
  return std::log(static_cast<double>(n)) / denom;
}

double rate_sparse(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("rate_sparse: delta must be > 0");
  return (1.0 + delta) * (1.0 + delta);
}

double rate_intermediate(double delta, double alpha) {
  if (!(delta > 0.0)) throw std::invalid_argument("rate_intermediate: delta must be > 0");
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("rate_intermediate: alpha must lie in (1/2, 1)");
  }
  return std::min((1.0 - alpha) / alpha, 0.5) * (1.0 + delta) * (1.0 + delta);
}

double rate_hom(int t, double delta_hat, double alpha) {
  if (t < 3) throw std::invalid_argument("rate_hom: t must be >= 3");
  if (!(delta_hat > 0.0)) throw std::invalid_argument("rate_hom: delta_hat must be > 0");
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("rate_hom: alpha must lie in (1/2, 1)");
  }
  double branch = std::pow(2.0, 1.0 - 1.0 / t) * (1.0 - alpha) / alpha;
  return 0.5 * std::pow(delta_hat, 1.0 / t) * std::min(branch, 1.0);
}

double hom_crossover_alpha(int t) {
  if (t < 3) throw std::invalid_argument("hom_crossover_alpha: t must be >= 3");
  double c = std::pow(2.0, 1.0 - 1.0 / t);
  return c / (1.0 + c);
}

double phi_t(const RegimeParams& params) {
  double np = params.n * params.p;
  double dh = params.delta_hat;
  double a = 0.5 * std::pow(dh, 1.0 / params.t) * std::log(1.0 / params.p);
  double b = std::pow(dh / 2.0, 1.0 / params.t) * std::log(np);
  return std::min(a, b) * np * np;
}

long long ceil_snap(double x) {
  double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::ceil(x));
}

double clique_cost(const RegimeParams& params) {
  long long m = ceil_snap((1.0 + params.delta) * params.n * params.p);
  if (m > params.n) {
    throw std::invalid_argument("clique_cost: planted clique larger than the graph");
  }
  return 0.5 * static_cast<double>(m) * static_cast<double>(m) * std::log(1.0 / params.p);
}

double hub_cost(const RegimeParams& params) {
  double np = params.n * params.p;
  double f = (1.0 + params.delta) * (1.0 + params.delta);
  return f * np * np * std::log(np);
}

double hub_cost_exact(const RegimeParams& params) {
  double np = params.n * params.p;
  double target = (1.0 + params.delta) * (1.0 + params.delta) * np * np;
  double pairs = static_cast<double>(params.n) - 1.0;
  if (target > pairs) {
    throw std::invalid_argument("hub_cost_exact: target degree exceeds n-1");
  }
  return pairs * binary_entropy(params.p, target / pairs);
}

Structure structure_dichotomy(const RegimeParams& params) {
  double c = clique_cost(params);
  double h = hub_cost(params);
  if (std::abs(c - h) <= 1e-9 * std::max(std::abs(c), std::abs(h))) return Structure::tie;
  return c < h ? Structure::clique : Structure::hub;
}

double mean_field_cost(const std::vector<double>& xi, double p) {
  double total = 0.0;
  for (double x : xi) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("mean_field_cost: component outside [0,1]");
    }
    total += binary_entropy(p, x);
  }
  return total;
}

RateReport rate_report(const RegimeParams& params) {
  double alpha = alpha_of(params);
  if (alpha >= 1.0) {
    throw std::invalid_argument("rate_report: np <= 1 is outside both regimes");
  }
  double np = params.n * params.p;
  RateReport r;
  if (alpha >= 2.0 / 3.0) {
    r.regime = "sparse";
    r.speed = np * np * std::log(np);
    r.rate = rate_sparse(params.delta);
  } else {
    r.regime = "intermediate";
    r.speed = np * np * std::log(1.0 / params.p);
    r.rate = rate_intermediate(params.delta, alpha);
  }
  r.raw_log_cost = r.rate * r.speed;
  r.dominant_structure = structure_dichotomy(params);
  return r;
}

RateReport hom_rate_report(const RegimeParams& params) {
  double alpha = alpha_of(params);
  double np = params.n * params.p;
  RateReport r;
  r.regime = "hom";
  r.speed = np * np * std::log(1.0 / params.p);
  r.rate = rate_hom(params.t, params.delta_hat, alpha);
  r.raw_log_cost = r.rate * r.speed;
  double branch = std::pow(2.0, 1.0 - 1.0 / params.t) * (1.0 - alpha) / alpha;
  if (std::abs(branch - 1.0) <= 1e-9) {
    r.dominant_structure = Structure::tie;
  } else {
    // branch < 1 means the degree (hub) term is the cheaper one.
    r.dominant_structure = branch < 1.0 ? Structure::hub : Structure::clique;
  }
  return r;
}

}  // namespace ertail
