#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ertail/params.hpp"

namespace ertail {

enum class Structure { clique, hub, tie };

std::string to_string(Structure s);

// Binary relative entropy lam*log(lam/s) + (1-lam)*log((1-lam)/(1-s)) with
// the 0*log(0) = 0 convention at lam = 0 and lam = 1.
double binary_entropy(double s, double lam);

// (lower, upper) bracket for P(Bin(N,s) >= lam*N):
// exp(-N I_s(lam)) / sqrt(8 N lam (1-lam)) and exp(-N I_s(lam)).
// The lower bound is guaranteed when lam*N is an integer.
std::pair<double, double> binomial_tail_bounds(long long n_trials, double s, double lam);

// exp(-gamma^2/(2+gamma) * N s) >= P(Bin(N,s) >= (1+gamma) N s).
double chernoff_bound(long long n_trials, double s, double gamma);

// log n / (log log n - log(np)); only defined while the denominator is positive.
double lambda_p(long long n, double p);

// Rate (1+delta)^2 at speed n^2 p^2 log(np), for np = n^z with z < 1/3.
double rate_sparse(double delta);

// Rate min{(1-alpha)/alpha, 1/2} (1+delta)^2 at speed n^2 p^2 log(1/p),
// for p = n^-alpha with alpha in (1/2, 1).
double rate_intermediate(double delta, double alpha);

// Rate (1/2) delta_hat^(1/t) min{2^(1-1/t)(1-alpha)/alpha, 1} for the cycle
// count tail, t >= 3, at speed n^2 p^2 log(1/p).
double rate_hom(int t, double delta_hat, double alpha);

// The alpha where rate_hom switches branch: 2^(1-1/t) / (1 + 2^(1-1/t)).
double hom_crossover_alpha(int t);

// min{(1/2) dh^(1/t) log(1/p), (dh/2)^(1/t) log(np)} n^2 p^2 with dh = delta_hat.
double phi_t(const RegimeParams& params);

// Rounds up, but snaps values within 1e-9 of an integer first so that exact
// ties like 1.5 * 1000 * 0.01 do not drift up a step through float noise.
long long ceil_snap(double x);

// (1/2) ceil((1+delta) np)^2 log(1/p): cost of forcing the spectral event with
// a planted clique.  Throws when the clique would not fit in the graph.
double clique_cost(const RegimeParams& params);

// (1+delta)^2 n^2 p^2 log(np): leading-order cost of one vertex reaching
// degree (1+delta)^2 n^2 p^2.
double hub_cost(const RegimeParams& params);

// (n-1) I_p((1+delta)^2 n^2 p^2 / (n-1)): the exact-entropy version of
// hub_cost; throws when the target degree exceeds n-1.
double hub_cost_exact(const RegimeParams& params);

// Cheaper of clique_cost / hub_cost, tie within 1e-9 relative.
Structure structure_dichotomy(const RegimeParams& params);

// Sum of per-pair entropies I_p(xi_i) of a product-Bernoulli tilt.
double mean_field_cost(const std::vector<double>& xi, double p);

struct RateReport {
  std::string regime;    // "sparse" | "intermediate" | "hom"
  double speed = 0.0;    // n^2 p^2 log(np) or n^2 p^2 log(1/p)
  double rate = 0.0;
  double raw_log_cost = 0.0;  // rate * speed
  Structure dominant_structure = Structure::tie;
};

// Spectral-radius tail report: picks the regime from alpha = log(1/p)/log n,
// with the boundary alpha = 2/3 filed under "sparse".
RateReport rate_report(const RegimeParams& params);

// Cycle-count tail report (regime "hom"); requires t >= 3.
RateReport hom_rate_report(const RegimeParams& params);

}  // namespace ertail
