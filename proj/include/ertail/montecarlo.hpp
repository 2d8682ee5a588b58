#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ertail/graph.hpp"
#include "ertail/params.hpp"
#include "ertail/rates.hpp"

namespace ertail {

enum class Statistic { spectral_radius, hom_cycle, max_degree };

std::string to_string(Statistic s);
Statistic statistic_from_string(const std::string& s);

// Whether the statistic reaches the threshold on g, with 1e-9 relative slack
// so boundary cases (an exact eigenvalue at the threshold) count as hits.
// hom_cycle uses params.t and compares the exact integer count.
bool event_holds(const Graph& g, const RegimeParams& params, Statistic stat,
                 double threshold);

// Wilson score interval for hits successes out of samples at normal quantile z.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t samples,
                                          double z);

struct TailEstimate {
  Statistic statistic = Statistic::spectral_radius;
  double threshold = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double wilson_lo = 0.0;  // 95% interval
  double wilson_hi = 0.0;
  double log_p_hat = 0.0;  // -inf when hits == 0
};

struct BatchCount {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

// Crude Monte Carlo estimate of P(statistic >= threshold) over seeded
// replicates.  Replicate i always uses sub_seed(seed, i), so the result is
// identical for every worker count.  batches, when given, receives one entry
// per worker block in replicate order.
TailEstimate estimate_tail(const RegimeParams& params, Statistic stat, double threshold,
                           std::uint64_t samples, std::uint64_t seed, int workers = 1,
                           std::vector<BatchCount>* batches = nullptr);

// Exact event probability by summing over all 2^C(n,2) labelled graphs;
// exact in rational arithmetic (p enters as its exact double value).
// Requires C(n,2) <= 10, i.e. n <= 5.
mpq_class exhaustive_tail(const RegimeParams& params, Statistic stat, double threshold);

struct ConditionalHistogram {
  std::map<int, std::uint64_t> histogram;  // max degree -> accepted count
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate = 0.0;
};

// Rejection-sampled law of the max degree given the event.  Throws when the
// acceptance rate comes out below 1e-6 (the event is out of reach for
// rejection sampling at this scale).
ConditionalHistogram conditional_max_degree(const RegimeParams& params, Statistic stat,
                                            double threshold, std::uint64_t samples,
                                            std::uint64_t seed, int workers = 1);

// True iff planting the prescribed structure in the empty graph already forces
// lambda >= (1+delta) np: a clique on ceil((1+delta)np)+1 vertices, or a hub of
// degree ceil((1+delta)^2 n^2 p^2).  Throws when the structure does not fit
// (for the hub: degree > n-1, which happens exactly when (1+delta)^2 n^2 p^2
// exceeds n-1).
bool planted_check(const RegimeParams& params, Structure structure);

// Sample mean and standard error of hom_cycle(G(n,p), t) over seeded
// replicates; reduction happens in replicate order, independent of workers.
std::pair<double, double> empirical_expected_hom(const RegimeParams& params,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 int workers = 1);

struct TiltedSample {
  Graph graph;
  double log_lr = 0.0;  // log dP/dQ of the sample: product-p over tilted law
};

// Draws a graph with pairs at vertex 0 tilted to probability p + tau n p^2 and
// all other pairs at p, consuming uniforms exactly like sample_er, and returns
// the log-likelihood ratio against the product-p measure.  With tau = 0 the
// draw is identical to sample_er(n, p, seed).
TiltedSample tilted_sample(const RegimeParams& params, double tau, std::uint64_t seed);

}  // namespace ertail
