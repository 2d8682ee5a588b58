#include "ertail/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ertail/hom.hpp"
#include "ertail/rng.hpp"
#include "ertail/spectral.hpp"

namespace ertail {

namespace {

constexpr double kEventSlack = 1e-9;

// Runs fn(block, lo, hi) over a contiguous partition of [0, total) into
// `workers` blocks, capturing the first exception.
template <typename Fn>
void run_partitioned(std::uint64_t total, int workers, Fn&& fn) {
  int w = std::max(1, workers);
  if (static_cast<std::uint64_t>(w) > total && total > 0) {
    w = static_cast<int>(total);
  }
  if (w == 1) {
    fn(0, std::uint64_t{0}, total);
    return;
  }
  std::uint64_t base = total / w;
  std::uint64_t extra = total % w;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(w);
  std::uint64_t lo = 0;
  for (int b = 0; b < w; ++b) {
    std::uint64_t hi = lo + base + (static_cast<std::uint64_t>(b) < extra ? 1 : 0);
    threads.emplace_back([&, b, lo, hi]() {
      try {
        fn(b, lo, hi);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
    lo = hi;
  }
  for (auto& th : threads) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

int block_count(std::uint64_t total, int workers) {
  int w = std::max(1, workers);
  if (static_cast<std::uint64_t>(w) > total && total > 0) w = static_cast<int>(total);
  return w;
}

mpq_class mpq_pow(const mpq_class& base, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::spectral_radius: return "spectral_radius";
    case Statistic::hom_cycle: return "hom_cycle";
    case Statistic::max_degree: return "max_degree";
  }
  return "spectral_radius";
}

Statistic statistic_from_string(const std::string& s) {
  if (s == "spectral_radius") return Statistic::spectral_radius;
  if (s == "hom_cycle") return Statistic::hom_cycle;
  if (s == "max_degree") return Statistic::max_degree;
  throw std::invalid_argument("unknown statistic: " + s);
}

bool event_holds(const Graph& g, const RegimeParams& params, Statistic stat,
                 double threshold) {
  if (std::isinf(threshold)) return threshold < 0.0;
  double adjusted = threshold - kEventSlack * std::max(1.0, std::abs(threshold));
  switch (stat) {
    case Statistic::spectral_radius:
      return spectral_radius(g) >= adjusted;
    case Statistic::hom_cycle: {
      HomCount h = hom_cycle(g, params.t);
      return mpz_cmp_d(h.get_mpz_t(), adjusted) >= 0;
    }
    case Statistic::max_degree:
      return static_cast<double>(g.max_degree()) >= adjusted;
  }
  return false;
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t samples,
                                          double z) {
  if (samples == 0) throw std::invalid_argument("wilson_interval: samples must be >= 1");
  double m = static_cast<double>(samples);
  double p_hat = static_cast<double>(hits) / m;
  double z2 = z * z;
  double denom = 1.0 + z2 / m;
  double center = (p_hat + z2 / (2.0 * m)) / denom;
  double half = z * std::sqrt(p_hat * (1.0 - p_hat) / m + z2 / (4.0 * m * m)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TailEstimate estimate_tail(const RegimeParams& params, Statistic stat, double threshold,
                           std::uint64_t samples, std::uint64_t seed, int workers,
                           std::vector<BatchCount>* batches) {
  if (samples < 1) throw std::invalid_argument("estimate_tail: samples must be >= 1");
  int blocks = block_count(samples, workers);
  std::vector<BatchCount> counts(blocks);
  run_partitioned(samples, workers, [&](int b, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t local_hits = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      Graph g = sample_er(params.n, params.p, sub_seed(seed, i));
      if (event_holds(g, params, stat, threshold)) ++local_hits;
    }
    counts[b] = {hi - lo, local_hits};
  });
  TailEstimate est;
  est.statistic = stat;
  est.threshold = threshold;
  est.samples = samples;
  for (const BatchCount& c : counts) est.hits += c.hits;
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(samples);
  constexpr double kZ95 = 1.959963984540054;
  std::tie(est.wilson_lo, est.wilson_hi) = wilson_interval(est.hits, est.samples, kZ95);
  est.log_p_hat = est.hits == 0 ? -std::numeric_limits<double>::infinity()
                                : std::log(est.p_hat);
  if (batches) *batches = std::move(counts);
  return est;
}

mpq_class exhaustive_tail(const RegimeParams& params, Statistic stat, double threshold) {
  int n = params.n;
  int pairs = n * (n - 1) / 2;
  if (pairs > 10) {
    throw std::invalid_argument("exhaustive_tail: needs C(n,2) <= 10 (n <= 5)");
  }
  std::vector<Edge> all_pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});

  // Group satisfying graphs by edge count; the probability then needs only
  // pairs+1 exact rational terms.
  std::vector<unsigned long> satisfying(pairs + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    std::vector<Edge> es;
    for (int b = 0; b < pairs; ++b) {
      if (mask & (1u << b)) es.push_back(all_pairs[b]);
    }
    int k = static_cast<int>(es.size());
    Graph g(n, std::move(es));
    if (event_holds(g, params, stat, threshold)) ++satisfying[k];
  }
  mpq_class p_exact(params.p);
  mpq_class q_exact = mpq_class(1) - p_exact;
  mpq_class total = 0;
  for (int k = 0; k <= pairs; ++k) {
    if (satisfying[k] == 0) continue;
    total += mpq_class(satisfying[k]) * mpq_pow(p_exact, k) * mpq_pow(q_exact, pairs - k);
  }
  return total;
}

ConditionalHistogram conditional_max_degree(const RegimeParams& params, Statistic stat,
                                            double threshold, std::uint64_t samples,
                                            std::uint64_t seed, int workers) {
  if (samples < 1) {
    throw std::invalid_argument("conditional_max_degree: samples must be >= 1");
  }
  int blocks = block_count(samples, workers);
  std::vector<std::map<int, std::uint64_t>> partial(blocks);
  run_partitioned(samples, workers, [&](int b, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      Graph g = sample_er(params.n, params.p, sub_seed(seed, i));
      if (event_holds(g, params, stat, threshold)) ++partial[b][g.max_degree()];
    }
  });
  ConditionalHistogram h;
  h.samples = samples;
  for (const auto& m : partial) {
    for (const auto& [deg, cnt] : m) {
      h.histogram[deg] += cnt;
      h.accepted += cnt;
    }
  }
  h.acceptance_rate = static_cast<double>(h.accepted) / static_cast<double>(samples);
  if (h.acceptance_rate < 1e-6) {
    throw std::runtime_error(
        "conditional_max_degree: acceptance rate below 1e-6; "
        "the event is out of reach for rejection sampling at this scale");
  }
  return h;
}

bool planted_check(const RegimeParams& params, Structure structure) {
  double np = params.n * params.p;
  double target = (1.0 + params.delta) * np;
  Graph base(params.n, {});
  Graph planted(0, {});
  if (structure == Structure::clique) {
    long long m = ceil_snap(target) + 1;
    if (m > params.n) {
      throw std::invalid_argument("planted_check: clique size exceeds n");
    }
    std::vector<int> verts(m);
    for (long long i = 0; i < m; ++i) verts[i] = static_cast<int>(i);
    planted = plant_clique(base, verts);
  } else if (structure == Structure::hub) {
    long long d = ceil_snap((1.0 + params.delta) * (1.0 + params.delta) * np * np);
    if (d > params.n - 1) {
      throw std::invalid_argument("planted_check: hub degree exceeds n-1");
    }
    planted = plant_hub(base, 0, static_cast<int>(d), 1);
  } else {
    throw std::invalid_argument("planted_check: structure must be clique or hub");
  }
  double lambda = spectral_radius(planted);
  return lambda >= target - kEventSlack * std::max(1.0, std::abs(target));
}

std::pair<double, double> empirical_expected_hom(const RegimeParams& params,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 int workers) {
  if (samples < 2) {
    throw std::invalid_argument("empirical_expected_hom: samples must be >= 2");
  }
  std::vector<double> values(samples);
  run_partitioned(samples, workers, [&](int, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      Graph g = sample_er(params.n, params.p, sub_seed(seed, i));
      values[i] = hom_cycle(g, params.t).get_d();
    }
  });
  // Reduce in replicate order so the result never depends on the worker count.
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(samples);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double variance = ss / static_cast<double>(samples - 1);
  double stderr_mean = std::sqrt(variance / static_cast<double>(samples));
  return {mean, stderr_mean};
}

TiltedSample tilted_sample(const RegimeParams& params, double tau, std::uint64_t seed) {
  double p = params.p;
  double q = p + tau * params.n * p * p;
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("tilted_sample: tilted probability outside [0,1]");
  }
  UniformStream stream(seed);
  std::vector<Edge> es;
  double log_lr = 0.0;
  for (int u = 0; u < params.n; ++u) {
    for (int v = u + 1; v < params.n; ++v) {
      double prob = u == 0 ? q : p;
      bool edge = stream.next() < prob;
      if (edge) es.emplace_back(u, v);
      if (u == 0 && q != p) {
        log_lr += edge ? std::log(p / q) : std::log((1.0 - p) / (1.0 - q));
      }
    }
  }
  return {Graph(params.n, std::move(es)), log_lr};
}

}  // namespace ertail
