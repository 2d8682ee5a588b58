#pragma once

#include <cmath>
#include <stdexcept>

namespace ertail {

// Shared regime parameters. delta is the spectral excess ((1+delta) target for
// lambda/np), delta_hat the homomorphism-count excess, t the half cycle length
// (counts concern C_{2t}), eps and eta are the small slack exponents in (0, 1/4)
// used by the degree thresholds and classification inequalities.
struct RegimeParams {
    int n = 0;
    double p = 0.0;
    double delta = 0.5;
    double delta_hat = 1.0;
    int t = 2;
    double eps = 0.1;
    double eta = 0.1;
};

// Sparsity exponent: p = n^{-alpha}.
inline double alpha_of(const RegimeParams& pr) {
    if (pr.n < 2 || pr.p <= 0.0 || pr.p >= 1.0)
        throw std::invalid_argument("alpha_of: need n >= 2 and p in (0,1)");
    return std::log(1.0 / pr.p) / std::log(static_cast<double>(pr.n));
}

// High-degree threshold: np*sqrt(log n/log log n) while np <= (log n)^{1-eta/2},
// and (np)^{1+eta} strictly above that seam.
inline double varpi(const RegimeParams& pr) {
    if (pr.n < 3) throw std::invalid_argument("varpi: need n >= 3");
    if (pr.p <= 0.0 || pr.p > 1.0) throw std::invalid_argument("varpi: need p in (0,1]");
    double np = pr.n * pr.p;
    double ln = std::log(static_cast<double>(pr.n));
    if (np <= std::pow(ln, 1.0 - pr.eta / 2.0)) return np * std::sqrt(ln / std::log(ln));
    return std::pow(np, 1.0 + pr.eta);
}

// Low-degree cap (1 + delta(1-eps)) np.
inline double low_degree_cap(const RegimeParams& pr) {
    return (1.0 + pr.delta * (1.0 - pr.eps)) * pr.n * pr.p;
}

}  // namespace ertail
