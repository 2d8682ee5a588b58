#include "ertail/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ertail/rng.hpp"

namespace ertail {

namespace {

constexpr long kMaxIterations = 1000000;

// Largest eigenvalue of the adjacency matrix restricted to one component,
// given as a vertex list. Power iteration on A + I: eigenvalues shift to
// lambda_i + 1, all >= -max_degree + 1 > -(lambda_1 + 1), so lambda_1 + 1 is
// the unique modulus-maximal eigenvalue and Rayleigh quotients converge even
// on bipartite components. The start vector is positive (entries in [0.5, 1)),
// so it overlaps the Perron vector of the component.
double component_lambda(const Graph& g, const std::vector<int>& comp, double tol) {
    if (comp.size() <= 1) return 0.0;
    bool any_edge = false;
    for (int v : comp)
        if (!g.adj[v].empty()) { any_edge = true; break; }
    if (!any_edge) return 0.0;

    std::vector<int> index(g.n, -1);
    for (std::size_t i = 0; i < comp.size(); ++i) index[comp[i]] = static_cast<int>(i);

    const std::size_t m = comp.size();
    std::vector<double> x(m), y(m);
    UniformStream stream(0x5eedf00dULL);  // fixed internal seed: deterministic output
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = 0.5 + 0.5 * stream.next();
        norm += x[i] * x[i];
    }
    norm = std::sqrt(norm);
    for (auto& xi : x) xi /= norm;

    // Stop when successive Rayleigh quotients differ by less than tol/100 and
    // the residual ||(A+I)x - R x||_inf is below tol; the extra margin guards
    // against slow geometric convergence masquerading as stagnation.
    const double stag = tol / 100.0;
    double rayleigh_prev = -1.0;
    for (long iter = 0; iter < kMaxIterations; ++iter) {
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double s = x[i];
            for (int u : g.adj[comp[i]]) s += x[static_cast<std::size_t>(index[u])];
            y[i] = s;
            rayleigh += x[i] * s;
        }
        if (iter > 0 &&
            std::abs(rayleigh - rayleigh_prev) < stag * std::max(1.0, std::abs(rayleigh))) {
            double resid = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                resid = std::max(resid, std::abs(y[i] - rayleigh * x[i]));
            if (resid <= tol * std::max(1.0, std::abs(rayleigh))) return rayleigh - 1.0;
        }
        rayleigh_prev = rayleigh;
        double ynorm = 0.0;
        for (double yi : y) ynorm += yi * yi;
        ynorm = std::sqrt(ynorm);
        for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / ynorm;
    }
    throw std::runtime_error("spectral_radius: power iteration did not converge");
}

}  // namespace

double spectral_radius(const Graph& g, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("spectral_radius: tol must be positive");
    double lambda = 0.0;
    for (const auto& comp : connected_components(g))
        lambda = std::max(lambda, component_lambda(g, comp, tol));
    return lambda;
}

bool is_forest(const Graph& g) {
    // A graph is acyclic iff every component has exactly |vertices| - 1 edges;
    // equivalently e = n - (number of components).
    auto comps = connected_components(g);
    return g.edge_count() == g.n - static_cast<int>(comps.size());
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(const Graph& g) {
    std::vector<int> colour(g.n, -1);
    std::vector<int> queue;
    for (int s = 0; s < g.n; ++s) {
        if (colour[s] >= 0 || g.adj[s].empty()) continue;
        colour[s] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int u : g.adj[v]) {
                if (colour[u] < 0) {
                    colour[u] = 1 - colour[v];
                    queue.push_back(u);
                } else if (colour[u] == colour[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<int> a, b;
    for (int v = 0; v < g.n; ++v) {
        if (colour[v] == 0) a.push_back(v);
        if (colour[v] == 1) b.push_back(v);
    }
    return std::make_pair(std::move(a), std::move(b));
}

BoundReport bound_report(const Graph& g, double tol) {
    BoundReport r;
    r.lambda = spectral_radius(g, tol);
    r.max_degree = g.max_degree();
    r.sqrt_max_degree = std::sqrt(static_cast<double>(r.max_degree));
    r.degree_bound = r.max_degree;
    r.sqrt_two_edges = std::sqrt(2.0 * g.edge_count());

    if (!is_forest(g)) {
        r.absent["forest_bound"] = "graph contains a cycle";
    } else if (r.max_degree < 2) {
        r.absent["forest_bound"] = "max degree below 2, bound degenerates";
    } else {
        r.forest_bound = 2.0 * std::sqrt(static_cast<double>(r.max_degree - 1));
    }

    auto sides = bipartition(g);
    if (!sides) {
        r.absent["bipartite_product_bound"] = "graph is not bipartite";
        r.absent["bipartite_neighbor_bound"] = "graph is not bipartite";
    } else if (g.edge_count() == 0) {
        r.absent["bipartite_product_bound"] = "no edges";
        r.absent["bipartite_neighbor_bound"] = "no edges";
    } else {
        const auto& [a, b] = *sides;
        int d1 = 0, d2 = 0;
        for (int v : a) d1 = std::max(d1, g.degree(v));
        for (int v : b) d2 = std::max(d2, g.degree(v));
        r.bipartite_product_bound = std::sqrt(static_cast<double>(d1) * d2);
        auto side_value = [&](const std::vector<int>& side) {
            double best = 0.0;
            for (int v : side) {
                double s = 0.0;
                for (int u : g.adj[v]) s += g.degree(u);
                best = std::max(best, s);
            }
            return std::sqrt(best);
        };
        r.bipartite_neighbor_bound = std::min(side_value(a), side_value(b));
    }

    auto st = degree_stats(g);
    int noniso = g.nonisolated_count();
    if (noniso == 0) {
        r.absent["excess_edge_bound"] = "no edges";
    } else if (st.min_degree_nonisolated < 2) {
        r.absent["excess_edge_bound"] = "minimum degree below 2";
    } else {
        r.excess_edge_bound =
            std::sqrt(2.0 * (g.edge_count() - noniso) + r.max_degree + 2.0);
    }
    return r;
}

bool is_subgraph(const Graph& sub, const Graph& g) {
    if (sub.n > g.n) return false;
    for (auto [u, v] : sub.edges)
        if (!g.has_edge(u, v)) return false;
    return true;
}

MonotonicityCheck subgraph_monotonicity_check(const Graph& sub, const Graph& g, double tol) {
    if (!is_subgraph(sub, g))
        throw std::invalid_argument("subgraph_monotonicity_check: not a subgraph");
    MonotonicityCheck c;
    c.lambda_sub = spectral_radius(sub, tol);
    c.lambda_super = spectral_radius(g, tol);
    c.holds = c.lambda_sub <= c.lambda_super + tol;
    return c;
}

}  // namespace ertail
