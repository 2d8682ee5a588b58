#include "ertail/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ertail/rng.hpp"

namespace ertail {

Graph::Graph(int n_, std::vector<Edge> edge_list) : n(n_) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop rejected");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw std::invalid_argument("graph: duplicate edge rejected");
    edges = std::move(edge_list);
    adj.assign(n, {});
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    // insertion order already leaves adj[u] sorted for u < v halves mixed; sort to be safe
    for (auto& a : adj) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

int Graph::nonisolated_count() const {
    int c = 0;
    for (const auto& a : adj)
        if (!a.empty()) ++c;
    return c;
}

Graph sample_er(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("sample_er: negative n");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_er: p outside [0,1]");
    UniformStream stream(seed);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (stream.next() < p) es.emplace_back(u, v);
    return Graph(n, std::move(es));
}

Graph plant_clique(const Graph& g, const std::vector<int>& s) {
    for (int v : s)
        if (v < 0 || v >= g.n) throw std::invalid_argument("plant_clique: vertex out of range");
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("plant_clique: repeated vertex");
    std::vector<Edge> es = g.edges;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (!g.has_edge(sorted[i], sorted[j])) es.emplace_back(sorted[i], sorted[j]);
    return Graph(g.n, std::move(es));
}

Graph plant_hub(const Graph& g, int v, int d, std::uint64_t seed) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("plant_hub: vertex out of range");
    if (d < 0) throw std::invalid_argument("plant_hub: negative degree");
    if (d > g.n - 1) throw std::invalid_argument("plant_hub: degree exceeds n-1");
    int need = d - g.degree(v);
    if (need <= 0) return g;
    std::vector<int> candidates;  // ascending non-neighbours
    for (int u = 0; u < g.n; ++u)
        if (u != v && !g.has_edge(u, v)) candidates.push_back(u);
    UniformStream stream(seed);
    std::vector<Edge> es = g.edges;
    for (int k = 0; k < need; ++k) {
        std::size_t idx = stream.next_below(candidates.size());
        int u = candidates[idx];
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
        es.emplace_back(std::min(u, v), std::max(u, v));
    }
    return Graph(g.n, std::move(es));
}

Graph two_core(const Graph& g) {
    std::vector<int> deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
    std::vector<bool> dead(g.n, false);
    std::vector<int> stack;
    for (int v = 0; v < g.n; ++v)
        if (deg[v] == 1) stack.push_back(v);  // isolated vertices stay as they are
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (dead[v] || deg[v] != 1) continue;
        dead[v] = true;
        deg[v] = 0;
        for (int u : g.adj[v]) {
            if (dead[u] || deg[u] == 0) continue;
            if (--deg[u] == 1) stack.push_back(u);
        }
    }
    std::vector<Edge> es;
    for (auto [u, v] : g.edges)
        if (!dead[u] && !dead[v] && deg[u] >= 2 && deg[v] >= 2) es.emplace_back(u, v);
    return Graph(g.n, std::move(es));
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& s) {
    std::vector<bool> keep(g.n, false);
    for (int v : s) {
        if (v < 0 || v >= g.n) throw std::invalid_argument("induced_subgraph: vertex out of range");
        keep[v] = true;
    }
    std::vector<Edge> es;
    for (auto [u, v] : g.edges)
        if (keep[u] && keep[v]) es.emplace_back(u, v);
    return Graph(g.n, std::move(es));
}

Graph bipartite_subgraph(const Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> side(g.n, 0);
    for (int v : a) {
        if (v < 0 || v >= g.n) throw std::invalid_argument("bipartite_subgraph: vertex out of range");
        side[v] = 1;
    }
    for (int v : b) {
        if (v < 0 || v >= g.n) throw std::invalid_argument("bipartite_subgraph: vertex out of range");
        if (side[v] == 1) throw std::invalid_argument("bipartite_subgraph: sides intersect");
        side[v] = 2;
    }
    std::vector<Edge> es;
    for (auto [u, v] : g.edges)
        if ((side[u] == 1 && side[v] == 2) || (side[u] == 2 && side[v] == 1)) es.emplace_back(u, v);
    return Graph(g.n, std::move(es));
}

Graph remove_edge(const Graph& g, Edge e) { return remove_edges(g, {e}); }

Graph remove_edges(const Graph& g, const std::vector<Edge>& es) {
    std::vector<Edge> gone = es;
    for (auto& [u, v] : gone) {
        if (u > v) std::swap(u, v);
        if (!g.has_edge(u, v)) throw std::invalid_argument("remove_edges: edge not present");
    }
    std::sort(gone.begin(), gone.end());
    std::vector<Edge> kept;
    kept.reserve(g.edges.size());
    std::set_difference(g.edges.begin(), g.edges.end(), gone.begin(), gone.end(),
                        std::back_inserter(kept));
    return Graph(g.n, std::move(kept));
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats st;
    st.n = g.n;
    st.edge_count = g.edge_count();
    st.min_degree = g.n > 0 ? g.n : 0;
    int min_noniso = -1;
    long long total = 0;
    for (int v = 0; v < g.n; ++v) {
        int d = g.degree(v);
        total += d;
        st.max_degree = std::max(st.max_degree, d);
        st.min_degree = std::min(st.min_degree, d);
        if (d > 0 && (min_noniso < 0 || d < min_noniso)) min_noniso = d;
        ++st.histogram[d];
    }
    if (g.n == 0) st.min_degree = 0;
    st.min_degree_nonisolated = min_noniso < 0 ? 0 : min_noniso;
    st.mean_degree = g.n > 0 ? static_cast<double>(total) / g.n : 0.0;
    return st;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.n, -1);
    std::vector<std::vector<int>> out;
    std::vector<int> queue;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.push_back({});
        comp[s] = id;
        queue.assign(1, s);
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            out[id].push_back(v);
            for (int u : g.adj[v])
                if (comp[u] < 0) {
                    comp[u] = id;
                    queue.push_back(u);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.n << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges) os << (u + 1) << ' ' << (v + 1) << '\n';
    return os.str();
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream is(text);
    long long n = 0, m = 0;
    if (!(is >> n >> m)) throw std::invalid_argument("parse_edge_list: missing header");
    if (n < 0 || m < 0) throw std::invalid_argument("parse_edge_list: negative header field");
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(is >> u >> v)) throw std::invalid_argument("parse_edge_list: truncated edge list");
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("parse_edge_list: vertex id out of range");
        es.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    long long extra = 0;
    if (is >> extra) throw std::invalid_argument("parse_edge_list: trailing data");
    return Graph(static_cast<int>(n), std::move(es));  // ctor rejects loops/duplicates
}

}  // namespace ertail
