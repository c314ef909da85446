#include "randstruct/graphs.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

namespace rs {

// ---- Graph -------------------------------------------------------------------

Graph::Graph(std::int64_t n, std::vector<Edge> edges) : n_(n) {
    if (n < 0 || n > INT32_MAX - 1) throw FormatError("Graph: vertex count out of range");
    const auto N = static_cast<std::size_t>(n);
    std::vector<std::size_t> deg(N + 1, 0);
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError("Graph: endpoint out of range");
        if (u == v) throw FormatError("Graph: loops are not allowed");
        ++deg[static_cast<std::size_t>(u) + 1];
        ++deg[static_cast<std::size_t>(v) + 1];
    }
    std::partial_sum(deg.begin(), deg.end(), deg.begin());
    off_ = deg;
    adj_.assign(off_.back(), 0);
    auto pos = off_;
    for (auto& [u, v] : edges) {
        adj_[pos[u]++] = v;
        adj_[pos[v]++] = u;
    }
    for (std::size_t v = 0; v < N; ++v) {
        auto b = adj_.begin() + static_cast<std::ptrdiff_t>(off_[v]);
        auto e = adj_.begin() + static_cast<std::ptrdiff_t>(off_[v + 1]);
        std::sort(b, e);
        if (std::adjacent_find(b, e) != e) throw FormatError("Graph: duplicate edge");
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(adj_.size() / 2);
    for (Vertex u = 0; u < n_; ++u)
        for (auto v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph sample_gnp(std::int64_t n, double p, RngStream& rng) {
    std::vector<Edge> edges;
    if (n >= 2 && p > 0.0) edges.reserve(static_cast<std::size_t>(p * 0.5 * double(n) * double(n - 1) * 1.1 + 16));
    for_each_gnp_edge(n, p, rng, [&](Vertex u, Vertex v) { edges.emplace_back(v, u); });
    return Graph(n, std::move(edges));
}

Graph sample_gnp_dense(std::int64_t n, double p, RngStream& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("G(n,p): p must lie in [0, 1]");
    std::vector<Edge> edges;
    for (std::int64_t u = 1; u < n; ++u)
        for (std::int64_t v = 0; v < u; ++v)
            if (rng.uniform01() < p) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(u));
    return Graph(n, std::move(edges));
}

std::vector<std::int64_t> components(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    DisjointSets ds(n);
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (auto v : g.neighbors(u))
            if (u < v) ds.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    std::vector<std::int64_t> sizes;
    for (std::size_t v = 0; v < n; ++v)
        if (ds.find(v) == v) sizes.push_back(static_cast<std::int64_t>(ds.set_size(v)));
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

ExplorationTrace explore_luka(const Graph& g) {
    const auto n = g.vertex_count();
    ExplorationTrace tr;
    std::vector<std::int64_t> inc;
    inc.reserve(static_cast<std::size_t>(n));
    tr.stack_sizes.reserve(static_cast<std::size_t>(n));
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> stack;
    Vertex next_fresh = 0;
    auto refill = [&](std::int64_t time) {
        while (next_fresh < n && touched[next_fresh]) ++next_fresh;
        if (next_fresh < n) {
            touched[next_fresh] = true;
            stack.push(next_fresh);
            tr.component_starts.push_back(time);
        }
    };
    refill(0);
    for (std::int64_t k = 0; k < n; ++k) {
        tr.stack_sizes.push_back(static_cast<std::int64_t>(stack.size()));
        const Vertex x = stack.top();
        stack.pop();
        std::int64_t found = 0;
        for (auto y : g.neighbors(x))
            if (!touched[y]) {
                touched[y] = true;
                stack.push(y);
                ++found;
            }
        inc.push_back(found - 1);
        if (stack.empty()) {
            tr.component_sizes.push_back(k + 1 - tr.component_starts.back());
            refill(k + 1);
        }
    }
    tr.walk = LatticePath(std::move(inc));
    return tr;
}

std::int64_t isolated_count(const Graph& g) {
    std::int64_t c = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) c += g.degree(v) == 0;
    return c;
}

std::int64_t clique_greedy(const Graph& g) {
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        bool ok = true;
        for (auto u : kept)
            if (!g.has_edge(v, u)) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(v);
    }
    return static_cast<std::int64_t>(kept.size());
}

std::int64_t clique_max_exact(const Graph& g) {
    const auto n = g.vertex_count();
    if (n > 40) throw ResourceError("clique_max_exact: n must be <= 40");
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u)
        for (auto v : g.neighbors(u)) adj[u] |= std::uint64_t{1} << v;
    int best = 0;
    // Branch on the lowest candidate: include it or drop it.
    std::function<void(int, std::uint64_t)> expand = [&](int size, std::uint64_t cand) {
        if (cand == 0) {
            best = std::max(best, size);
            return;
        }
        if (size + std::popcount(cand) <= best) return;
        const int v = std::countr_zero(cand);
        const std::uint64_t bit = std::uint64_t{1} << v;
        expand(size + 1, cand & adj[static_cast<std::size_t>(v)]);
        expand(size, cand & ~bit);
    };
    expand(0, n == 0 ? 0 : (n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1));
    return best;
}

Graph induced_prefix(const Graph& g, std::int64_t k) {
    if (k < 0 || k > g.vertex_count()) throw InvalidParameter("induced_prefix: k out of range");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < k; ++u)
        for (auto v : g.neighbors(u))
            if (u < v && v < k) edges.emplace_back(u, v);
    return Graph(k, std::move(edges));
}

IndependentSetResult independent_greedy(const Graph& g) {
    const auto n = g.vertex_count();
    IndependentSetResult r;
    std::vector<bool> gone(static_cast<std::size_t>(n), false);
    std::int64_t left = n;
    r.untouched.push_back(left);
    for (Vertex v = 0; v < n; ++v) {
        if (gone[v]) continue;
        gone[v] = true;
        --left;
        for (auto u : g.neighbors(v))
            if (!gone[u]) {
                gone[u] = true;
                --left;
            }
        ++r.size;
        r.untouched.push_back(left);
    }
    return r;
}

double independent_fluid(double c, double t) {
    if (!(c > 0.0)) throw InvalidParameter("independent_fluid: c must be > 0");
    const double v = (1.0 + c - std::exp(c * t)) * std::exp(-c * t) / c;
    return std::max(v, 0.0);
}

std::int64_t triangle_count(const Graph& g) {
    std::int64_t t = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        auto nu = g.neighbors(u);
        for (auto v : nu) {
            if (v <= u) continue;
            auto nv = g.neighbors(v);
            // Count common neighbours w > v.
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b) ++a;
                else if (*b < *a) ++b;
                else ++t, ++a, ++b;
            }
        }
    }
    return t;
}

namespace {

BigCount to_big(unsigned __int128 x) {
    BigCount hi = static_cast<std::uint64_t>(x >> 64);
    return (hi << 64) + BigCount(static_cast<std::uint64_t>(x));
}

}  // namespace

SpectralMoments spectral_moments(const Graph& g, int k_max, double budget) {
    if (k_max < 1 || k_max > 12) throw InvalidParameter("spectral_moments: k_max must lie in 1..12");
    const auto n = g.vertex_count();
    const double work = double(n) * (double(n) + 2.0 * double(g.edge_count())) * k_max;
    if (work > budget) throw ResourceError("spectral_moments: work exceeds the budget");
    std::int64_t dmax = 0;
    for (Vertex v = 0; v < n; ++v) dmax = std::max(dmax, g.degree(v));
    // Walk counts are bounded by dmax^k; keep them inside 127 bits.
    if (dmax > 1 && k_max * std::log2(double(dmax)) >= 126.0)
        throw ResourceError("spectral_moments: walk counts would overflow");
    SpectralMoments sm;
    sm.k_max = k_max;
    std::vector<unsigned __int128> trace(static_cast<std::size_t>(k_max), 0);
    std::vector<unsigned __int128> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (Vertex s = 0; s < n; ++s) {
        std::fill(x.begin(), x.end(), 0);
        x[s] = 1;
        for (int k = 0; k < k_max; ++k) {
            for (Vertex v = 0; v < n; ++v) {
                unsigned __int128 acc = 0;
                for (auto u : g.neighbors(v)) acc += x[u];
                y[v] = acc;
            }
            std::swap(x, y);
            trace[static_cast<std::size_t>(k)] += x[s];
        }
    }
    for (int k = 0; k < k_max; ++k) {
        sm.traces.push_back(to_big(trace[static_cast<std::size_t>(k)]));
        sm.moments.push_back(n ? to_double(sm.traces.back()) / double(n) : 0.0);
    }
    return sm;
}

// ---- experiments -------------------------------------------------------------

GiantSample giant_sample(std::int64_t n, double c, RngStream& rng) {
    if (!(c > 0.0)) throw InvalidParameter("giant: c must be > 0");
    if (n < 1) throw InvalidParameter("giant: n must be >= 1");
    DisjointSets ds(static_cast<std::size_t>(n));
    for_each_gnp_edge(n, std::min(1.0, c / double(n)), rng,
                      [&](Vertex u, Vertex v) { ds.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v)); });
    GiantSample s;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
        if (ds.find(v) != v) continue;
        auto sz = static_cast<std::int64_t>(ds.set_size(v));
        if (sz > s.largest) s.second = s.largest, s.largest = sz;
        else if (sz > s.second) s.second = sz;
    }
    return s;
}

GiantSummary giant_experiment(std::int64_t n, double c, std::int64_t reps, RngStream& rng, double level) {
    if (reps < 2) throw InvalidParameter("giant_experiment: reps must be >= 2");
    std::vector<double> a, b;
    for (std::int64_t r = 0; r < reps; ++r) {
        auto s = giant_sample(n, c, rng);
        a.push_back(double(s.largest) / double(n));
        b.push_back(double(s.second) / double(n));
    }
    return {mean_ci(a, level), mean_ci(b, level)};
}

ConnectivitySample connectivity_sample(std::int64_t n, double c, RngStream& rng) {
    if (n < 2) throw InvalidParameter("connectivity: n must be >= 2");
    const double p = (std::log(double(n)) + c) / double(n);
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("connectivity: (log n + c)/n must lie in [0, 1]");
    DisjointSets ds(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> has_edge(static_cast<std::size_t>(n), 0);
    for_each_gnp_edge(n, p, rng, [&](Vertex u, Vertex v) {
        ds.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        has_edge[u] = has_edge[v] = 1;
    });
    ConnectivitySample s;
    s.connected = ds.set_count() == 1;
    s.no_isolated = std::all_of(has_edge.begin(), has_edge.end(), [](std::uint8_t b) { return b != 0; });
    if (s.connected && !s.no_isolated) throw InvalidTest("connectivity: connected graph with an isolated vertex");
    return s;
}

ConnectivitySummary connectivity_experiment(std::int64_t n, double c, std::int64_t reps, RngStream& rng) {
    if (reps < 1) throw InvalidParameter("connectivity_experiment: reps must be >= 1");
    std::int64_t conn = 0, noiso = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        auto s = connectivity_sample(n, c, rng);
        conn += s.connected;
        noiso += s.no_isolated;
    }
    return {proportion(conn, reps), proportion(noiso, reps)};
}

// ---- walks from graph models ---------------------------------------------------

LatticePath stacked_walk(std::int64_t n, double p, RngStream& rng) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("stacked_walk: p must lie in (0, 1)");
    if (n < 0) throw InvalidParameter("stacked_walk: n must be >= 0");
    const double log_q = std::log1p(-p);
    // k_i is the first k with U_i <= 1 - (1-p)^k.
    std::vector<std::int64_t> absorbed(static_cast<std::size_t>(n) + 2, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        const double k = std::max(1.0, std::ceil(std::log1p(-u) / log_q));
        if (k > 1e12) throw ResourceError("stacked_walk: absorption time too large");
        const auto ki = static_cast<std::size_t>(k);
        if (ki >= absorbed.size()) absorbed.resize(ki + 1, 0);
        ++absorbed[ki];
    }
    const std::size_t len = std::max<std::size_t>(static_cast<std::size_t>(n), absorbed.size() - 1);
    absorbed.resize(len + 1, 0);
    std::vector<std::int64_t> inc(len);
    for (std::size_t k = 1; k <= len; ++k) inc[k - 1] = absorbed[k] - 1;
    return LatticePath(std::move(inc));
}

LatticePath poissonized_walk(double alpha, double p, RngStream& rng, std::int64_t k_max) {
    if (!(alpha > 0.0)) throw InvalidParameter("poissonized_walk: alpha must be > 0");
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("poissonized_walk: p must lie in (0, 1)");
    if (k_max < 0) throw InvalidParameter("poissonized_walk: k_max must be >= 0");
    std::vector<std::int64_t> inc(static_cast<std::size_t>(k_max));
    const double log_q = std::log1p(-p);
    for (std::int64_t k = 1; k <= k_max; ++k)
        inc[static_cast<std::size_t>(k - 1)] = poisson(rng, alpha * p * std::exp(double(k - 1) * log_q)) - 1;
    return LatticePath(std::move(inc));
}

double stacked_fluid(double c, double t) { return 1.0 - std::exp(-c * t) - t; }

double fluid_sup_distance(const LatticePath& walk, std::int64_t n, const std::function<double(double)>& curve) {
    if (static_cast<std::int64_t>(walk.length()) < n) throw InvalidParameter("fluid_sup_distance: walk shorter than n");
    double sup = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        const double t = double(k) / double(n);
        sup = std::max(sup, std::fabs(double(walk.value(static_cast<std::size_t>(k))) / double(n) - curve(t)));
    }
    return sup;
}

// ---- serialization -------------------------------------------------------------

void write_graph(std::ostream& os, const Graph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) os << u + 1 << ' ' << v + 1 << '\n';
}

Graph read_graph(std::istream& is) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        return false;
    };
    if (!next_line()) throw FormatError("read_graph: missing header");
    std::int64_t n = -1, m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0) throw FormatError("read_graph: bad header");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        if (!next_line()) throw FormatError("read_graph: fewer edges than declared");
        std::istringstream es(line);
        std::int64_t u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) throw FormatError("read_graph: bad edge line");
        if (u < 1 || v < 1 || u > n || v > n) throw FormatError("read_graph: label out of range");
        edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    }
    if (next_line()) throw FormatError("read_graph: more edges than declared");
    return Graph(n, std::move(edges));
}

}  // namespace rs
