#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "randstruct/errors.hpp"
#include "randstruct/exact.hpp"
#include "randstruct/rng.hpp"
#include "randstruct/stats.hpp"
#include "randstruct/walks.hpp"

namespace rs {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph in compressed sparse rows. Vertex v is stored at
// index v, 0-based; the external label is v + 1.
class Graph {
public:
    Graph() = default;
    // Throws FormatError on loops, duplicates or out-of-range endpoints.
    Graph(std::int64_t n, std::vector<Edge> edges);

    std::int64_t vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size() / 2); }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
    }
    std::int64_t degree(Vertex v) const { return static_cast<std::int64_t>(off_[v + 1] - off_[v]); }
    bool has_edge(Vertex u, Vertex v) const;
    // Edges (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

private:
    std::int64_t n_ = 0;
    std::vector<std::size_t> off_{0};
    std::vector<Vertex> adj_;
};

// Union by size with path halving.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --sets_;
        return true;
    }
    std::size_t set_size(std::size_t x) { return size_[find(x)]; }
    std::size_t set_count() const { return sets_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t sets_;
};

// Calls f(u, v), u > v, once for each present pair of G(n, p), in
// lexicographic order of (u, v). Geometric gap skipping when p < 0.1,
// one Bernoulli per pair otherwise.
template <class F>
void for_each_gnp_edge(std::int64_t n, double p, RngStream& rng, F&& f) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("G(n,p): p must lie in [0, 1]");
    if (n < 0) throw InvalidParameter("G(n,p): n must be >= 0");
    if (p == 0.0 || n < 2) return;
    if (p >= 0.1) {
        for (std::int64_t u = 1; u < n; ++u)
            for (std::int64_t v = 0; v < u; ++v)
                if (rng.uniform01() < p) f(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return;
    }
    const double log_q = std::log1p(-p);
    std::int64_t u = 1, v = -1;
    for (;;) {
        // Number of absent pairs before the next present one is Geometric(p) on {0,1,...}.
        const double gap = std::floor(std::log(rng.uniform_pos()) / log_q);
        if (gap >= 9.0e15) return;
        v += 1 + static_cast<std::int64_t>(gap);
        while (v >= u && u < n) {
            v -= u;
            ++u;
        }
        if (u >= n) return;
        f(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
}

Graph sample_gnp(std::int64_t n, double p, RngStream& rng);
// Reference sampler: one Bernoulli per pair regardless of p.
Graph sample_gnp_dense(std::int64_t n, double p, RngStream& rng);

// Component sizes, descending, by union-find.
std::vector<std::int64_t> components(const Graph& g);

struct ExplorationTrace {
    LatticePath walk;                            // length n
    std::vector<std::int64_t> stack_sizes;       // #stack at times 0..n-1
    std::vector<std::int64_t> component_sizes;   // excursion lengths, in exploration order
    std::vector<std::int64_t> component_starts;  // time at which each excursion starts
};
// Stack exploration that always explores the minimal label in the stack and,
// when the stack empties, adds the minimal untouched label.
ExplorationTrace explore_luka(const Graph& g);

std::int64_t isolated_count(const Graph& g);
std::int64_t clique_greedy(const Graph& g);
// Throws ResourceError when n > 40.
std::int64_t clique_max_exact(const Graph& g);
// Subgraph induced by vertices 0..k-1.
Graph induced_prefix(const Graph& g, std::int64_t k);

struct IndependentSetResult {
    std::int64_t size = 0;
    std::vector<std::int64_t> untouched;  // |U_k| for k = 0..size
};
IndependentSetResult independent_greedy(const Graph& g);
// ((1 + c - e^{ct}) e^{-ct} / c) v 0
double independent_fluid(double c, double t);

std::int64_t triangle_count(const Graph& g);

struct SpectralMoments {
    int k_max = 0;
    std::vector<BigCount> traces;  // traces[k-1] = Tr(A^k)
    std::vector<double> moments;   // moments[k-1] = Tr(A^k) / n
};
// Budget on n * (n + 2m) * k_max; ResourceError beyond it.
SpectralMoments spectral_moments(const Graph& g, int k_max, double budget = 5e10);

struct GiantSample {
    std::int64_t largest = 0;
    std::int64_t second = 0;
};
GiantSample giant_sample(std::int64_t n, double c, RngStream& rng);
struct GiantSummary {
    MeanCi largest_fraction;
    MeanCi second_fraction;
};
GiantSummary giant_experiment(std::int64_t n, double c, std::int64_t reps, RngStream& rng,
                              double level = 0.95);

struct ConnectivitySample {
    bool connected = false;
    bool no_isolated = false;
};
// One G(n, (log n + c)/n). Throws InvalidTest if connected but some vertex is isolated.
ConnectivitySample connectivity_sample(std::int64_t n, double c, RngStream& rng);
struct ConnectivitySummary {
    Proportion connected;
    Proportion no_isolated;
};
ConnectivitySummary connectivity_experiment(std::int64_t n, double c, std::int64_t reps, RngStream& rng);

// Coupled walk S_k = #{i : U_i <= 1 - (1-p)^k} - k, for k up to the time the
// last uniform is absorbed (and at least n).
LatticePath stacked_walk(std::int64_t n, double p, RngStream& rng);
// Increments + 1 independent Poisson(alpha p (1-p)^{k-1}), k = 1..k_max.
LatticePath poissonized_walk(double alpha, double p, RngStream& rng, std::int64_t k_max);
// sup over k in 0..n of |S_k/n - curve(k/n)|.
double fluid_sup_distance(const LatticePath& walk, std::int64_t n, const std::function<double(double)>& curve);
// 1 - e^{-ct} - t, the fluid limit of the stacked walk on all of [0, 1].
double stacked_fluid(double c, double t);

// Header "n m", then one "u v" line per edge, 1-based, u < v.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

}  // namespace rs
