#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "randstruct/errors.hpp"
#include "randstruct/graphs.hpp"
#include "randstruct/stats.hpp"
#include "test_util.hpp"

using namespace rs;

namespace {

Graph complete(std::int64_t n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
    return Graph(n, e);
}

// Tr(A^k) for k = 1..k_max by dense matrix powers in 64-bit integers.
std::vector<std::int64_t> dense_traces(const Graph& g, int k_max) {
    const auto n = std::size_t(g.vertex_count());
    std::vector<std::int64_t> a(n * n, 0), p(n * n, 0), q(n * n);
    for (auto [u, v] : g.edges()) a[std::size_t(u) * n + std::size_t(v)] = a[std::size_t(v) * n + std::size_t(u)] = 1;
    for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
    std::vector<std::int64_t> out;
    for (int k = 1; k <= k_max; ++k) {
        std::fill(q.begin(), q.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (p[i * n + l])
                    for (std::size_t j = 0; j < n; ++j) q[i * n + j] += p[i * n + l] * a[l * n + j];
        p.swap(q);
        std::int64_t t = 0;
        for (std::size_t i = 0; i < n; ++i) t += p[i * n + i];
        out.push_back(t);
    }
    return out;
}

// Brute-force triangles over all vertex triples.
std::int64_t triples(const Graph& g) {
    std::int64_t t = 0;
    const auto n = Vertex(g.vertex_count());
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (g.has_edge(a, b))
                for (Vertex c = b + 1; c < n; ++c) t += g.has_edge(a, c) && g.has_edge(b, c);
    return t;
}

}  // namespace

TEST_CASE("graph construction") {
    Graph g(4, {{0, 1}, {2, 1}});
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), FormatError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), FormatError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), FormatError);
}

TEST_CASE("G(n,p) extremes and edge counts") {
    auto rng = testutil::rng(1);
    CHECK(sample_gnp(10, 0.0, rng).edge_count() == 0);
    CHECK(sample_gnp(10, 1.0, rng).edge_count() == 45);
    CHECK_THROWS_AS(sample_gnp(10, 1.5, rng), InvalidParameter);
    std::vector<double> m;
    for (int r = 0; r < 10000; ++r) m.push_back(double(sample_gnp(100, 0.05, rng).edge_count()));
    CHECK(testutil::mean_within(m, 4950 * 0.05));
}

TEST_CASE("sparse and dense samplers have the same edge-count law") {
    auto rng = testutil::rng(2);
    std::vector<std::int64_t> a(200, 0), b(200, 0);
    for (int r = 0; r < 20000; ++r) {
        ++a[std::size_t(std::clamp<std::int64_t>(sample_gnp(200, 0.05, rng).edge_count() - 895, 0, 199))];
        ++b[std::size_t(std::clamp<std::int64_t>(sample_gnp_dense(200, 0.05, rng).edge_count() - 895, 0, 199))];
    }
    // Edge counts ~ Binomial(19900, 0.05): mean 995, sd ~30.7; cells 895..1094 with clamped tails.
    auto rep = chi_square_two_sample(a, b, 0.01);
    CHECK_MESSAGE(rep.pass, rep.statistic << " > " << rep.threshold);
}

TEST_CASE("components") {
    CHECK(components(Graph(4, {})) == std::vector<std::int64_t>{1, 1, 1, 1});
    CHECK(components(Graph(4, {{0, 1}, {1, 2}})) == std::vector<std::int64_t>{3, 1});
}

TEST_CASE("exploration walk") {
    auto e = explore_luka(Graph(3, {}));
    CHECK(e.walk.increments() == std::vector<std::int64_t>{-1, -1, -1});
    CHECK(e.component_sizes == std::vector<std::int64_t>{1, 1, 1});
    auto k3 = explore_luka(complete(3));
    CHECK(k3.walk.increments() == std::vector<std::int64_t>{1, -1, -1});
    CHECK(k3.component_sizes == std::vector<std::int64_t>{3});
}

TEST_CASE("exploration agrees with union-find and the stack identity") {
    auto rng = testutil::rng(3);
    for (int r = 0; r < 1000; ++r) {
        const std::int64_t n = 1 + std::int64_t(rng.below(200));
        const double c = 0.5 + 2.5 * rng.uniform01();
        auto g = sample_gnp(n, std::min(1.0, c / double(n)), rng);
        auto t = explore_luka(g);
        auto sizes = t.component_sizes;
        std::sort(sizes.rbegin(), sizes.rend());
        const auto comps = components(g);
        REQUIRE(sizes == comps);
        REQUIRE(t.walk.length() == std::size_t(n));
        REQUIRE(t.walk.total() == -std::int64_t(comps.size()));
        std::int64_t inf = 0;
        for (std::size_t k = 0; k < std::size_t(n); ++k) {
            inf = std::min(inf, t.walk.value(k));
            REQUIRE(t.stack_sizes[k] == t.walk.value(k) - inf + 1);
        }
        REQUIRE((comps.size() == 1) == (t.component_sizes.size() == 1 && t.component_sizes[0] == n));
    }
}

TEST_CASE("exploration increments follow the conditional binomial law") {
    // Given the past, increment k+1 is Binomial(n - k - #stack, p) - 1. Pool the
    // probability integral transform over steps and test for uniformity.
    auto rng = testutil::rng(4);
    const std::int64_t n = 10000;
    const double p = 2.0 / double(n);
    std::vector<std::int64_t> cells(10, 0);
    for (int r = 0; r < 5; ++r) {
        auto t = explore_luka(sample_gnp(n, p, rng));
        std::int64_t inf = 0;
        for (std::int64_t k = 0; k < n; ++k) {
            const auto s = t.walk.value(std::size_t(k));
            inf = std::min(inf, s);
            const auto m = n - k - (s - inf + 1);
            const auto x = t.walk.increment(std::size_t(k)) + 1;
            // Randomized PIT: F(x-1) + U * P(x) is exactly uniform.
            double below = 0.0;
            for (std::int64_t j = 0; j < x; ++j) below += binomial_pmf(m, p, j);
            const double u = below + rng.uniform01() * binomial_pmf(m, p, x);
            ++cells[std::size_t(std::min(9.0, std::floor(u * 10.0)))];
        }
    }
    auto rep = chi_square_gof(EmpiricalDist::from_counts(cells), std::vector<double>(10, 0.1), 0.01);
    CHECK_MESSAGE(rep.pass, rep.statistic << " > " << rep.threshold);
}

TEST_CASE("giant component") {
    auto rng = testutil::rng(5);
    auto sub = giant_experiment(100000, 0.5, 5, rng);
    CHECK(sub.largest_fraction.mean < 0.01);
    auto sup = giant_experiment(100000, 2.0, 20, rng);
    CHECK(std::fabs(sup.largest_fraction.mean - giant_fraction(2.0)) < 0.01);
    CHECK(sup.second_fraction.mean < 0.01);
}

TEST_CASE("connectivity window") {
    auto rng = testutil::rng(6);
    for (int r = 0; r < 200; ++r) {
        auto s = connectivity_sample(1000, 0.0, rng);
        REQUIRE((!s.connected || s.no_isolated));
    }
    for (double c : {0.0, 5.0}) {
        auto s = connectivity_experiment(10000, c, 400, rng);
        const double ref = connectivity_limit(c);
        CHECK(std::fabs(s.connected.p - ref) <= 3.0 * std::sqrt(ref * (1 - ref) / 400.0));
        CHECK(s.no_isolated.p >= s.connected.p);
    }
}

TEST_CASE("isolated vertices") {
    auto rng = testutil::rng(7);
    CHECK(isolated_count(Graph(5, {})) == 5);
    std::vector<double> x;
    for (int r = 0; r < 1000000; ++r) x.push_back(double(isolated_count(sample_gnp(3, 0.5, rng))));
    CHECK(testutil::mean_within(x, 0.75));
    const std::int64_t n = 10000;
    const double p = std::log(double(n)) / double(n);
    std::vector<double> y;
    for (int r = 0; r < 1000; ++r) y.push_back(double(isolated_count(sample_gnp(n, p, rng))));
    CHECK(testutil::mean_within(y, double(n) * std::pow(1 - p, double(n - 1))));
}

TEST_CASE("cliques") {
    CHECK(clique_greedy(complete(10)) == 10);
    CHECK(clique_max_exact(complete(10)) == 10);
    CHECK(clique_greedy(Graph(6, {})) == 1);
    CHECK(clique_max_exact(Graph(6, {})) == 1);
    CHECK(clique_max_exact(Graph(0, {})) == 0);
    CHECK_THROWS_AS(clique_max_exact(Graph(41, {})), ResourceError);
    // Path 0-1 plus triangle 2-3-4: greedy keeps {0,1}, exact finds 3.
    Graph g(5, {{0, 1}, {2, 3}, {3, 4}, {2, 4}});
    CHECK(clique_greedy(g) == 2);
    CHECK(clique_max_exact(g) == 3);

    auto rng = testutil::rng(8);
    double ratio = 0.0;
    for (int r = 0; r < 20; ++r) {
        auto big = sample_gnp(2000, 0.5, rng);
        ratio += double(clique_greedy(big)) / std::log2(2000.0) / 20.0;
        auto small = induced_prefix(big, 40);
        CHECK(clique_max_exact(small) >= clique_greedy(small));
    }
    CHECK(ratio >= 0.85);
    CHECK(ratio <= 1.15);
}

TEST_CASE("greedy independent set") {
    CHECK(independent_greedy(Graph(5, {})).size == 5);
    CHECK(independent_greedy(complete(6)).size == 1);
    auto rng = testutil::rng(9);
    const std::int64_t n = 100000;
    auto r = independent_greedy(sample_gnp(n, 1.0 / double(n), rng));
    CHECK(std::fabs(double(r.size) / double(n) - std::log(2.0)) < 0.01);
    REQUIRE(r.untouched.size() == std::size_t(r.size) + 1);
    double sup = 0.0;
    for (std::size_t k = 0; k < r.untouched.size(); ++k)
        sup = std::max(sup, std::fabs(double(r.untouched[k]) / double(n) - independent_fluid(1.0, double(k) / double(n))));
    CHECK(sup < 0.02);
    CHECK(independent_fluid(1.0, 0.0) == doctest::Approx(1.0));
    CHECK(independent_fluid(1.0, 1.0) == 0.0);
}

TEST_CASE("triangles") {
    CHECK(triangle_count(complete(4)) == 4);
    CHECK(triangle_count(Graph(4, {{0, 1}, {1, 2}, {1, 3}})) == 0);
    auto rng = testutil::rng(10);
    for (int r = 0; r < 200; ++r) {
        auto g = sample_gnp(30, 0.3, rng);
        REQUIRE(triangle_count(g) == triples(g));
    }
    const std::int64_t n = 3000;
    std::vector<std::int64_t> t;
    for (int r = 0; r < 10000; ++r) t.push_back(triangle_count(sample_gnp(n, 1.5 / double(n), rng)));
    auto rep = chi_square_gof(EmpiricalDist::tabulate(t, 0, 8), [](std::int64_t k) { return poisson_pmf(0.5625, k); }, 0.01);
    CHECK_MESSAGE(rep.pass, rep.statistic << " > " << rep.threshold);
}

TEST_CASE("spectral moments") {
    auto rng = testutil::rng(11);
    for (int r = 0; r < 300; ++r) {
        const std::int64_t n = 1 + std::int64_t(rng.below(9));
        auto g = sample_gnp(n, rng.uniform01(), rng);
        auto s = spectral_moments(g, 12);
        auto d = dense_traces(g, 12);
        REQUIRE(s.traces[0] == 0);
        REQUIRE(s.traces[1] == 2 * g.edge_count());
        REQUIRE(s.traces[2] == 6 * triangle_count(g));
        for (int k = 0; k < 12; ++k) {
            REQUIRE(s.traces[std::size_t(k)] == d[std::size_t(k)]);
            if (k % 2 == 1) REQUIRE(s.moments[std::size_t(k)] >= 0.0);
        }
    }
    CHECK_THROWS_AS(spectral_moments(complete(50), 12, 1000.0), ResourceError);
    CHECK_THROWS_AS(spectral_moments(complete(3), 0), InvalidParameter);

    // Expectations at n = 7: E[Tr A^2]/n = (n-1)p, E[Tr A^3]/n = (n-1)(n-2)p^3.
    const std::int64_t n = 7;
    const double p = 0.3;
    std::vector<double> m2, m3;
    for (int r = 0; r < 10000; ++r) {
        auto s = spectral_moments(sample_gnp(n, p, rng), 3);
        m2.push_back(s.moments[1]);
        m3.push_back(s.moments[2]);
    }
    CHECK(testutil::mean_within(m2, double(n - 1) * p));
    CHECK(testutil::mean_within(m3, double((n - 1) * (n - 2)) * p * p * p));
}

TEST_CASE("spectral moments in the sparse regime") {
    auto rng = testutil::rng(12);
    const std::int64_t n = 2000;
    const double p = 2.0 / double(n);
    std::vector<double> m2, m3;
    for (int r = 0; r < 20; ++r) {
        auto s = spectral_moments(sample_gnp(n, p, rng), 4);
        m2.push_back(s.moments[1]);
        m3.push_back(s.moments[2]);
    }
    CHECK(testutil::mean_within(m2, double(n - 1) * p));
    CHECK(testutil::mean_within(m3, double((n - 1) * (n - 2)) * p * p * p, 4.0));
}

TEST_CASE("stacked walk") {
    auto rng = testutil::rng(13);
    auto w = stacked_walk(1000, 0.002, rng);
    for (std::size_t k = 1; k < w.length(); ++k) REQUIRE(w.value(k) + std::int64_t(k) >= w.value(k - 1) + std::int64_t(k - 1));
    const std::int64_t n = 100000;
    auto big = stacked_walk(n, 2.0 / double(n), rng);
    CHECK(fluid_sup_distance(big, n, [](double t) { return stacked_fluid(2.0, t); }) < 0.02);
    std::vector<std::int64_t> first;
    for (int r = 0; r < 100000; ++r) first.push_back(stacked_walk(100, 0.05, rng).increment(0) + 1);
    auto rep = chi_square_gof(EmpiricalDist::tabulate(first, 0, 15), [](std::int64_t k) { return binomial_pmf(100, 0.05, k); }, 0.01);
    CHECK_MESSAGE(rep.pass, rep.statistic << " > " << rep.threshold);
}

TEST_CASE("Poissonized walk") {
    auto rng = testutil::rng(14);
    std::vector<std::int64_t> total, first;
    for (int r = 0; r < 100000; ++r) {
        auto w = poissonized_walk(5.0, 0.1, rng, 400);
        total.push_back(w.total() + std::int64_t(w.length()));
        first.push_back(w.increment(0) + 1);
    }
    auto rt = chi_square_gof(EmpiricalDist::tabulate(total, 0, 20), [](std::int64_t k) { return poisson_pmf(5.0, k); }, 0.01);
    CHECK_MESSAGE(rt.pass, rt.statistic);
    auto rf = chi_square_gof(EmpiricalDist::tabulate(first, 0, 6), [](std::int64_t k) { return poisson_pmf(0.5, k); }, 0.01);
    CHECK_MESSAGE(rf.pass, rf.statistic);

    // Critical window scaling: max of S over k <= 5 n^{2/3}, divided by n^{1/3}.
    const double n = 10000;
    const auto kmax = std::int64_t(5.0 * std::pow(n, 2.0 / 3.0));
    std::vector<double> peaks;
    for (int r = 0; r < 1000; ++r) {
        auto w = poissonized_walk(n, 1.0 / n, rng, kmax);
        std::int64_t best = 0;
        for (std::size_t k = 0; k <= w.length(); ++k) best = std::max(best, w.value(k));
        peaks.push_back(double(best) / std::cbrt(n));
    }
    std::nth_element(peaks.begin(), peaks.begin() + 500, peaks.end());
    CHECK(peaks[500] >= 0.3);
    CHECK(peaks[500] <= 3.0);
}

TEST_CASE("graph text format") {
    Graph g(4, {{0, 1}, {2, 3}, {1, 3}});
    std::stringstream ss;
    write_graph(ss, g);
    CHECK(ss.str() == "4 3\n1 2\n2 4\n3 4\n");
    auto back = read_graph(ss);
    CHECK(back.edges() == g.edges());
    std::stringstream bad("3 2\n1 2\n");
    CHECK_THROWS_AS(read_graph(bad), FormatError);
    std::stringstream oob("3 1\n1 4\n");
    CHECK_THROWS_AS(read_graph(oob), FormatError);
}
