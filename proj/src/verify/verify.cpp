#include "randstruct/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "randstruct/errors.hpp"
#include "randstruct/exact.hpp"
#include "randstruct/experiments.hpp"
#include "randstruct/graphs.hpp"
#include "randstruct/growth.hpp"
#include "randstruct/perms.hpp"
#include "randstruct/rng.hpp"
#include "randstruct/stats.hpp"
#include "randstruct/trees.hpp"
#include "randstruct/walks.hpp"

namespace rs {

namespace {

constexpr double kLevel = 0.01;

struct Ctx {
    const VerifyOptions& opts;
    int id;
    std::uint64_t next = 0;

    bool full() const { return opts.suite == Suite::full; }
    std::int64_t reps(std::int64_t full_reps, std::int64_t fast_reps) const { return full() ? full_reps : fast_reps; }
    RngStream stream() { return make_stream(opts.seed, 1000u * static_cast<std::uint64_t>(id) + next++); }
    Report run(const std::string& name, ParamMap params, std::int64_t reps) {
        ExperimentConfig cfg;
        cfg.experiment = name;
        cfg.params = std::move(params);
        cfg.seed = opts.seed + static_cast<std::uint64_t>(id) * 7919u + next++;
        cfg.reps = reps;
        cfg.workers = opts.workers;
        return run_experiment(cfg);
    }
};

// Sub-checks of one criterion; the criterion passes when all of them do.
struct Checks {
    bool pass = true;
    std::string detail;
    std::vector<SubCheck> items;
    void add(bool ok, const std::string& what) {
        pass = pass && ok;
        items.push_back({ok, what});
        detail += (detail.empty() ? "" : "; ") + std::string(ok ? "" : "FAILED ") + what;
    }
};

std::string num(double v) { return format_number(v); }

std::string report_test(const TestReport& t) {
    return "stat " + num(t.statistic) + " vs " + num(t.threshold) + " (dof " + std::to_string(t.dof) + ")";
}

const Verdict& verdict(const Report& r, const std::string& name) {
    for (const auto& v : r.summary.verdicts)
        if (v.name == name) return v;
    throw NumericError("verification: experiment " + r.config.experiment + " has no verdict " + name);
}

std::vector<double> column(const Report& r, std::size_t i) {
    std::vector<double> out;
    for (const auto& rep : r.reps) out.push_back(rep.values.at(i));
    return out;
}

double mean(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size()); }

double std_error(const std::vector<double>& xs) {
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
}

// ---- enumeration oracles ----------------------------------------------------------

// Child-count words (c_1..c_V) of plane forests with f trees in depth-first
// order: partial sums of c_i - 1 stay above -f until the last letter hits -f.
void forest_words(std::int64_t f, std::int64_t vertices, const std::function<void(const std::vector<std::int64_t>&)>& emit) {
    std::vector<std::int64_t> w;
    std::function<void(std::int64_t)> rec = [&](std::int64_t sum) {
        const auto left = vertices - static_cast<std::int64_t>(w.size());
        if (left == 0) {
            if (sum == -f) emit(w);
            return;
        }
        // The remaining letters lower the sum by at most one each.
        for (std::int64_t c = 0; sum + c - 1 - (left - 1) <= -f; ++c) {
            const auto s = sum + c - 1;
            if (left > 1 && s <= -f) continue;
            w.push_back(c);
            rec(s);
            w.pop_back();
        }
    };
    rec(0);
}

// Spanning trees of K_n as sorted edge lists, by brute force over edge subsets.
std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> spanning_trees(std::int64_t n) {
    std::vector<std::pair<std::int64_t, std::int64_t>> all;
    for (std::int64_t u = 1; u <= n; ++u)
        for (std::int64_t v = u + 1; v <= n; ++v) all.emplace_back(u, v);
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> out;
    const auto m = static_cast<std::size_t>(n - 1);
    if (m == 0) return {{}};
    std::vector<bool> pick(all.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
        DisjointSets ds(static_cast<std::size_t>(n + 1));
        std::vector<std::pair<std::int64_t, std::int64_t>> es;
        bool acyclic = true;
        for (std::size_t i = 0; i < all.size() && acyclic; ++i)
            if (pick[i]) {
                acyclic = ds.unite(static_cast<std::size_t>(all[i].first), static_cast<std::size_t>(all[i].second));
                es.push_back(all[i]);
            }
        if (acyclic) out.push_back(es);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Forests on {1..n} whose k trees are rooted at 1..k: parent maps of the
// non-roots in which every vertex reaches a root.
BigCount rooted_forests(std::int64_t k, std::int64_t n) {
    const auto free = n - k;
    std::vector<std::int64_t> parent(static_cast<std::size_t>(n + 1), 0);
    std::vector<std::int64_t> digits(static_cast<std::size_t>(free), 1);
    BigCount count = 0;
    for (;;) {
        for (std::int64_t i = 0; i < free; ++i) parent[static_cast<std::size_t>(k + 1 + i)] = digits[static_cast<std::size_t>(i)];
        bool ok = true;
        for (std::int64_t v = k + 1; v <= n && ok; ++v) {
            auto u = v;
            for (std::int64_t steps = 0; u > k && ok; ++steps) {
                u = parent[static_cast<std::size_t>(u)];
                ok = steps < n;
            }
        }
        if (ok) ++count;
        std::int64_t i = 0;
        while (i < free && digits[static_cast<std::size_t>(i)] == n) digits[static_cast<std::size_t>(i++)] = 1;
        if (i == free) break;
        ++digits[static_cast<std::size_t>(i)];
    }
    return count;
}

// ---- criteria ----------------------------------------------------------------------

Checks exact_counts(Ctx&) {
    Checks c;
    bool cat = true, profiles = true, forests = true, cayley = true, cforests = true;
    for (std::int64_t v = 1; v <= 9; ++v) {
        std::map<std::vector<std::int64_t>, BigCount> by_profile;
        BigCount trees = 0;
        forest_words(1, v, [&](const std::vector<std::int64_t>& w) {
            ++trees;
            std::vector<std::int64_t> d(static_cast<std::size_t>(v), 0);
            for (auto x : w) ++d[static_cast<std::size_t>(x)];
            ++by_profile[d];
        });
        cat = cat && trees == catalan(v - 1);
        // Every composition of v into child-count multiplicities, valid or not.
        std::vector<std::int64_t> d(static_cast<std::size_t>(v), 0);
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
            if (i + 1 == d.size()) {
                d[i] = left;
                std::map<std::int64_t, std::int64_t> prof;
                for (std::size_t j = 0; j < d.size(); ++j)
                    if (d[j]) prof[static_cast<std::int64_t>(j)] = d[j];
                auto it = by_profile.find(d);
                const BigCount want = it == by_profile.end() ? BigCount(0) : it->second;
                profiles = profiles && plane_trees_with_degree_profile(prof) == want;
                return;
            }
            for (std::int64_t x = 0; x <= left; ++x) {
                d[i] = x;
                rec(i + 1, left - x);
            }
        };
        rec(0, v);
    }
    for (std::int64_t f = 1; f <= 9; ++f)
        for (std::int64_t e = 0; e + f <= 9; ++e) {
            BigCount count = 0;
            forest_words(f, e + f, [&](const std::vector<std::int64_t>&) { ++count; });
            forests = forests && count == plane_forest_count(f, e);
        }
    for (std::int64_t n = 1; n <= 8; ++n) {
        cayley = cayley && BigCount(spanning_trees(n).size()) == cayley_count(n);
        for (std::int64_t k = 1; k <= n; ++k) cforests = cforests && rooted_forests(k, n) == cayley_forest_count(k, n);
    }
    c.add(cat, "catalan vs enumerated plane trees, up to 8 edges");
    c.add(profiles, "degree-profile counts vs enumeration, up to 9 vertices");
    c.add(forests, "plane forest counts vs enumeration, up to 9 vertices");
    c.add(cayley, "cayley_count vs spanning trees of K_n, n <= 8");
    c.add(cforests, "cayley_forest_count vs rooted parent maps, n <= 8");
    return c;
}

Checks cycle_lemma(Ctx&) {
    Checks c;
    std::int64_t checked = 0, bad_lib = 0, bad_oracle = 0;
    for (std::size_t n = 1; n <= 10; ++n) {
        std::vector<std::int64_t> inc(n, -1);
        for (;;) {
            const auto total = std::accumulate(inc.begin(), inc.end(), std::int64_t{0});
            if (total <= -1 && total >= -3) {
                const auto k = -total;
                ++checked;
                if (good_shift_count(inc.data(), n) != k) ++bad_lib;
                // Oracle: rotations whose walk first reaches -k at the last step.
                std::int64_t good = 0;
                for (std::size_t l = 0; l < n; ++l) {
                    std::int64_t s = 0;
                    bool early = false;
                    for (std::size_t i = 0; i + 1 < n && !early; ++i) {
                        s += inc[(l + i) % n];
                        early = s <= -k;
                    }
                    if (!early) ++good;
                }
                if (good != k) ++bad_oracle;
            }
            std::size_t i = 0;
            while (i < n && inc[i] == 2) inc[i++] = -1;
            if (i == n) break;
            ++inc[i];
        }
    }
    c.add(bad_lib == 0, std::to_string(checked) + " sequences, good_shift_count mismatches " + std::to_string(bad_lib));
    c.add(bad_oracle == 0, "rotation oracle mismatches " + std::to_string(bad_oracle));
    return c;
}

// Independent Kemperman sides by dynamic programming over the walk level.
std::pair<ExactProb, ExactProb> kemperman_dp(const std::vector<std::pair<std::int64_t, ExactProb>>& atoms, std::int64_t n,
                                             std::int64_t k) {
    std::map<std::int64_t, ExactProb> free_walk{{0, 1}}, alive{{0, 1}};
    ExactProb hit = 0;
    for (std::int64_t step = 1; step <= n; ++step) {
        std::map<std::int64_t, ExactProb> f2, a2;
        for (const auto& [s, p] : free_walk)
            for (const auto& [x, q] : atoms) f2[s + x] += p * q;
        for (const auto& [s, p] : alive)
            for (const auto& [x, q] : atoms) {
                if (s + x == -k) {
                    if (step == n) hit += p * q;
                } else {
                    a2[s + x] += p * q;
                }
            }
        free_walk = std::move(f2);
        alive = std::move(a2);
    }
    return {free_walk[-k] / n, hit / k};
}

Checks kemperman(Ctx&) {
    Checks c;
    {
        auto law = StepLaw::plus_minus_one();
        auto r = kemperman_check(law, 3, 1);
        auto [l, h] = kemperman_dp(law.exact_support(), 3, 1);
        c.add(r.exact && r.lhs_exact == r.rhs_exact && r.lhs_exact == ExactProb(1, 8) && l == r.lhs_exact && h == r.rhs_exact,
              "+-1 law, n=3, k=1: both sides 1/8");
    }
    {
        auto law = StepLaw::finite_exact({ExactProb(1, 2), ExactProb(1, 4), ExactProb(1, 4)});
        auto r = kemperman_check(law, 4, 2);
        auto [l, h] = kemperman_dp(law.exact_support(), 4, 2);
        c.add(r.exact && r.lhs_exact == r.rhs_exact && l == r.lhs_exact && h == r.rhs_exact,
              "law {-1:1/2, 0:1/4, 1:1/4}, n=4, k=2: exact equality");
    }
    {
        std::vector<double> pmf;
        for (std::int64_t j = 0; j <= 3; ++j) pmf.push_back(poisson_pmf(1.0, j));
        const double z = std::accumulate(pmf.begin(), pmf.end(), 0.0);
        for (auto& p : pmf) p /= z;
        auto r = kemperman_check(StepLaw::finite(pmf), 5, 1);
        c.add(std::fabs(r.lhs - r.rhs) <= 1e-12, "Poisson(1) truncated at 3, n=5, k=1: |lhs - rhs| = " + num(std::fabs(r.lhs - r.rhs)));
    }
    return c;
}

Checks borel_tanner(Ctx& ctx) {
    Checks c;
    auto rng = ctx.stream();
    const auto reps = ctx.reps(100000, 20000);
    std::vector<std::int64_t> times;
    times.reserve(static_cast<std::size_t>(reps));
    for (std::int64_t r = 0; r < reps; ++r) {
        std::int64_t s = 0, t = 0;
        while (s > -1) {
            s += poisson(rng, 0.8) - 1;
            ++t;
        }
        times.push_back(t);
    }
    auto emp = EmpiricalDist::tabulate(times, 1, 60);
    auto t = chi_square_gof(emp, [](std::int64_t n) { return n >= 1 ? borel_tanner_pmf(0.8, n) : 0.0; }, kLevel);
    c.add(t.pass, "hitting time of Poisson(0.8)-1 vs Borel-Tanner, " + report_test(t));
    return c;
}

Checks parking(Ctx& ctx) {
    Checks c;
    const std::int64_t cases[3][3] = {{2, 2, 1000000}, {10, 5, 100000}, {50, 25, 10000}};
    for (const auto& cs : cases) {
        auto rng = ctx.stream();
        const auto reps = ctx.full() ? cs[2] : cs[2] / 10;
        std::int64_t hits = 0;
        for (std::int64_t r = 0; r < reps; ++r) hits += parking_simulate(cs[0], cs[1], rng).success;
        const double ref = to_double(parking_full_prob(cs[0], cs[1]));
        c.add(within_sigmas(hits, reps, ref, 3.0), "(n,m)=(" + std::to_string(cs[0]) + "," + std::to_string(cs[1]) +
                                                       ") frequency " + num(double(hits) / double(reps)) + " vs " + num(ref));
    }
    return c;
}

Checks uniform_trees(Ctx& ctx) {
    Checks c;
    {
        // Lukasiewicz words of length 4 list the 5 shapes; breadth-first child
        // counts obey the same prefix condition as depth-first ones.
        std::vector<std::vector<std::int64_t>> shapes;
        forest_words(1, 4, [&](const std::vector<std::int64_t>& w) { shapes.push_back(w); });
        std::map<std::vector<std::int64_t>, std::size_t> index;
        for (std::size_t i = 0; i < shapes.size(); ++i) index[shapes[i]] = i;
        auto rng = ctx.stream();
        const auto reps = ctx.reps(100000, 20000);
        std::vector<std::int64_t> counts(shapes.size(), 0);
        std::int64_t strays = 0;
        for (std::int64_t r = 0; r < reps; ++r) {
            auto t = sample_bgw_conditioned(OffspringLaw::geometric(0.5), 4, rng);
            auto it = index.find(t.child_counts());
            if (it == index.end()) ++strays;
            else ++counts[it->second];
        }
        auto t = chi_square_gof(EmpiricalDist::from_counts(counts), std::vector<double>(shapes.size(), 1.0 / double(shapes.size())), kLevel);
        c.add(shapes.size() == 5 && strays == 0 && t.pass, "conditioned geometric BGW uniform over 5 shapes, " + report_test(t));
    }
    {
        auto trees = spanning_trees(4);
        std::map<std::vector<std::pair<std::int64_t, std::int64_t>>, std::size_t> index;
        for (std::size_t i = 0; i < trees.size(); ++i) index[trees[i]] = i;
        auto rng = ctx.stream();
        const auto reps = ctx.reps(100000, 20000);
        std::vector<std::int64_t> counts(trees.size(), 0);
        std::int64_t strays = 0;
        for (std::int64_t r = 0; r < reps; ++r) {
            auto it = index.find(sample_cayley(4, rng).edges());
            if (it == index.end()) ++strays;
            else ++counts[it->second];
        }
        auto t = chi_square_gof(EmpiricalDist::from_counts(counts),
                                std::vector<double>(trees.size(), 1.0 / double(trees.size())), kLevel);
        c.add(trees.size() == 16 && strays == 0 && t.pass,
              "Cayley sampler uniform over " + std::to_string(trees.size()) + " trees at n=4, " + report_test(t));
    }
    return c;
}

Checks giant(Ctx& ctx) {
    Checks c;
    const auto ref_fn = ctx.opts.giant_reference ? ctx.opts.giant_reference : [](double x) { return giant_fraction(x); };
    for (double cval : {0.5, 1.5, 2.0}) {
        auto r = ctx.run("giant", {{"n", 100000}, {"c", cval}}, ctx.reps(50, 10));
        const double largest = mean(column(r, 0)), second = mean(column(r, 1));
        const double ref = ref_fn(cval);
        c.add(std::fabs(largest - ref) < 0.01, "c=" + num(cval) + " largest/n " + num(largest) + " vs " + num(ref));
        if (cval == 2.0) c.add(second < 0.01, "c=2 second/n " + num(second));
    }
    return c;
}

Checks fluid(Ctx& ctx) {
    Checks c;
    auto r = ctx.run("fluid-curve", {{"n", 100000}, {"c", 2.0}, {"stacked", 0}}, ctx.reps(20, 5));
    auto d = column(r, 0);
    const double worst = *std::max_element(d.begin(), d.end());
    c.add(worst < 0.02, "exploration walk, worst sup distance " + num(worst));
    auto s = ctx.run("fluid-curve", {{"n", 100000}, {"c", 2.0}, {"stacked", 1}}, ctx.reps(20, 5));
    auto ds = column(s, 0);
    const double worst_s = *std::max_element(ds.begin(), ds.end());
    c.add(worst_s < 0.02, "stacked walk, worst sup distance " + num(worst_s));
    return c;
}

Checks connectivity(Ctx& ctx) {
    Checks c;
    for (double cval : {-1.0, 0.0, 2.0}) {
        auto r = ctx.run("connectivity", {{"n", 10000}, {"c", cval}}, ctx.reps(2000, 500));
        const auto& v = verdict(r, "connected_ci99_contains_limit");
        c.add(v.pass, "c=" + num(cval) + " " + v.detail);
    }
    return c;
}

Checks triangles(Ctx& ctx) {
    Checks c;
    auto r = ctx.run("triangles", {{"n", 3000}, {"c", 1.5}}, ctx.reps(10000, 2000));
    const auto& v = verdict(r, "poisson_limit_chi2");
    c.add(v.pass, "triangles vs Poisson(0.5625), " + v.detail);
    return c;
}

// Tr(A^k), k = 1..k_max, by dense integer matrix powers.
std::vector<BigCount> dense_traces(const Graph& g, int k_max) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::int64_t> a(n * n, 0), p(n * n, 0), q(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i * n + i] = 1;
        for (auto j : g.neighbors(static_cast<Vertex>(i))) a[i * n + static_cast<std::size_t>(j)] = 1;
    }
    std::vector<BigCount> tr;
    for (int k = 1; k <= k_max; ++k) {
        std::fill(q.begin(), q.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (p[i * n + l])
                    for (std::size_t j = 0; j < n; ++j) q[i * n + j] += p[i * n + l] * a[l * n + j];
        p.swap(q);
        BigCount t = 0;
        for (std::size_t i = 0; i < n; ++i) t += p[i * n + i];
        tr.push_back(t);
    }
    return tr;
}

Checks spectral(Ctx& ctx) {
    Checks c;
    std::int64_t graphs = 0, bad = 0;
    auto compare = [&](const Graph& g) {
        ++graphs;
        if (spectral_moments(g, 12).traces != dense_traces(g, 12)) ++bad;
    };
    // Every graph on up to 6 vertices, plus random graphs on 7.
    for (std::int64_t n = 1; n <= 6; ++n) {
        std::vector<Edge> pairs;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            std::vector<Edge> es;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) es.push_back(pairs[i]);
            compare(Graph(n, es));
        }
    }
    auto rng = ctx.stream();
    for (int r = 0; r < ctx.reps(5000, 500); ++r) compare(sample_gnp_dense(7, 0.5, rng));
    c.add(bad == 0, std::to_string(graphs) + " small graphs, trace mismatches " + std::to_string(bad));

    const double n = 2000, p = 2.0 / n;
    auto r = ctx.run("spectral-moments", {{"n", n}, {"c", 2.0}, {"k_max", 3}}, ctx.reps(20, 5));
    auto m2 = column(r, 1), m3 = column(r, 2);
    const double r3 = (n - 1) * (n - 2) * p * p * p;
    c.add(std::fabs(mean(m2) - 2.0) <= 3 * std_error(m2), "m2 " + num(mean(m2)) + " vs 2, se " + num(std_error(m2)));
    c.add(std::fabs(mean(m3) - r3) <= 3 * std_error(m3), "m3 " + num(mean(m3)) + " vs " + num(r3) + ", se " + num(std_error(m3)));
    return c;
}

Checks perm_cycles(Ctx& ctx) {
    Checks c;
    {
        std::map<std::vector<std::int64_t>, std::int64_t> a, b;
        auto ra = ctx.stream(), rb = ctx.stream();
        const auto reps = ctx.reps(1000000, 100000);
        for (std::int64_t r = 0; r < reps; ++r) {
            ++a[feller_cycles(6, ra).counts];
            ++b[cycles_of(sample_perm(6, rb)).counts];
        }
        auto t = chi_square_two_sample(a, b, kLevel);
        c.add(t.pass, "Feller vs shuffle cycle types at n=6, " + report_test(t));
    }
    {
        auto rng = ctx.stream();
        const auto reps = ctx.reps(100000, 10000);
        std::int64_t der = 0;
        for (std::int64_t r = 0; r < reps; ++r) {
            auto p = sample_perm(2000, rng);
            bool fixed = false;
            for (std::int64_t i = 1; i <= 2000 && !fixed; ++i) fixed = p(i) == i;
            der += !fixed;
        }
        c.add(within_sigmas(der, reps, std::exp(-1.0), 3.0), "derangements at n=2000: " + num(double(der) / double(reps)));
    }
    {
        auto rng = ctx.stream();
        std::vector<double> xs;
        for (std::int64_t r = 0; r < ctx.reps(100000, 20000); ++r)
            xs.push_back(std::ldexp(1.0, static_cast<int>(cycles_of(sample_perm(20, rng)).cycle_count())));
        c.add(std::fabs(mean(xs) - 21.0) <= 3 * std_error(xs), "E[2^C] at n=20: " + num(mean(xs)) + " vs 21");
    }
    return c;
}

Checks poisson_dirichlet(Ctx& ctx) {
    Checks c;
    auto rng = ctx.stream();
    const auto reps = ctx.reps(100000, 20000);
    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        auto cs = fast_cycles(10000, rng);
        hits += *std::max_element(cs.lengths.begin(), cs.lengths.end()) <= 5000;
    }
    const double ref = 1.0 - std::log(2.0);
    c.add(within_sigmas(hits, reps, ref, 3.0), "P(longest <= n/2) " + num(double(hits) / double(reps)) + " vs " + num(ref));
    const double rho = dickman_rho(2.0);
    c.add(std::fabs(rho - ref) <= 1e-6, "dickman_rho(2) " + num(rho));
    return c;
}

std::vector<double> out_degree_fractions(const GrowingTree& t) {
    std::vector<double> f(6, 0.0);
    for (std::int64_t v = 0; v <= t.size(); ++v) {
        const auto d = t.out_degree(v);
        if (d <= 5) f[static_cast<std::size_t>(d)] += 1.0;
    }
    for (auto& x : f) x /= double(t.size() + 1);
    return f;
}

template <class Direct, class Contracted>
TestReport shape_two_sample(Ctx& ctx, std::int64_t reps, Direct direct, Contracted contracted) {
    std::map<std::vector<std::int64_t>, std::int64_t> a, b;
    auto ra = ctx.stream(), rb = ctx.stream();
    for (std::int64_t r = 0; r < reps; ++r) {
        ++a[direct(ra).parent];
        ++b[contracted(rb).parent];
    }
    return chi_square_two_sample(a, b, kLevel);
}

Checks rrt_laws(Ctx& ctx) {
    Checks c;
    {
        auto rng = ctx.stream();
        std::vector<double> f(6, 0.0);
        const int reps = 10;
        for (int r = 0; r < reps; ++r) {
            auto x = out_degree_fractions(rrt_chain(100000, rng));
            for (std::size_t k = 0; k < 6; ++k) f[k] += x[k] / reps;
        }
        double worst = 0;
        for (std::size_t k = 0; k < 6; ++k) worst = std::max(worst, std::fabs(f[k] - std::ldexp(1.0, -int(k) - 1)));
        c.add(worst <= 0.005, "out-degree fractions, worst deviation " + num(worst));
    }
    {
        auto rng = ctx.stream();
        std::vector<std::int64_t> depths;
        for (std::int64_t r = 0; r < ctx.reps(100000, 20000); ++r) depths.push_back(growth_stats(rrt_chain(8, rng)).last_vertex_depth);
        const auto pmf = cycles_count_pmf(8);
        auto t = chi_square_gof(EmpiricalDist::tabulate(depths, 1, 8),
                                [&](std::int64_t k) { return k >= 1 && k <= 8 ? to_double(pmf[std::size_t(k - 1)]) : 0.0; },
                                kLevel);
        c.add(t.pass, "depth of vertex 8 vs cycle count law, " + report_test(t));
    }
    {
        auto t = shape_two_sample(
            ctx, ctx.reps(1000000, 100000), [](RngStream& r) { return rrt_chain(3, r); },
            [](RngStream& r) { return yule_to_rrt(yule_simulate(2, YuleStop::at_count(4), r), 3); });
        c.add(t.pass, "Yule contraction vs chain shapes at n=3, " + report_test(t));
    }
    return c;
}

Checks ba_laws(Ctx& ctx) {
    Checks c;
    bool sums = true;
    auto check_sum = [&](const GrowingTree& t) {
        sums = sums && std::accumulate(t.degree.begin(), t.degree.end(), std::int64_t{0}) == 2 * t.size();
        return t;
    };
    {
        auto rng = ctx.stream();
        std::vector<double> f(6, 0.0);
        const int reps = 10;
        for (int r = 0; r < reps; ++r) {
            auto x = out_degree_fractions(check_sum(ba_chain(100000, rng)));
            for (std::size_t k = 0; k < 6; ++k) f[k] += x[k] / reps;
        }
        double worst = 0;
        for (std::size_t k = 0; k < 6; ++k) {
            const double kk = double(k);
            worst = std::max(worst, std::fabs(f[k] - 4.0 / ((kk + 1) * (kk + 2) * (kk + 3))));
        }
        c.add(worst <= 0.005, "out-degree fractions, worst deviation " + num(worst));
    }
    {
        auto t = shape_two_sample(
            ctx, ctx.reps(1000000, 100000), [&](RngStream& r) { return check_sum(ba_chain(4, r)); },
            [&](RngStream& r) { return check_sum(yule3_to_ba(yule_simulate(3, YuleStop::at_count(8), r, 2), 4)); });
        c.add(t.pass, "order-3 Yule contraction vs chain shapes at n=4, " + report_test(t));
    }
    c.add(sums, "degree sum equals 2n in every sample");
    return c;
}

Checks extremes(Ctx& ctx) {
    Checks c;
    auto rrt = ctx.run("rrt", {{"n", 1000000}}, 50);
    auto ba = ctx.run("ba", {{"n", 1000000}}, 50);
    for (const auto* name : {"max_degree_band", "height_band"}) {
        const auto& v = verdict(rrt, name);
        c.add(v.pass, std::string("RRT ") + name + ": " + v.detail);
    }
    const auto& v = verdict(ba, "height_band");
    c.add(v.pass, "BA height_band: " + v.detail);
    return c;
}

Checks yule_classics(Ctx& ctx) {
    Checks c;
    auto y = ctx.run("yule", {{"k", 2}, {"t", 2.0}}, ctx.reps(100000, 20000));
    c.add(verdict(y, "geometric_law_chi2").pass, "Yule order 2 at t=2 geometric, " + verdict(y, "geometric_law_chi2").detail);
    auto cc = ctx.run("coupon", {{"n", 10000}}, ctx.reps(10000, 1000));
    c.add(verdict(cc, "gumbel_ks").pass, "coupon collector Gumbel, " + verdict(cc, "gumbel_ks").detail);
    auto pl = ctx.run("pills", {{"n", 100000}}, ctx.reps(10000, 1000));
    c.add(verdict(pl, "exponential_ks").pass, "pills exponential, " + verdict(pl, "exponential_ks").detail);
    auto co = ctx.run("corral", {{"n", 10000}}, ctx.reps(10000, 2000));
    c.add(verdict(co, "mean_within_3se").pass, "O.K. Corral, " + verdict(co, "mean_within_3se").detail);
    return c;
}

Checks many_to_one(Ctx& ctx) {
    Checks c;
    for (int k : {2, 3}) {
        auto r = ctx.run("many-to-one", {{"k", k}, {"t", 3.0}, {"h", 6}, {"d", 4}}, ctx.reps(10000, 2000));
        for (const auto* f : {"one", "height", "degree"}) {
            const auto& v = verdict(r, std::string("ci99_overlap_") + f);
            c.add(v.pass, "k=" + std::to_string(k) + " " + f + ": " + v.detail);
        }
    }
    return c;
}

Checks determinism(Ctx& ctx) {
    Checks c;
    const std::vector<std::pair<std::string, ParamMap>> runs = {
        {"giant", {{"n", 20000}, {"c", 2.0}}},
        {"cycles", {{"n", 8}}},
        {"many-to-one", {{"k", 2}, {"t", 2.0}}},
        {"ba", {{"n", 5000}}}};
    for (const auto& [name, params] : runs) {
        std::string out[3];
        const int workers[3] = {1, 4, 1};
        for (int i = 0; i < 3; ++i) {
            ExperimentConfig cfg{name, params, ctx.opts.seed, 24, workers[i]};
            auto r = run_experiment(cfg);
            std::ostringstream os;
            write_summary_csv(os, r);
            write_reps_csv(os, r);
            out[i] = os.str();
        }
        c.add(out[0] == out[1] && out[0] == out[2], name + ": identical bytes for workers 1, 4 and a rerun");
    }
    return c;
}

struct Entry {
    int id;
    const char* name;
    Checks (*run)(Ctx&);
    bool fast;  // part of the fast suite
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {1, "exact-counts", exact_counts, true},
        {2, "cycle-lemma", cycle_lemma, true},
        {3, "kemperman", kemperman, true},
        {4, "borel-tanner", borel_tanner, true},
        {5, "parking", parking, true},
        {6, "uniform-conditioned-trees", uniform_trees, true},
        {7, "giant-component", giant, true},
        {8, "fluid-limit", fluid, true},
        {9, "connectivity-window", connectivity, true},
        {10, "triangles", triangles, true},
        {11, "spectral-moments", spectral, true},
        {12, "permutation-cycles", perm_cycles, true},
        {13, "poisson-dirichlet", poisson_dirichlet, true},
        {14, "rrt-laws", rrt_laws, true},
        {15, "ba-laws", ba_laws, true},
        {16, "growth-extremes", extremes, false},
        {17, "yule-and-classics", yule_classics, true},
        {18, "many-to-one", many_to_one, true},
        {19, "determinism", determinism, true},
    };
    return e;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
    static const std::vector<CriterionInfo> info = [] {
        std::vector<CriterionInfo> v;
        for (const auto& e : entries()) v.push_back({e.id, e.name});
        return v;
    }();
    return info;
}

std::vector<CriterionResult> run_verification(const VerifyOptions& opts,
                                              const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (const auto& e : entries()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.id) == opts.only.end()) continue;
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        const auto t0 = std::chrono::steady_clock::now();
        if (opts.suite == Suite::fast && !e.fast) {
            r.pass = true;
            r.skipped = true;
            r.detail = "full suite only";
        } else {
            try {
                Ctx ctx{opts, e.id};
                auto checks = e.run(ctx);
                r.pass = checks.pass;
                r.detail = checks.detail;
                r.checks = std::move(checks.items);
            } catch (const std::exception& ex) {
                r.pass = false;
                r.detail = std::string("error: ") + ex.what();
            }
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

void write_verdict_line(std::ostream& os, const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
    char id[8];
    std::snprintf(id, sizeof id, "%2d", r.id);
    os << (r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << r.name << "  " << secs << "  " << r.detail
       << '\n';
}

}  // namespace rs
