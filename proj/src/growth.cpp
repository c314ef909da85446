#include "randstruct/growth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "randstruct/errors.hpp"

namespace rs {

// ---- growing trees -------------------------------------------------------------

std::vector<std::int64_t> GrowingTree::depths() const {
    std::vector<std::int64_t> d(parent.size(), 0);
    for (std::size_t i = 1; i < parent.size(); ++i) d[i] = d[static_cast<std::size_t>(parent[i])] + 1;
    return d;
}

void GrowingTree::check() const {
    if (parent.empty() || parent[0] != -1) throw InvalidParameter("GrowingTree: vertex 0 must be the root");
    if (degree.size() != parent.size()) throw InvalidParameter("GrowingTree: degree array size mismatch");
    std::vector<std::int64_t> deg(parent.size(), 0);
    for (std::size_t i = 1; i < parent.size(); ++i) {
        if (parent[i] < 0 || parent[i] >= static_cast<std::int64_t>(i))
            throw InvalidParameter("GrowingTree: parent[i] < i violated");
        ++deg[i];
        ++deg[static_cast<std::size_t>(parent[i])];
    }
    if (deg != degree) throw InvalidParameter("GrowingTree: degrees disagree with parents");
}

namespace {

GrowingTree single_vertex() {
    GrowingTree t;
    t.parent = {-1};
    t.degree = {0};
    return t;
}

void attach(GrowingTree& t, std::int64_t p) {
    t.parent.push_back(p);
    t.degree.push_back(1);
    ++t.degree[static_cast<std::size_t>(p)];
}

}  // namespace

GrowingTree rrt_chain(std::int64_t n, RngStream& rng) {
    if (n < 0) throw InvalidParameter("rrt_chain: n must be >= 0");
    GrowingTree t = single_vertex();
    t.parent.reserve(static_cast<std::size_t>(n) + 1);
    t.degree.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 1; i <= n; ++i) attach(t, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(i))));
    return t;
}

GrowingTree ba_chain(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("ba_chain: n must be >= 1");
    GrowingTree t = single_vertex();
    t.parent.reserve(static_cast<std::size_t>(n) + 1);
    t.degree.reserve(static_cast<std::size_t>(n) + 1);
    attach(t, 0);
    std::vector<std::int64_t> slots{0, 1};
    slots.reserve(2 * static_cast<std::size_t>(n));
    for (std::int64_t i = 2; i <= n; ++i) {
        const auto p = slots[static_cast<std::size_t>(rng.below(slots.size()))];
        attach(t, p);
        slots.push_back(p);
        slots.push_back(i);
    }
    return t;
}

std::vector<UrnState> polya_urn(std::int64_t steps, std::int64_t r0, std::int64_t b0, RngStream& rng) {
    if (r0 < 1 || b0 < 1) throw InvalidParameter("polya_urn: r0 and b0 must be >= 1");
    if (steps < 0) throw InvalidParameter("polya_urn: steps must be >= 0");
    std::vector<UrnState> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    UrnState s{r0, b0};
    traj.push_back(s);
    for (std::int64_t i = 0; i < steps; ++i) {
        if (static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(s.red + s.blue))) < s.red) ++s.red;
        else ++s.blue;
        traj.push_back(s);
    }
    return traj;
}

// ---- Yule trees ----------------------------------------------------------------

namespace {

// Splits alive[idx] at time `now` into k children appended to y.nodes.
void split_particle(YuleTree& y, std::size_t idx, double now) {
    const auto x = y.alive[idx];
    auto& node = y.nodes[static_cast<std::size_t>(x)];
    node.death = now;
    node.first_child = static_cast<std::int64_t>(y.nodes.size());
    for (int s = 0; s < y.order; ++s) {
        YuleNode c;
        c.parent = x;
        c.slot = s;
        c.birth = now;
        y.nodes.push_back(c);
    }
    const auto first = y.nodes[static_cast<std::size_t>(x)].first_child;
    y.alive[idx] = first;
    for (int s = 1; s < y.order; ++s) y.alive.push_back(first + s);
    y.jump_times.push_back(now);
    y.split_nodes.push_back(x);
    y.alive_counts.push_back(static_cast<std::int64_t>(y.alive.size()));
}

}  // namespace

YuleTree yule_simulate(int k, const YuleStop& stop, RngStream& rng, std::int64_t roots, std::int64_t particle_cap) {
    if (k < 2) throw InvalidParameter("yule_simulate: order must be >= 2");
    if (roots < 1) throw InvalidParameter("yule_simulate: roots must be >= 1");
    if (stop.by_time && !(stop.t >= 0.0)) throw InvalidParameter("yule_simulate: stop time must be >= 0");
    YuleTree y;
    y.order = k;
    y.roots = roots;
    for (std::int64_t r = 0; r < roots; ++r) {
        y.nodes.emplace_back();
        y.alive.push_back(r);
    }
    double now = 0.0;
    for (;;) {
        if (!stop.by_time && y.particle_count() >= stop.n) break;
        const double next = now + exponential(rng, double(y.alive.size()));
        if (stop.by_time && next >= stop.t) break;
        if (y.particle_count() + (k - 1) > particle_cap)
            throw ResourceError("yule_simulate: particle cap exceeded");
        now = next;
        split_particle(y, static_cast<std::size_t>(rng.below(y.alive.size())), now);
    }
    y.stop_time = stop.by_time ? stop.t : now;
    return y;
}

GrowingTree yule_to_rrt(const YuleTree& y, std::int64_t n) {
    if (y.order != 2 || y.roots != 1) throw InvalidParameter("yule_to_rrt: needs an order-2 tree with one root");
    if (n < 0 || static_cast<std::int64_t>(y.split_nodes.size()) < n)
        throw InvalidParameter("yule_to_rrt: not enough particles");
    std::vector<std::int64_t> vertex_of(y.nodes.size(), -1);
    vertex_of[0] = 0;
    GrowingTree t = single_vertex();
    for (std::int64_t j = 1; j <= n; ++j) {
        const auto x = static_cast<std::size_t>(y.split_nodes[static_cast<std::size_t>(j - 1)]);
        const auto c = static_cast<std::size_t>(y.nodes[x].first_child);
        vertex_of[c] = vertex_of[x];
        vertex_of[c + 1] = j;
        attach(t, vertex_of[x]);
    }
    return t;
}

GrowingTree yule3_to_ba(const YuleTree& y, std::int64_t n) {
    if (y.order != 3 || y.roots != 2) throw InvalidParameter("yule3_to_ba: needs an order-3 forest with two roots");
    if (n < 1 || static_cast<std::int64_t>(y.split_nodes.size()) < n - 1)
        throw InvalidParameter("yule3_to_ba: not enough particles");
    std::vector<std::int64_t> vertex_of(y.nodes.size(), -1);
    vertex_of[0] = 0;
    vertex_of[1] = 1;
    GrowingTree t = single_vertex();
    attach(t, 0);
    for (std::int64_t j = 2; j <= n; ++j) {
        const auto x = static_cast<std::size_t>(y.split_nodes[static_cast<std::size_t>(j - 2)]);
        const auto c = static_cast<std::size_t>(y.nodes[x].first_child);
        vertex_of[c] = vertex_of[c + 1] = vertex_of[x];
        vertex_of[c + 2] = j;
        attach(t, vertex_of[x]);
    }
    return t;
}

// ---- spine / many-to-one ---------------------------------------------------------

std::vector<SpineCounts> yule_particle_counts(int k, double t, RngStream& rng) {
    auto y = yule_simulate(k, YuleStop::at_time(t), rng);
    std::vector<SpineCounts> counts(y.nodes.size());
    // Nodes are created after their parents, so one forward pass suffices.
    for (std::size_t v = 1; v < y.nodes.size(); ++v) {
        const auto& nd = y.nodes[v];
        counts[v] = counts[static_cast<std::size_t>(nd.parent)];
        if (nd.slot == k - 1) ++counts[v].rightmost;
        else ++counts[v].other;
    }
    std::vector<SpineCounts> out;
    out.reserve(y.alive.size());
    for (auto a : y.alive) out.push_back(counts[static_cast<std::size_t>(a)]);
    return out;
}

SpineCounts spine_sample(int k, double t, RngStream& rng, std::int64_t* total_particles) {
    if (k < 2) throw InvalidParameter("spine_sample: order must be >= 2");
    // The mutant lives Exp(k); at its split one of the k children (uniform)
    // carries the spine on and the other k-1 start standard Yule trees that
    // run for the remaining time.
    SpineCounts spine;
    std::int64_t particles = 1;
    double now = exponential(rng, double(k));
    while (now < t) {
        const auto pos = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        if (pos == k - 1) ++spine.rightmost;
        else ++spine.other;
        for (int s = 0; s < k - 1; ++s)
            particles += yule_simulate(k, YuleStop::at_time(t - now), rng).particle_count();
        now += exponential(rng, double(k));
    }
    if (total_particles) *total_particles = particles;
    return spine;
}

double spine_functional(SpineFunctional f, std::int64_t threshold, const SpineCounts& c) {
    switch (f) {
        case SpineFunctional::constant_one: return 1.0;
        case SpineFunctional::height_at_least: return c.rightmost >= threshold ? 1.0 : 0.0;
        case SpineFunctional::degree_at_least: return c.other >= threshold ? 1.0 : 0.0;
    }
    return 0.0;
}

double spine_analytic(int k, double t, SpineFunctional f, std::int64_t threshold) {
    const double growth = std::exp(double(k - 1) * t);
    switch (f) {
        case SpineFunctional::constant_one: return growth;
        case SpineFunctional::height_at_least: return growth * poisson_upper_tail(t, threshold);
        case SpineFunctional::degree_at_least: return growth * poisson_upper_tail(double(k - 1) * t, threshold);
    }
    return 0.0;
}

ManyToOneResult many_to_one_check(int k, double t, SpineFunctional f, std::int64_t threshold, std::int64_t reps,
                                  RngStream& rng, double level) {
    if (k < 2) throw InvalidParameter("many_to_one_check: k must be >= 2");
    if (!(t >= 0.0 && t <= 8.0)) throw InvalidParameter("many_to_one_check: t must lie in [0, 8]");
    if (reps < 2) throw InvalidParameter("many_to_one_check: reps must be >= 2");
    std::vector<double> lhs, rhs;
    lhs.reserve(static_cast<std::size_t>(reps));
    rhs.reserve(static_cast<std::size_t>(reps));
    const double growth = std::exp(double(k - 1) * t);
    for (std::int64_t r = 0; r < reps; ++r) {
        double s = 0.0;
        for (const auto& c : yule_particle_counts(k, t, rng)) s += spine_functional(f, threshold, c);
        lhs.push_back(s);
    }
    for (std::int64_t r = 0; r < reps; ++r) rhs.push_back(growth * spine_functional(f, threshold, spine_sample(k, t, rng)));
    ManyToOneResult res;
    res.lhs = mean_ci(lhs, level);
    res.rhs = mean_ci(rhs, level);
    res.analytic = spine_analytic(k, t, f, threshold);
    return res;
}

// ---- classic chains --------------------------------------------------------------

std::int64_t coupon_collector(std::int64_t n, RngStream& rng) {
    if (n < 2) throw InvalidParameter("coupon_collector: n must be >= 2");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::int64_t missing = n, draws = 0;
    while (missing > 0) {
        ++draws;
        const auto c = rng.below(static_cast<std::uint64_t>(n));
        if (!seen[c]) {
            seen[c] = true;
            --missing;
        }
    }
    return draws;
}

std::int64_t balls_in_bins(std::int64_t n, RngStream& rng) {
    if (n < 2) throw InvalidParameter("balls_in_bins: n must be >= 2");
    std::vector<std::int32_t> load(static_cast<std::size_t>(n), 0);
    std::int32_t mx = 0;
    for (std::int64_t b = 0; b < n; ++b) mx = std::max(mx, ++load[rng.below(static_cast<std::uint64_t>(n))]);
    return mx;
}

std::int64_t pills(std::int64_t n, RngStream& rng) {
    if (n < 2) throw InvalidParameter("pills: n must be >= 2");
    std::int64_t whole = n, half = 0;
    while (whole > 0) {
        if (static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(whole + half))) < whole) {
            --whole;
            ++half;  // one half eaten, one returned
        } else {
            --half;
        }
    }
    return half;
}

std::int64_t pills_embedded(std::int64_t n, RngStream& rng) {
    if (n < 2) throw InvalidParameter("pills_embedded: n must be >= 2");
    // Whole pill i lives E_i, then its half lives E'_i; count halves alive at max E_i.
    std::vector<double> end(static_cast<std::size_t>(n));
    double last = 0.0;
    for (auto& e : end) {
        const double w = exponential(rng, 1.0);
        e = w + exponential(rng, 1.0);
        last = std::max(last, w);
    }
    return std::count_if(end.begin(), end.end(), [&](double e) { return e > last; });
}

std::int64_t ok_corral(std::int64_t n, RngStream& rng) {
    if (n < 2) throw InvalidParameter("ok_corral: n must be >= 2");
    std::int64_t o1 = n, o2 = n;
    while (o1 > 0 && o2 > 0) {
        if (static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(o1 + o2))) < o2) --o1;
        else --o2;
    }
    return o1 + o2;
}

GrowthStats growth_stats(const GrowingTree& t) {
    GrowthStats s;
    const auto n = t.parent.size();
    for (std::size_t v = 0; v < n; ++v) {
        const auto d = t.out_degree(static_cast<std::int64_t>(v));
        if (static_cast<std::size_t>(d) >= s.out_degree_hist.size()) s.out_degree_hist.resize(static_cast<std::size_t>(d) + 1, 0);
        ++s.out_degree_hist[static_cast<std::size_t>(d)];
        if (d > s.max_out_degree) s.max_out_degree = d, s.argmax_label = static_cast<std::int64_t>(v);
    }
    const auto depth = t.depths();
    s.height = *std::max_element(depth.begin(), depth.end());
    s.root_degree = t.degree[0];
    s.last_vertex_depth = depth.back();
    return s;
}

void write_growing_tree(std::ostream& os, const GrowingTree& t) {
    for (std::size_t i = 1; i < t.parent.size(); ++i) os << (i > 1 ? " " : "") << t.parent[i];
    os << '\n';
}

std::vector<GrowingTree> read_growing_trees(std::istream& is) {
    std::vector<GrowingTree> out;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        GrowingTree t = single_vertex();
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            std::int64_t p = -1;
            try {
                p = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw FormatError("read_growing_trees: bad token '" + tok + "'");
            const auto i = static_cast<std::int64_t>(t.parent.size());
            if (p < 0 || p >= i) throw FormatError("read_growing_trees: parent must precede its child");
            attach(t, p);
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace rs
