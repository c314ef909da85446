#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "randstruct/rng.hpp"
#include "randstruct/stats.hpp"

namespace rs {

// Increasing tree on vertices 0..n: parent[i] < i for i >= 1, parent[0] = -1.
// degree[] counts all incident edges.
struct GrowingTree {
    std::vector<std::int64_t> parent;
    std::vector<std::int64_t> degree;

    std::int64_t size() const { return static_cast<std::int64_t>(parent.size()) - 1; }  // edge count
    std::int64_t out_degree(std::int64_t v) const { return degree[v] - (v == 0 ? 0 : 1); }
    std::vector<std::int64_t> depths() const;
    // Throws InvalidParameter unless parent[i] < i and degrees agree with parents.
    void check() const;

    bool operator==(const GrowingTree& o) const { return parent == o.parent; }
    bool operator<(const GrowingTree& o) const { return parent < o.parent; }
};

GrowingTree rrt_chain(std::int64_t n, RngStream& rng);
// Slot list with one entry per unit of degree; T_1 is the edge 0-1.
GrowingTree ba_chain(std::int64_t n, RngStream& rng);

struct UrnState {
    std::int64_t red = 0;
    std::int64_t blue = 0;
};
// States after 0..steps draws.
std::vector<UrnState> polya_urn(std::int64_t steps, std::int64_t r0, std::int64_t b0, RngStream& rng);

struct YuleNode {
    std::int64_t parent = -1;
    std::int32_t slot = 0;  // position among its siblings, 0..k-1
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();  // split time
    std::int64_t first_child = -1;  // children are consecutive ids
};

// Plane k-ary Yule forest built as a jump chain. Nodes 0..roots-1 are roots;
// split j (1-based) happens at jump_times[j-1] on node split_nodes[j-1].
struct YuleTree {
    int order = 2;
    std::int64_t roots = 1;
    std::vector<YuleNode> nodes;
    std::vector<double> jump_times;
    std::vector<std::int64_t> split_nodes;
    std::vector<std::int64_t> alive_counts;  // alive count after each split
    std::vector<std::int64_t> alive;         // particles alive at the stop
    double stop_time = 0.0;

    std::int64_t particle_count() const { return static_cast<std::int64_t>(alive.size()); }
};

struct YuleStop {
    bool by_time = true;
    double t = 0.0;
    std::int64_t n = 0;
    static YuleStop at_time(double t) { return {true, t, 0}; }
    // Stops at the first jump after which at least n particles are alive.
    static YuleStop at_count(std::int64_t n) { return {false, 0.0, n}; }
};

// Throws ResourceError once more than particle_cap particles would be alive.
YuleTree yule_simulate(int k, const YuleStop& stop, RngStream& rng, std::int64_t roots = 1,
                       std::int64_t particle_cap = 10'000'000);

// Split j gives child 0 the vertex of the splitting particle and child 1 the
// new vertex j. Needs at least n splits of an order-2 tree.
GrowingTree yule_to_rrt(const YuleTree& y, std::int64_t n);
// Order-3 forest with two roots (vertices 0 and 1). At each split children 0
// and 1 stay in the vertex and child 2 starts a new one. Needs n-1 splits.
GrowingTree yule3_to_ba(const YuleTree& y, std::int64_t n);

enum class SpineFunctional { constant_one, height_at_least, degree_at_least };

struct ManyToOneResult {
    MeanCi lhs;  // E[sum over particles at t of F]
    MeanCi rhs;  // e^{(k-1)t} E[F(spine tree)]
    double analytic = 0.0;
    bool overlap() const { return lhs.lo() <= rhs.hi() && rhs.lo() <= lhs.hi(); }
};
// Height counts rightmost steps on the ancestral line of a particle; degree
// counts the other steps. The analytic value is e^{(k-1)t} times 1,
// P(Poisson(t) >= h) or P(Poisson((k-1)t) >= d) respectively.
ManyToOneResult many_to_one_check(int k, double t, SpineFunctional f, std::int64_t threshold, std::int64_t reps,
                                  RngStream& rng, double level = 0.99);

struct SpineCounts {
    std::int64_t rightmost = 0;
    std::int64_t other = 0;
};
// Per-particle spine counts for every particle alive at time t of one Yule tree.
std::vector<SpineCounts> yule_particle_counts(int k, double t, RngStream& rng);
// Spine tree under the size-biased law; returns the distinguished particle's counts.
SpineCounts spine_sample(int k, double t, RngStream& rng, std::int64_t* total_particles = nullptr);
double spine_functional(SpineFunctional f, std::int64_t threshold, const SpineCounts& c);
double spine_analytic(int k, double t, SpineFunctional f, std::int64_t threshold);

std::int64_t coupon_collector(std::int64_t n, RngStream& rng);
std::int64_t balls_in_bins(std::int64_t n, RngStream& rng);
// Half pills left when the last whole pill is popped (the returned half counts).
std::int64_t pills(std::int64_t n, RngStream& rng);
// Same law through independent exponential lifetimes of whole and half pills.
std::int64_t pills_embedded(std::int64_t n, RngStream& rng);
// Survivors O1 + O2 when one side is exhausted, starting from (n, n).
std::int64_t ok_corral(std::int64_t n, RngStream& rng);

struct GrowthStats {
    std::vector<std::int64_t> out_degree_hist;  // index = out-degree
    std::int64_t max_out_degree = 0;
    std::int64_t argmax_label = 0;  // smallest label achieving the maximum
    std::int64_t height = 0;
    std::int64_t root_degree = 0;
    std::int64_t last_vertex_depth = 0;
};
GrowthStats growth_stats(const GrowingTree& t);

// One line per tree: parent[1..n], space separated (empty line for n = 0).
void write_growing_tree(std::ostream& os, const GrowingTree& t);
std::vector<GrowingTree> read_growing_trees(std::istream& is);

}  // namespace rs
