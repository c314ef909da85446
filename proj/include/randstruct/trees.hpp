#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randstruct/exact.hpp"
#include "randstruct/rng.hpp"
#include "randstruct/walks.hpp"

namespace rs {

// Rooted plane tree stored as its breadth-first child counts. Vertex 0 is the
// root; the children of vertex i are consecutive, in breadth-first order.
class PlaneTree {
public:
    PlaneTree();  // single vertex
    // Throws FormatError unless the counts form a valid Lukasiewicz code.
    explicit PlaneTree(std::vector<std::int64_t> child_counts);

    const std::vector<std::int64_t>& child_counts() const { return counts_; }
    std::size_t vertex_count() const { return counts_.size(); }
    std::size_t edge_count() const { return counts_.size() - 1; }
    // first_child()[i] is the breadth-first index of the first child of i.
    std::vector<std::size_t> first_child() const;
    std::vector<std::int64_t> depths() const;
    std::int64_t height() const;

    bool operator==(const PlaneTree& o) const { return counts_ == o.counts_; }
    bool operator<(const PlaneTree& o) const { return counts_ < o.counts_; }

private:
    std::vector<std::int64_t> counts_;
};

// Unrooted labeled tree on {1..n}; edges stored as sorted (u < v) pairs.
class LabeledTree {
public:
    LabeledTree() = default;
    // Throws FormatError unless the edges form a spanning tree of {1..n}.
    LabeledTree(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> edges);

    std::int64_t size() const { return n_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges() const { return edges_; }
    // parent[v] for v in 1..n when rooted at root (parent[root] = 0); index 0 unused.
    std::vector<std::int64_t> parents(std::int64_t root) const;
    std::int64_t distance(std::int64_t u, std::int64_t v) const;

    bool operator==(const LabeledTree& o) const { return n_ == o.n_ && edges_ == o.edges_; }
    bool operator<(const LabeledTree& o) const {
        return n_ != o.n_ ? n_ < o.n_ : edges_ < o.edges_;
    }

private:
    std::int64_t n_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges_;
};

// f[i-1] = image of i, labels 1..n.
struct Mapping {
    std::vector<std::int64_t> image;
    std::int64_t size() const { return static_cast<std::int64_t>(image.size()); }
};

LatticePath luka_encode(const PlaneTree& tree);
PlaneTree luka_decode(const LatticePath& path);
LatticePath contour_encode(const PlaneTree& tree);
PlaneTree contour_decode(const LatticePath& path);

std::int64_t sample_offspring(const OffspringLaw& law, RngStream& rng);

// nullopt when the tree reaches vertex_cap vertices without completing.
std::optional<PlaneTree> sample_bgw(const OffspringLaw& law, RngStream& rng,
                                    std::int64_t vertex_cap = 1'000'000);

// Rejection on the offspring sum, then rotation to the unique good shift.
PlaneTree sample_bgw_conditioned(const OffspringLaw& law, std::int64_t n_vertices, RngStream& rng,
                                 std::int64_t max_attempts = 1'000'000);

// Index l such that the rotation starting at l of a path with total -1 first
// hits -1 at its end. Throws if the path total is not -1.
std::size_t good_rotation(const std::vector<std::int64_t>& increments);

LabeledTree sample_cayley(std::int64_t n, RngStream& rng);

struct TreeStats {
    std::int64_t height = 0;
    std::map<std::int64_t, std::int64_t> degree_histogram;  // child count -> vertices
    std::int64_t vertex_count = 0;
};
TreeStats tree_stats(const PlaneTree& tree);
std::int64_t uniform_vertex_height(const PlaneTree& tree, RngStream& rng);

Mapping random_mapping(std::int64_t n, RngStream& rng);
std::int64_t cyclic_point_count(const Mapping& m);

// Fraction of Binomial(d-1, p) BGW trees that reach the vertex cap.
double tree_percolation_survival(int d, double p, std::int64_t reps, RngStream& rng,
                                 std::int64_t cap = 1'000'000);

// One tree per line, breadth-first child counts separated by spaces.
void write_plane_tree(std::ostream& os, const PlaneTree& tree);
std::vector<PlaneTree> read_plane_trees(std::istream& is);

}  // namespace rs
