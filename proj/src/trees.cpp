#include "randstruct/trees.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "randstruct/errors.hpp"

namespace rs {

namespace {

// A child-count sequence is a valid code iff its walk (k_i - 1) stays >= 0
// before the last step and ends at -1.
bool valid_code(const std::vector<std::int64_t>& counts) {
    if (counts.empty()) return false;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) return false;
        s += counts[i] - 1;
        if (i + 1 < counts.size() && s < 0) return false;
    }
    return s == -1;
}

}  // namespace

PlaneTree::PlaneTree() : counts_{0} {}

PlaneTree::PlaneTree(std::vector<std::int64_t> child_counts) : counts_(std::move(child_counts)) {
    if (!valid_code(counts_)) throw FormatError("PlaneTree: not a valid breadth-first child-count code");
}

std::vector<std::size_t> PlaneTree::first_child() const {
    std::vector<std::size_t> fc(counts_.size());
    std::size_t next = 1;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        fc[i] = next;
        next += static_cast<std::size_t>(counts_[i]);
    }
    return fc;
}

std::vector<std::int64_t> PlaneTree::depths() const {
    std::vector<std::int64_t> d(counts_.size(), 0);
    std::size_t next = 1;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        for (std::int64_t c = 0; c < counts_[i]; ++c) d[next++] = d[i] + 1;
    return d;
}

std::int64_t PlaneTree::height() const {
    // Breadth-first order lists vertices by nondecreasing depth.
    return depths().back();
}

// ---- LabeledTree -------------------------------------------------------------

LabeledTree::LabeledTree(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n < 1) throw FormatError("LabeledTree: n must be >= 1");
    if (static_cast<std::int64_t>(edges_.size()) != n - 1)
        throw FormatError("LabeledTree: a tree on n labels has n-1 edges");
    std::vector<std::int64_t> uf(static_cast<std::size_t>(n + 1));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::int64_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto& e : edges_) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 1 || e.second > n || e.first == e.second)
            throw FormatError("LabeledTree: edge endpoint out of range or loop");
        auto a = find(e.first), b = find(e.second);
        if (a == b) throw FormatError("LabeledTree: edges contain a cycle");
        uf[a] = b;
    }
    std::sort(edges_.begin(), edges_.end());
}

std::vector<std::int64_t> LabeledTree::parents(std::int64_t root) const {
    if (root < 1 || root > n_) throw InvalidParameter("LabeledTree::parents: root out of range");
    const auto n = static_cast<std::size_t>(n_);
    std::vector<std::size_t> deg(n + 2, 0);
    for (auto& e : edges_) ++deg[e.first + 1], ++deg[e.second + 1];
    std::partial_sum(deg.begin(), deg.end(), deg.begin());
    std::vector<std::int64_t> adj(2 * edges_.size());
    auto pos = deg;
    for (auto& e : edges_) {
        adj[pos[e.first]++] = e.second;
        adj[pos[e.second]++] = e.first;
    }
    std::vector<std::int64_t> parent(n + 1, -1);
    parent[root] = 0;
    std::vector<std::int64_t> stack{root};
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto k = deg[u]; k < deg[u + 1]; ++k) {
            auto v = adj[k];
            if (parent[v] == -1) {
                parent[v] = u;
                stack.push_back(v);
            }
        }
    }
    parent[0] = 0;
    return parent;
}

std::int64_t LabeledTree::distance(std::int64_t u, std::int64_t v) const {
    auto parent = parents(u);
    std::int64_t d = 0;
    while (v != u) {
        v = parent[v];
        ++d;
    }
    return d;
}

// ---- encodings ---------------------------------------------------------------

LatticePath luka_encode(const PlaneTree& tree) {
    std::vector<std::int64_t> inc;
    inc.reserve(tree.vertex_count());
    for (auto k : tree.child_counts()) inc.push_back(k - 1);
    return LatticePath(std::move(inc));
}

PlaneTree luka_decode(const LatticePath& path) {
    std::vector<std::int64_t> counts;
    counts.reserve(path.length());
    for (auto x : path.increments()) counts.push_back(x + 1);
    return PlaneTree(std::move(counts));
}

LatticePath contour_encode(const PlaneTree& tree) {
    const auto& counts = tree.child_counts();
    const auto fc = tree.first_child();
    std::vector<std::int64_t> inc;
    inc.reserve(2 * tree.edge_count());
    // Stack of (vertex, next child offset).
    std::vector<std::pair<std::size_t, std::int64_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto& [u, next] = stack.back();
        if (next < counts[u]) {
            std::size_t child = fc[u] + static_cast<std::size_t>(next++);
            inc.push_back(1);
            stack.emplace_back(child, 0);
        } else {
            stack.pop_back();
            if (!stack.empty()) inc.push_back(-1);
        }
    }
    return LatticePath(std::move(inc));
}

PlaneTree contour_decode(const LatticePath& path) {
    const auto& inc = path.increments();
    // children[v] lists the depth-first ids of v's children in plane order.
    std::vector<std::vector<std::size_t>> children(1);
    std::vector<std::size_t> stack{0};
    for (auto x : inc) {
        if (x == 1) {
            std::size_t id = children.size();
            children.emplace_back();
            children[stack.back()].push_back(id);
            stack.push_back(id);
        } else if (x == -1) {
            if (stack.size() < 2) throw FormatError("contour_decode: path goes below 0");
            stack.pop_back();
        } else {
            throw FormatError("contour_decode: increments must be +1 or -1");
        }
    }
    if (stack.size() != 1) throw FormatError("contour_decode: path does not return to 0");
    std::vector<std::int64_t> counts;
    counts.reserve(children.size());
    std::vector<std::size_t> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h) {
        const auto& ch = children[queue[h]];
        counts.push_back(static_cast<std::int64_t>(ch.size()));
        queue.insert(queue.end(), ch.begin(), ch.end());
    }
    return PlaneTree(std::move(counts));
}

// ---- sampling ------------------------------------------------------------------

std::int64_t sample_offspring(const OffspringLaw& law, RngStream& rng) {
    switch (law.family()) {
        case OffspringLaw::Family::poisson: return poisson(rng, law.param());
        case OffspringLaw::Family::geometric: return geometric_shifted(rng, law.param());
        case OffspringLaw::Family::binomial: return binomial(rng, law.trials(), law.param());
        case OffspringLaw::Family::finite: break;
    }
    const auto& t = law.table();
    double u = rng.uniform01();
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        if (u < t[k]) return static_cast<std::int64_t>(k);
        u -= t[k];
    }
    // Last support point absorbs rounding; skip trailing zeros.
    std::size_t k = t.size() - 1;
    while (k > 0 && t[k] == 0.0) --k;
    return static_cast<std::int64_t>(k);
}

std::optional<PlaneTree> sample_bgw(const OffspringLaw& law, RngStream& rng, std::int64_t vertex_cap) {
    if (vertex_cap < 1) throw InvalidParameter("sample_bgw: vertex_cap must be >= 1");
    std::vector<std::int64_t> counts;
    std::int64_t s = 0;  // Lukasiewicz walk; the tree is complete at its first -1
    while (static_cast<std::int64_t>(counts.size()) < vertex_cap) {
        auto k = sample_offspring(law, rng);
        counts.push_back(k);
        s += k - 1;
        if (s == -1) return PlaneTree(std::move(counts));
    }
    return std::nullopt;
}

std::size_t good_rotation(const std::vector<std::int64_t>& inc) {
    std::int64_t s = 0, best = 0, total = 0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < inc.size(); ++i) total += inc[i];
    if (total != -1 || inc.empty()) throw InvalidParameter("good_rotation: path total must be -1");
    // First argmin of S_0..S_{n-1}.
    for (std::size_t i = 0; i + 1 < inc.size(); ++i) {
        s += inc[i];
        if (s < best) best = s, arg = i + 1;
    }
    return arg;
}

PlaneTree sample_bgw_conditioned(const OffspringLaw& law, std::int64_t n_vertices, RngStream& rng,
                                 std::int64_t max_attempts) {
    if (n_vertices < 1) throw InvalidParameter("sample_bgw_conditioned: n_vertices must be >= 1");
    if (max_attempts < 1) throw InvalidParameter("sample_bgw_conditioned: max_attempts must be >= 1");
    const auto n = static_cast<std::size_t>(n_vertices);
    std::vector<std::int64_t> inc(n);
    for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::int64_t s = 0;
        for (auto& x : inc) {
            x = sample_offspring(law, rng) - 1;
            s += x;
        }
        if (s != -1) continue;
        if (good_shift_count(inc.data(), n) != 1)
            throw NumericError("sample_bgw_conditioned: good cyclic shift is not unique");
        const auto l = good_rotation(inc);
        std::vector<std::int64_t> counts(n);
        for (std::size_t j = 0; j < n; ++j) counts[j] = inc[(l + j) % n] + 1;
        return PlaneTree(std::move(counts));
    }
    throw ResourceError("sample_bgw_conditioned: rejection exceeded the attempt budget");
}

LabeledTree sample_cayley(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("sample_cayley: n must be >= 1");
    auto tree = sample_bgw_conditioned(OffspringLaw::poisson(1.0), n, rng);
    std::vector<std::int64_t> label(static_cast<std::size_t>(n));
    std::iota(label.begin(), label.end(), 1);
    shuffle(label, rng);
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    const auto& counts = tree.child_counts();
    std::size_t next = 1;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::int64_t c = 0; c < counts[i]; ++c) edges.emplace_back(label[i], label[next++]);
    return LabeledTree(n, std::move(edges));
}

// ---- statistics ----------------------------------------------------------------

TreeStats tree_stats(const PlaneTree& tree) {
    TreeStats st;
    st.height = tree.height();
    st.vertex_count = static_cast<std::int64_t>(tree.vertex_count());
    for (auto k : tree.child_counts()) ++st.degree_histogram[k];
    return st;
}

std::int64_t uniform_vertex_height(const PlaneTree& tree, RngStream& rng) {
    auto d = tree.depths();
    return d[static_cast<std::size_t>(rng.below(d.size()))];
}

Mapping random_mapping(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("random_mapping: n must be >= 1");
    Mapping m;
    m.image.resize(static_cast<std::size_t>(n));
    for (auto& x : m.image) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))) + 1;
    return m;
}

std::int64_t cyclic_point_count(const Mapping& m) {
    const auto n = m.image.size();
    for (auto x : m.image)
        if (x < 1 || static_cast<std::size_t>(x) > n) throw InvalidParameter("Mapping: image out of range");
    // state 0 = unseen, 1 = on the current trail, 2 = resolved.
    std::vector<std::uint8_t> state(n + 1, 0);
    std::int64_t cyclic = 0;
    for (std::size_t start = 1; start <= n; ++start) {
        if (state[start]) continue;
        std::size_t u = start;
        while (state[u] == 0) {
            state[u] = 1;
            u = static_cast<std::size_t>(m.image[u - 1]);
        }
        // If u is on the current trail, the trail closed a new cycle through u.
        if (state[u] == 1) {
            std::size_t v = u;
            do {
                ++cyclic;
                v = static_cast<std::size_t>(m.image[v - 1]);
            } while (v != u);
        }
        for (u = start; state[u] == 1; u = static_cast<std::size_t>(m.image[u - 1])) state[u] = 2;
    }
    return cyclic;
}

double tree_percolation_survival(int d, double p, std::int64_t reps, RngStream& rng, std::int64_t cap) {
    if (d < 3) throw InvalidParameter("tree_percolation_survival: d must be >= 3");
    if (reps < 1) throw InvalidParameter("tree_percolation_survival: reps must be >= 1");
    auto law = OffspringLaw::binomial(d - 1, p);
    std::int64_t survived = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        // Only the walk matters here; avoid materialising capped trees.
        std::int64_t s = 0, steps = 0;
        while (steps < cap && s >= 0) {
            s += sample_offspring(law, rng) - 1;
            ++steps;
        }
        if (s >= 0) ++survived;
    }
    return static_cast<double>(survived) / static_cast<double>(reps);
}

// ---- serialization -------------------------------------------------------------

void write_plane_tree(std::ostream& os, const PlaneTree& tree) {
    const auto& c = tree.child_counts();
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << '\n';
}

std::vector<PlaneTree> read_plane_trees(std::istream& is) {
    std::vector<PlaneTree> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<std::int64_t> counts;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw FormatError("read_plane_trees: bad token on line " + std::to_string(lineno));
            counts.push_back(v);
        }
        try {
            out.emplace_back(std::move(counts));
        } catch (const FormatError&) {
            throw FormatError("read_plane_trees: invalid tree on line " + std::to_string(lineno));
        }
    }
    return out;
}

}  // namespace rs
