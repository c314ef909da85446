#include "randstruct/perms.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "randstruct/errors.hpp"

namespace rs {

Permutation::Permutation(std::vector<std::int64_t> image) : image_(std::move(image)) {
    const auto n = image_.size();
    std::vector<bool> seen(n + 1, false);
    for (auto x : image_) {
        if (x < 1 || static_cast<std::size_t>(x) > n || seen[static_cast<std::size_t>(x)])
            throw FormatError("Permutation: not a bijection of {1..n}");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

Permutation Permutation::identity(std::int64_t n) {
    if (n < 0) throw InvalidParameter("Permutation: n must be >= 0");
    std::vector<std::int64_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
}

CycleStructure make_cycle_structure(std::vector<std::int64_t> lengths, std::int64_t n) {
    CycleStructure cs;
    cs.counts.assign(static_cast<std::size_t>(n), 0);
    std::int64_t total = 0;
    for (auto l : lengths) {
        if (l < 1 || l > n) throw InvalidParameter("CycleStructure: cycle length out of range");
        ++cs.counts[static_cast<std::size_t>(l - 1)];
        total += l;
    }
    if (total != n) throw InvalidParameter("CycleStructure: lengths must sum to n");
    cs.lengths = std::move(lengths);
    return cs;
}

Permutation sample_perm(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("sample_perm: n must be >= 1");
    auto p = Permutation::identity(n);
    auto img = p.image();
    shuffle(img, rng);
    return Permutation(std::move(img));
}

CycleStructure cycles_of(const Permutation& p) {
    const auto n = static_cast<std::size_t>(p.size());
    std::vector<bool> seen(n + 1, false);
    std::vector<std::int64_t> lengths;
    // Scanning starts in increasing order, so cycles come out ranked by minimum.
    for (std::size_t s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        std::int64_t len = 0;
        for (std::size_t u = s; !seen[u]; u = static_cast<std::size_t>(p.image()[u - 1])) {
            seen[u] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    return make_cycle_structure(std::move(lengths), p.size());
}

CycleStructure feller_cycles(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("feller_cycles: n must be >= 1");
    std::vector<std::int64_t> lengths;
    std::int64_t last = n + 1;
    for (std::int64_t k = n; k >= 1; --k) {
        // Success of Bernoulli(1/k); k = 1 always succeeds.
        if (k == 1 || rng.below(static_cast<std::uint64_t>(k)) == 0) {
            lengths.push_back(last - k);
            last = k;
        }
    }
    return make_cycle_structure(std::move(lengths), n);
}

CycleStructure fast_cycles(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("fast_cycles: n must be >= 1");
    std::vector<std::int64_t> lengths;
    for (std::int64_t left = n; left > 0;) {
        const auto l = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(left))) + 1;
        lengths.push_back(l);
        left -= l;
    }
    return make_cycle_structure(std::move(lengths), n);
}

std::vector<std::int64_t> foata(const Permutation& p) {
    const auto n = static_cast<std::size_t>(p.size());
    std::vector<bool> seen(n + 1, false);
    std::vector<std::int64_t> word;
    word.reserve(n);
    for (std::size_t m = 1; m <= n; ++m) {
        if (seen[m]) continue;
        auto u = static_cast<std::size_t>(p.image()[m - 1]);
        for (; u != m; u = static_cast<std::size_t>(p.image()[u - 1])) {
            seen[u] = true;
            word.push_back(static_cast<std::int64_t>(u));
        }
        seen[m] = true;
        word.push_back(static_cast<std::int64_t>(m));
    }
    return word;
}

Permutation foata_inv(const std::vector<std::int64_t>& word) {
    Permutation check(word);  // validates the word
    const auto n = word.size();
    std::vector<std::int64_t> img(n);
    // Blocks end at suffix minima; block (a_1..a_k) is the cycle a_1 -> ... -> a_k -> a_1.
    std::vector<std::int64_t> suffix_min(n + 1, static_cast<std::int64_t>(n) + 1);
    for (std::size_t i = n; i-- > 0;) suffix_min[i] = std::min(word[i], suffix_min[i + 1]);
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (word[i] != suffix_min[i]) continue;
        for (std::size_t j = start; j < i; ++j) img[static_cast<std::size_t>(word[j] - 1)] = word[j + 1];
        img[static_cast<std::size_t>(word[i] - 1)] = word[start];
        start = i + 1;
    }
    return Permutation(std::move(img));
}

std::int64_t minimal_record_count(const std::vector<std::int64_t>& word) {
    std::int64_t records = 0;
    std::int64_t m = INT64_MAX;
    for (std::size_t i = word.size(); i-- > 0;)
        if (word[i] < m) m = word[i], ++records;
    return records;
}

CrpResult crp_chain(std::int64_t n, RngStream& rng) {
    if (n < 1) throw InvalidParameter("crp_chain: n must be >= 1");
    const auto N = static_cast<std::size_t>(n);
    std::vector<std::int64_t> img(N);
    std::vector<std::size_t> table_of(N + 1);
    CrpResult r;
    img[0] = 1;
    table_of[1] = 0;
    r.table_sizes.push_back(1);
    for (std::size_t m = 2; m <= N; ++m) {
        const auto k = static_cast<std::size_t>(rng.below(m));  // 0 means a new table
        if (k == 0) {
            img[m - 1] = static_cast<std::int64_t>(m);
            table_of[m] = r.table_sizes.size();
            r.table_sizes.push_back(1);
        } else {
            // Customer m sits right after customer k: sigma(k) = m, sigma(m) = old sigma(k).
            img[m - 1] = img[k - 1];
            img[k - 1] = static_cast<std::int64_t>(m);
            table_of[m] = table_of[k];
            ++r.table_sizes[table_of[k]];
        }
    }
    r.perm = Permutation(std::move(img));
    return r;
}

StickBreaking stick_breaking(RngStream& rng, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidParameter("stick_breaking: epsilon must lie in (0, 1)");
    StickBreaking sb;
    double rest = 1.0;
    while (rest >= epsilon) {
        const double u = rng.uniform_pos();  // (0,1], so every piece is > 0
        const double piece = rest * (1.0 - u);
        if (piece <= 0.0) continue;
        sb.lengths.push_back(piece);
        rest -= piece;
    }
    sb.residual = rest;
    return sb;
}

std::vector<double> longest_cycle_stats(std::int64_t n, std::int64_t reps, RngStream& rng) {
    if (n < 10) throw InvalidParameter("longest_cycle_stats: n must be >= 10");
    if (reps < 1) throw InvalidParameter("longest_cycle_stats: reps must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(reps));
    for (std::int64_t r = 0; r < reps; ++r) {
        auto cs = fast_cycles(n, rng);
        out.push_back(double(*std::max_element(cs.lengths.begin(), cs.lengths.end())) / double(n));
    }
    return out;
}

std::vector<std::vector<std::int64_t>> small_cycle_counts(std::int64_t n, int i_max, std::int64_t reps,
                                                          RngStream& rng) {
    if (i_max < 1 || i_max > 6) throw InvalidParameter("small_cycle_counts: i_max must lie in 1..6");
    if (n < 100 * i_max) throw InvalidParameter("small_cycle_counts: n must be >= 100 * i_max");
    if (reps < 1) throw InvalidParameter("small_cycle_counts: reps must be >= 1");
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(static_cast<std::size_t>(reps));
    for (std::int64_t r = 0; r < reps; ++r) {
        auto cs = fast_cycles(n, rng);
        rows.emplace_back(cs.counts.begin(), cs.counts.begin() + i_max);
    }
    return rows;
}

void write_permutation(std::ostream& os, const Permutation& p) {
    const auto& img = p.image();
    for (std::size_t i = 0; i < img.size(); ++i) os << (i ? " " : "") << img[i];
    os << '\n';
}

std::vector<Permutation> read_permutations(std::istream& is) {
    std::vector<Permutation> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<std::int64_t> img;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw FormatError("read_permutations: bad token '" + tok + "'");
            img.push_back(v);
        }
        out.emplace_back(std::move(img));
    }
    return out;
}

}  // namespace rs
