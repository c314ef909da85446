#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "randstruct/rng.hpp"

namespace rs {

// One-line notation: image[i-1] = sigma(i), labels 1..n.
class Permutation {
public:
    Permutation() = default;
    // Throws FormatError unless image is a bijection of {1..n}.
    explicit Permutation(std::vector<std::int64_t> image);
    static Permutation identity(std::int64_t n);

    std::int64_t size() const { return static_cast<std::int64_t>(image_.size()); }
    std::int64_t operator()(std::int64_t i) const { return image_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<std::int64_t>& image() const { return image_; }

    bool operator==(const Permutation& o) const { return image_ == o.image_; }
    bool operator<(const Permutation& o) const { return image_ < o.image_; }

private:
    std::vector<std::int64_t> image_;
};

struct CycleStructure {
    std::vector<std::int64_t> lengths;  // cycles ranked by their minimal element
    std::vector<std::int64_t> counts;   // counts[i-1] = number of cycles of length i
    std::int64_t cycle_count() const { return static_cast<std::int64_t>(lengths.size()); }
    std::int64_t size() const { return static_cast<std::int64_t>(counts.size()); }
};
// Builds the count vector for permutations of n from Foata-ordered lengths.
CycleStructure make_cycle_structure(std::vector<std::int64_t> lengths, std::int64_t n);

Permutation sample_perm(std::int64_t n, RngStream& rng);
CycleStructure cycles_of(const Permutation& p);

// Spacings between successes of independent Bernoulli(1/n), ..., Bernoulli(1).
CycleStructure feller_cycles(std::int64_t n, RngStream& rng);
// Same law in O(#cycles): each next length is uniform on the remaining mass.
CycleStructure fast_cycles(std::int64_t n, RngStream& rng);

// Cycles ranked by minimum, each written from sigma(min) and ending at its min.
std::vector<std::int64_t> foata(const Permutation& p);
// Throws FormatError unless word is a permutation of {1..n}.
Permutation foata_inv(const std::vector<std::int64_t>& word);
// Positions k with word[k] = min of word[k..].
std::int64_t minimal_record_count(const std::vector<std::int64_t>& word);

struct CrpResult {
    std::vector<std::int64_t> table_sizes;  // tables by creation order
    Permutation perm;
};
CrpResult crp_chain(std::int64_t n, RngStream& rng);

struct StickBreaking {
    std::vector<double> lengths;
    double residual = 1.0;
};
StickBreaking stick_breaking(RngStream& rng, double epsilon);

// Longest cycle / n over reps uniform permutations of size n.
std::vector<double> longest_cycle_stats(std::int64_t n, std::int64_t reps, RngStream& rng);
// Row r holds (N_1, ..., N_{i_max}) for replicate r.
std::vector<std::vector<std::int64_t>> small_cycle_counts(std::int64_t n, int i_max, std::int64_t reps,
                                                          RngStream& rng);

// One line of space-separated images.
void write_permutation(std::ostream& os, const Permutation& p);
std::vector<Permutation> read_permutations(std::istream& is);

}  // namespace rs
