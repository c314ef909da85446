#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "randstruct/exact.hpp"
#include "randstruct/rng.hpp"

namespace rs {

// Skip-free integer path: increments >= -1, S_0 = 0.
class LatticePath {
public:
    LatticePath() = default;
    // Throws FormatError on an increment < -1.
    explicit LatticePath(std::vector<std::int64_t> increments);

    std::size_t length() const { return inc_.size(); }
    const std::vector<std::int64_t>& increments() const { return inc_; }
    std::int64_t increment(std::size_t i) const { return inc_[i]; }
    // S_i for i in 0..n, computed on first use.
    const std::vector<std::int64_t>& prefix_sums() const;
    std::int64_t value(std::size_t i) const { return prefix_sums()[i]; }
    std::int64_t total() const { return prefix_sums().back(); }

    bool operator==(const LatticePath& o) const { return inc_ == o.inc_; }

private:
    std::vector<std::int64_t> inc_;
    mutable std::vector<std::int64_t> sums_;
};

// Step law on {-1, 0, 1, 2, ...}.
class StepLaw {
public:
    enum class Family { finite, geometric_minus_one, poisson_minus_one, plus_minus_one };

    // pmf[j] = P(step = j - 1).
    static StepLaw finite(std::vector<double> pmf);
    static StepLaw finite_exact(const std::vector<ExactProb>& pmf);
    static StepLaw geometric_minus_one(double p);  // Geometric(p) on {0,1,...} minus 1
    static StepLaw poisson_minus_one(double alpha);
    static StepLaw plus_minus_one();

    Family family() const { return family_; }
    double mean() const;
    double pmf(std::int64_t step) const;
    std::int64_t sample(RngStream& rng) const;

    // Finite support as (step, probability); empty for unbounded families.
    std::vector<std::pair<std::int64_t, double>> finite_support() const;
    std::vector<std::pair<std::int64_t, ExactProb>> exact_support() const;
    bool has_exact() const { return !exact_.empty() || family_ == Family::plus_minus_one; }

private:
    Family family_ = Family::finite;
    std::vector<double> table_;
    std::vector<ExactProb> exact_;
    double a_ = 0.0;
};

LatticePath sample_path(const StepLaw& law, std::size_t n, RngStream& rng);

// First index i with S_i = -k, if any.
std::optional<std::size_t> hitting_time(const LatticePath& path, std::int64_t k);

// Rotation starting at increment l: (x_{l+1}, ..., x_n, x_1, ..., x_l).
LatticePath cycle_shift(const LatticePath& path, std::size_t l);
// Number of shifts l in 0..n-1 whose path first hits -k at time n (with
// multiplicity). The path total must equal -k for some k >= 1.
std::int64_t good_shift_count(const LatticePath& path);
// Same count on a raw increment buffer; no allocation.
std::int64_t good_shift_count(const std::int64_t* inc, std::size_t n);

struct KempermanResult {
    bool exact = false;
    ExactProb lhs_exact, rhs_exact;  // valid when exact
    double lhs = 0.0, rhs = 0.0;
};
// (1/n) P(S_n = -k) and (1/k) P(T_{-k} = n), by enumeration of support^n.
KempermanResult kemperman_check(const StepLaw& law, std::int64_t n, std::int64_t k,
                                std::int64_t max_states = 10'000'000);

ExactProb ballot_prob(std::int64_t a, std::int64_t b);
double ballot_mc(std::int64_t a, std::int64_t b, std::int64_t reps, RngStream& rng);
// One uniform vote order; true iff A stays strictly ahead throughout.
bool ballot_trial(std::int64_t a, std::int64_t b, RngStream& rng);

struct ParkingOutcome {
    bool success = false;
    std::vector<bool> occupancy;  // index s-1 for spot s
    std::int64_t exited = 0;
};
// Spots 1..n. A car arriving at an occupied spot drives toward spot 1 and
// takes the first free spot; it exits if there is none.
ParkingOutcome parking_simulate(std::int64_t n, const std::vector<std::int64_t>& arrivals);
ParkingOutcome parking_simulate(std::int64_t n, std::int64_t m, RngStream& rng);

std::size_t argmax_time(const LatticePath& path);

struct RecordCounts {
    std::int64_t weak_ascending = 0;
    std::int64_t strict_descending = 0;
};
RecordCounts record_stats(const LatticePath& path);

}  // namespace rs
