#include "randstruct/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "randstruct/errors.hpp"

namespace rs {

LatticePath::LatticePath(std::vector<std::int64_t> increments) : inc_(std::move(increments)) {
    for (auto x : inc_)
        if (x < -1) throw FormatError("LatticePath: increments must be >= -1 (skip-free)");
}

const std::vector<std::int64_t>& LatticePath::prefix_sums() const {
    if (sums_.size() != inc_.size() + 1) {
        sums_.assign(inc_.size() + 1, 0);
        for (std::size_t i = 0; i < inc_.size(); ++i) sums_[i + 1] = sums_[i] + inc_[i];
    }
    return sums_;
}

// ---- StepLaw ----------------------------------------------------------------

StepLaw StepLaw::finite(std::vector<double> pmf) {
    if (pmf.empty()) throw InvalidParameter("StepLaw: empty pmf");
    double s = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0)) throw InvalidParameter("StepLaw: negative probability");
        s += p;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw InvalidParameter("StepLaw: probabilities must sum to 1");
    StepLaw law;
    law.family_ = Family::finite;
    law.table_ = std::move(pmf);
    return law;
}

StepLaw StepLaw::finite_exact(const std::vector<ExactProb>& pmf) {
    ExactProb s = 0;
    std::vector<double> d;
    for (const auto& p : pmf) {
        if (p < 0) throw InvalidParameter("StepLaw: negative probability");
        s += p;
        d.push_back(to_double(p));
    }
    if (s != 1) throw InvalidParameter("StepLaw: probabilities must sum to exactly 1");
    StepLaw law = finite(d);
    law.exact_ = pmf;
    return law;
}

StepLaw StepLaw::geometric_minus_one(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("StepLaw: geometric p must lie in (0,1]");
    StepLaw law;
    law.family_ = Family::geometric_minus_one;
    law.a_ = p;
    return law;
}

StepLaw StepLaw::poisson_minus_one(double alpha) {
    if (!(alpha >= 0.0)) throw InvalidParameter("StepLaw: poisson alpha must be >= 0");
    StepLaw law;
    law.family_ = Family::poisson_minus_one;
    law.a_ = alpha;
    return law;
}

StepLaw StepLaw::plus_minus_one() {
    StepLaw law;
    law.family_ = Family::plus_minus_one;
    return law;
}

double StepLaw::mean() const {
    switch (family_) {
        case Family::finite: {
            double m = 0.0;
            for (std::size_t j = 0; j < table_.size(); ++j) m += (static_cast<double>(j) - 1.0) * table_[j];
            return m;
        }
        case Family::geometric_minus_one: return (1.0 - a_) / a_ - 1.0;
        case Family::poisson_minus_one: return a_ - 1.0;
        case Family::plus_minus_one: return 0.0;
    }
    return 0.0;
}

double StepLaw::pmf(std::int64_t step) const {
    if (step < -1) return 0.0;
    const std::int64_t k = step + 1;
    switch (family_) {
        case Family::finite:
            return static_cast<std::size_t>(k) < table_.size() ? table_[static_cast<std::size_t>(k)] : 0.0;
        case Family::geometric_minus_one: return a_ * std::pow(1.0 - a_, static_cast<double>(k));
        case Family::poisson_minus_one:
            if (a_ == 0.0) return k == 0 ? 1.0 : 0.0;
            return std::exp(-a_ + static_cast<double>(k) * std::log(a_) - std::lgamma(static_cast<double>(k) + 1.0));
        case Family::plus_minus_one: return (step == -1 || step == 1) ? 0.5 : 0.0;
    }
    return 0.0;
}

std::int64_t StepLaw::sample(RngStream& rng) const {
    switch (family_) {
        case Family::finite: {
            double u = rng.uniform01();
            for (std::size_t j = 0; j < table_.size(); ++j) {
                if (u < table_[j]) return static_cast<std::int64_t>(j) - 1;
                u -= table_[j];
            }
            // Rounding slack: fall back to the last atom with positive mass.
            for (std::size_t j = table_.size(); j-- > 0;)
                if (table_[j] > 0.0) return static_cast<std::int64_t>(j) - 1;
            return -1;
        }
        case Family::geometric_minus_one: return geometric_shifted(rng, a_) - 1;
        case Family::poisson_minus_one: return poisson(rng, a_) - 1;
        case Family::plus_minus_one: return (rng.next_u64() >> 63) ? 1 : -1;
    }
    return 0;
}

std::vector<std::pair<std::int64_t, double>> StepLaw::finite_support() const {
    std::vector<std::pair<std::int64_t, double>> out;
    if (family_ == Family::finite) {
        for (std::size_t j = 0; j < table_.size(); ++j)
            if (table_[j] > 0.0) out.emplace_back(static_cast<std::int64_t>(j) - 1, table_[j]);
    } else if (family_ == Family::plus_minus_one) {
        out = {{-1, 0.5}, {1, 0.5}};
    }
    return out;
}

std::vector<std::pair<std::int64_t, ExactProb>> StepLaw::exact_support() const {
    std::vector<std::pair<std::int64_t, ExactProb>> out;
    if (family_ == Family::plus_minus_one) {
        out = {{-1, ExactProb(1, 2)}, {1, ExactProb(1, 2)}};
    } else {
        for (std::size_t j = 0; j < exact_.size(); ++j)
            if (exact_[j] > 0) out.emplace_back(static_cast<std::int64_t>(j) - 1, exact_[j]);
    }
    return out;
}

// ---- paths --------------------------------------------------------------------

LatticePath sample_path(const StepLaw& law, std::size_t n, RngStream& rng) {
    std::vector<std::int64_t> inc(n);
    for (auto& x : inc) x = law.sample(rng);
    return LatticePath(std::move(inc));
}

std::optional<std::size_t> hitting_time(const LatticePath& path, std::int64_t k) {
    if (k < 1) throw InvalidParameter("hitting_time: k must be >= 1");
    const auto& s = path.prefix_sums();
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == -k) return i;
    return std::nullopt;
}

LatticePath cycle_shift(const LatticePath& path, std::size_t l) {
    const auto& inc = path.increments();
    const std::size_t n = inc.size();
    if (n == 0) return path;
    l %= n;
    std::vector<std::int64_t> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = inc[(l + j) % n];
    return LatticePath(std::move(out));
}

std::int64_t good_shift_count(const std::int64_t* inc, std::size_t n) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (inc[i] < -1) throw FormatError("good_shift_count: increments must be >= -1");
        total += inc[i];
    }
    if (n == 0 || total > -1) throw InvalidParameter("good_shift_count: path total must be -k with k >= 1");
    const std::int64_t k = -total;
    // Shift l is good iff S_l is a strict minimum of S_0..S_l (S_l < S_m for
    // m < l) and S_m > S_l - k for every l < m < n.
    std::vector<std::int64_t> s(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + inc[i];
    std::vector<std::int64_t> suffix_min(n + 1, INT64_MAX);  // min over (l, n)
    for (std::size_t l = n - 1; l-- > 0;) suffix_min[l] = std::min(suffix_min[l + 1], s[l + 1]);
    std::int64_t count = 0;
    std::int64_t prefix_min = INT64_MAX;  // min over [0, l)
    for (std::size_t l = 0; l < n; ++l) {
        const bool record = s[l] < prefix_min;
        if (record && suffix_min[l] > s[l] - k) ++count;
        prefix_min = std::min(prefix_min, s[l]);
    }
    return count;
}

std::int64_t good_shift_count(const LatticePath& path) {
    return good_shift_count(path.increments().data(), path.length());
}

// ---- Kemperman ------------------------------------------------------------------

namespace {

template <class W>
struct KempermanEnum {
    const std::vector<std::pair<std::int64_t, W>>& atoms;
    std::int64_t n, k;
    W at_level{0};  // P(S_n = -k)
    W hit{0};       // P(T_{-k} = n)

    void run(std::int64_t depth, std::int64_t s, const W& w) {
        if (depth == n) {
            if (s == -k) {
                at_level += w;
                hit += w;  // no earlier visit to -k by construction below
            }
            return;
        }
        for (const auto& [step, p] : atoms) {
            const std::int64_t t = s + step;
            // After reaching -k early the path still counts toward S_n = -k.
            if (t == -k && depth + 1 < n) {
                tail(depth + 1, t, w * p);
                continue;
            }
            run(depth + 1, t, w * p);
        }
    }
    // Paths that already visited -k: only S_n matters.
    void tail(std::int64_t depth, std::int64_t s, const W& w) {
        if (depth == n) {
            if (s == -k) at_level += w;
            return;
        }
        for (const auto& [step, p] : atoms) tail(depth + 1, s + step, w * p);
    }
};

}  // namespace

KempermanResult kemperman_check(const StepLaw& law, std::int64_t n, std::int64_t k,
                                std::int64_t max_states) {
    if (n < 1 || k < 1) throw InvalidParameter("kemperman_check: need n >= 1, k >= 1");
    const auto support = law.finite_support();
    if (support.empty()) throw InvalidParameter("kemperman_check: law must have finite support");
    double states = std::pow(static_cast<double>(support.size()), static_cast<double>(n));
    if (states > static_cast<double>(max_states))
        throw ResourceError("kemperman_check: enumeration exceeds the state budget");
    KempermanResult r;
    if (law.has_exact()) {
        const auto atoms = law.exact_support();
        KempermanEnum<ExactProb> e{atoms, n, k};
        e.run(0, 0, ExactProb(1));
        r.exact = true;
        r.lhs_exact = e.at_level / n;
        r.rhs_exact = e.hit / k;
        r.lhs = to_double(r.lhs_exact);
        r.rhs = to_double(r.rhs_exact);
    } else {
        KempermanEnum<double> e{support, n, k};
        e.run(0, 0, 1.0);
        r.lhs = e.at_level / static_cast<double>(n);
        r.rhs = e.hit / static_cast<double>(k);
    }
    return r;
}

// ---- ballot --------------------------------------------------------------------

ExactProb ballot_prob(std::int64_t a, std::int64_t b) {
    if (b < 0 || a <= b) throw InvalidParameter("ballot_prob: need a > b >= 0");
    return ExactProb(BigCount(a - b), BigCount(a + b));
}

bool ballot_trial(std::int64_t a, std::int64_t b, RngStream& rng) {
    std::int64_t ra = a, rb = b, lead = 0;
    while (ra + rb > 0) {
        if (rng.below(static_cast<std::uint64_t>(ra + rb)) < static_cast<std::uint64_t>(ra)) {
            --ra;
            ++lead;
        } else {
            --rb;
            --lead;
        }
        if (lead <= 0) return false;
    }
    return true;
}

double ballot_mc(std::int64_t a, std::int64_t b, std::int64_t reps, RngStream& rng) {
    if (b < 0 || a <= b) throw InvalidParameter("ballot_mc: need a > b >= 0");
    if (reps < 1) throw InvalidParameter("ballot_mc: reps must be >= 1");
    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < reps; ++r) hits += ballot_trial(a, b, rng) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(reps);
}

// ---- parking -------------------------------------------------------------------

namespace {

// free_left[s] = largest free spot <= s, or 0 when none; path-compressed.
struct LeftFree {
    std::vector<std::int64_t> up;
    explicit LeftFree(std::int64_t n) : up(static_cast<std::size_t>(n + 1)) {
        std::iota(up.begin(), up.end(), 0);
    }
    std::int64_t find(std::int64_t s) {
        std::int64_t r = s;
        while (up[static_cast<std::size_t>(r)] != r) r = up[static_cast<std::size_t>(r)];
        while (up[static_cast<std::size_t>(s)] != r) {
            const std::int64_t next = up[static_cast<std::size_t>(s)];
            up[static_cast<std::size_t>(s)] = r;
            s = next;
        }
        return r;
    }
    void occupy(std::int64_t s) { up[static_cast<std::size_t>(s)] = s - 1; }
};

}  // namespace

ParkingOutcome parking_simulate(std::int64_t n, const std::vector<std::int64_t>& arrivals) {
    if (n < 1) throw InvalidParameter("parking_simulate: n must be >= 1");
    if (arrivals.empty()) throw InvalidParameter("parking_simulate: need at least one car");
    ParkingOutcome out;
    out.occupancy.assign(static_cast<std::size_t>(n), false);
    LeftFree lf(n);
    for (auto a : arrivals) {
        if (a < 1 || a > n) throw InvalidParameter("parking_simulate: spot out of range");
        const std::int64_t s = lf.find(a);
        if (s == 0) {
            ++out.exited;
        } else {
            out.occupancy[static_cast<std::size_t>(s - 1)] = true;
            lf.occupy(s);
        }
    }
    out.success = out.exited == 0;
    return out;
}

ParkingOutcome parking_simulate(std::int64_t n, std::int64_t m, RngStream& rng) {
    if (n < 1 || m < 1) throw InvalidParameter("parking_simulate: need n >= 1, m >= 1");
    std::vector<std::int64_t> arrivals(static_cast<std::size_t>(m));
    for (auto& a : arrivals) a = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
    return parking_simulate(n, arrivals);
}

// ---- fluctuations ----------------------------------------------------------------

std::size_t argmax_time(const LatticePath& path) {
    const auto& s = path.prefix_sums();
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > s[best]) best = i;
    return best;
}

RecordCounts record_stats(const LatticePath& path) {
    const auto& s = path.prefix_sums();
    RecordCounts r;
    r.weak_ascending = 1;
    std::int64_t mx = s[0], mn = s[0];
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] >= mx) ++r.weak_ascending;
        if (s[i] < mn) ++r.strict_descending;
        mx = std::max(mx, s[i]);
        mn = std::min(mn, s[i]);
    }
    return r;
}

}  // namespace rs
