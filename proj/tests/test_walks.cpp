#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"
#include "randstruct/errors.hpp"
#include "randstruct/stats.hpp"
#include "randstruct/walks.hpp"
#include "test_util.hpp"

using namespace rs;

namespace {

// Every increment sequence of length n over the alphabet.
void each_sequence(const std::vector<std::int64_t>& alphabet, std::size_t n,
                   const std::function<void(const std::vector<std::int64_t>&)>& f) {
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::int64_t> seq(n, alphabet[0]);
    while (true) {
        f(seq);
        std::size_t i = 0;
        while (i < n && ++idx[i] == alphabet.size()) {
            idx[i] = 0;
            seq[i] = alphabet[0];
            ++i;
        }
        if (i == n) return;
        seq[i] = alphabet[idx[i]];
    }
}

// Rotation oracle written directly from the definition: shift, sum, scan.
std::int64_t shifts_hitting_at_end(const std::vector<std::int64_t>& inc) {
    const auto n = inc.size();
    std::int64_t total = 0;
    for (auto x : inc) total += x;
    std::int64_t count = 0;
    for (std::size_t l = 0; l < n; ++l) {
        std::int64_t s = 0;
        std::size_t first = n + 1;
        for (std::size_t i = 0; i < n; ++i) {
            s += inc[(l + i) % n];
            if (s == total) {
                first = i + 1;
                break;
            }
        }
        count += first == n;
    }
    return count;
}

}  // namespace

TEST_CASE("lattice path basics") {
    LatticePath p({1, -1, 2, 0});
    CHECK(p.length() == 4);
    CHECK(p.prefix_sums() == std::vector<std::int64_t>{0, 1, 0, 2, 2});
    CHECK(p.total() == 2);
    CHECK(LatticePath().total() == 0);
    CHECK_THROWS_AS(LatticePath({0, -2}), FormatError);
}

TEST_CASE("step laws") {
    auto s = StepLaw::finite({0.5, 0.25, 0.25});
    CHECK(s.mean() == doctest::Approx(-0.25));
    CHECK(s.pmf(-1) == 0.5);
    CHECK(s.pmf(3) == 0.0);
    CHECK(StepLaw::poisson_minus_one(2.0).mean() == doctest::Approx(1.0));
    CHECK(StepLaw::plus_minus_one().mean() == 0.0);
    CHECK(StepLaw::geometric_minus_one(0.5).mean() == doctest::Approx(0.0));
    CHECK_THROWS_AS(StepLaw::finite({0.5, 0.6}), InvalidParameter);
    CHECK(StepLaw::poisson_minus_one(1.0).finite_support().empty());
}

TEST_CASE("sample_path") {
    auto rng = testutil::rng(1);
    auto p = sample_path(StepLaw::finite({1.0}), 3, rng);
    CHECK(p.increments() == std::vector<std::int64_t>{-1, -1, -1});

    auto big = sample_path(StepLaw::plus_minus_one(), 1000000, rng);
    CHECK(std::fabs(double(big.total())) <= 4.0 * std::sqrt(1e6));

    // Poisson(2) - 1 has variance 2.
    auto pois = sample_path(StepLaw::poisson_minus_one(2.0), 100000, rng);
    CHECK(std::fabs(double(pois.total()) / 1e5 - 1.0) <= 4.0 * std::sqrt(2.0 / 1e5));
    for (auto x : pois.increments()) REQUIRE(x >= -1);
}

TEST_CASE("hitting_time") {
    CHECK(hitting_time(LatticePath({-1}), 1) == 1u);
    CHECK(hitting_time(LatticePath({1, -1, -1}), 1) == 3u);
    CHECK_FALSE(hitting_time(LatticePath({0, 1, -1}), 1).has_value());
    CHECK(hitting_time(LatticePath({-1, -1, 0}), 2) == 2u);
}

TEST_CASE("cycle shifts") {
    LatticePath p({1, 2, 3, -1});
    CHECK(cycle_shift(p, 0) == p);
    CHECK(cycle_shift(p, 1).increments() == std::vector<std::int64_t>{2, 3, -1, 1});
    CHECK(good_shift_count(LatticePath({1, -1, -1})) == 1);
    CHECK(good_shift_count(LatticePath({-1, -1})) == 2);
    CHECK(good_shift_count(LatticePath({1, -1, 1, -1, -1, -1})) == 2);
    CHECK_THROWS_AS(good_shift_count(LatticePath({1, 0})), InvalidParameter);
    CHECK_THROWS_AS(good_shift_count(LatticePath()), InvalidParameter);
}

TEST_CASE("cycle lemma: every short path with total -k has exactly k good shifts") {
    const std::vector<std::int64_t> alphabet{-1, 0, 1, 2};
    std::int64_t tested = 0;
    for (std::size_t n = 1; n <= 8; ++n)
        each_sequence(alphabet, n, [&](const std::vector<std::int64_t>& inc) {
            std::int64_t total = 0;
            for (auto x : inc) total += x;
            if (total > -1 || total < -3) return;
            ++tested;
            const auto g = good_shift_count(LatticePath(inc));
            REQUIRE(g == -total);
            REQUIRE(g == shifts_hitting_at_end(inc));
        });
    CHECK(tested > 1000);
}

TEST_CASE("Kemperman identity") {
    auto pm = kemperman_check(StepLaw::plus_minus_one(), 3, 1);
    REQUIRE(pm.exact);
    CHECK(pm.lhs_exact == ExactProb(1, 8));
    CHECK(pm.rhs_exact == ExactProb(1, 8));

    auto g = kemperman_check(StepLaw::finite_exact({ExactProb(1, 2), ExactProb(1, 4), ExactProb(1, 4)}), 4, 2);
    REQUIRE(g.exact);
    CHECK(g.lhs_exact == g.rhs_exact);
    CHECK(g.lhs_exact > 0);

    // Poisson(1) - 1 truncated to {-1, 0, 1, 2}, renormalized.
    std::vector<double> w{std::exp(-1.0), std::exp(-1.0), std::exp(-1.0) / 2, std::exp(-1.0) / 6};
    double z = 0.0;
    for (double x : w) z += x;
    for (double& x : w) x /= z;
    auto po = kemperman_check(StepLaw::finite(w), 5, 1);
    CHECK(std::fabs(po.lhs - po.rhs) <= 1e-12);
    CHECK(po.lhs > 0.0);

    for (std::int64_t n = 1; n <= 8; ++n)
        for (std::int64_t k = 1; k <= 2; ++k) {
            auto r = kemperman_check(StepLaw::finite_exact({ExactProb(1, 3), ExactProb(1, 2), ExactProb(1, 6)}), n, k);
            REQUIRE(r.exact);
            CHECK(r.lhs_exact == r.rhs_exact);
        }

    CHECK_THROWS_AS(kemperman_check(StepLaw::finite({0.25, 0.25, 0.25, 0.25}), 20, 1), ResourceError);
}

TEST_CASE("Poisson walk hitting time is Borel-Tanner") {
    auto rng = testutil::rng(2);
    for (double alpha : {0.5, 1.0}) {
        const auto law = StepLaw::poisson_minus_one(alpha);
        std::vector<std::int64_t> t;
        t.reserve(100000);
        for (int r = 0; r < 100000; ++r) {
            std::int64_t s = 0, i = 0;
            while (s > -1 && i < 60) s += law.sample(rng), ++i;
            t.push_back(s == -1 ? i : 61);  // beyond the cap falls into the tail cell
        }
        auto emp = EmpiricalDist::tabulate(t, 1, 60);
        auto rep = chi_square_gof(emp, [&](std::int64_t n) { return borel_tanner_pmf(alpha, n); }, 0.01);
        CHECK_MESSAGE(rep.pass, "alpha " << alpha << " stat " << rep.statistic << " > " << rep.threshold);
    }
}

TEST_CASE("simple walk hitting time at odd times") {
    auto rng = testutil::rng(3);
    const auto law = StepLaw::plus_minus_one();
    std::vector<std::int64_t> t;
    for (int r = 0; r < 100000; ++r) {
        std::int64_t s = 0, i = 0;
        while (s > -1 && i < 41) s += law.sample(rng), ++i;
        REQUIRE((s != -1 || i % 2 == 1));
        t.push_back(s == -1 ? (i + 1) / 2 : 21);
    }
    auto emp = EmpiricalDist::tabulate(t, 1, 21);
    auto rep = chi_square_gof(emp, [](std::int64_t n) { return to_double(simple_walk_hitting_pmf(n)); }, 0.01);
    CHECK_MESSAGE(rep.pass, rep.statistic << " > " << rep.threshold);
}

TEST_CASE("ballot") {
    CHECK(ballot_prob(2, 1) == ExactProb(1, 3));
    CHECK(ballot_prob(5, 0) == 1);
    CHECK(ballot_prob(4, 2) == ExactProb(1, 3));
    CHECK_THROWS_AS(ballot_prob(2, 2), InvalidParameter);
    // Enumerate all C(a+b, b) orders for small a, b.
    for (int a = 1; a <= 6; ++a)
        for (int b = 0; b < a; ++b) {
            std::int64_t ok = 0, all = 0;
            for (std::int64_t mask = 0; mask < (1 << (a + b)); ++mask) {
                if (__builtin_popcountll(std::uint64_t(mask)) != b) continue;
                ++all;
                int lead = 0;
                bool ahead = true;
                for (int i = 0; i < a + b; ++i) {
                    lead += (mask >> i & 1) ? -1 : 1;
                    ahead = ahead && lead > 0;
                }
                ok += ahead;
            }
            CHECK(ballot_prob(a, b) == ExactProb(ok, all));
        }
    auto rng = testutil::rng(4);
    const double est = ballot_mc(4, 2, 1000000, rng);
    CHECK(std::fabs(est - 1.0 / 3.0) <= 3.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / 1e6));
}

TEST_CASE("parking replay") {
    // Six cars on six spots; car 6 finds spots 2 and 1 taken and leaves.
    auto o = parking_simulate(6, {3, 5, 1, 2, 6, 2});
    CHECK_FALSE(o.success);
    CHECK(o.exited == 1);
    CHECK(o.occupancy == std::vector<bool>{true, true, true, false, true, true});

    auto ok = parking_simulate(2, {1, 2});
    CHECK(ok.success);
    CHECK(ok.exited == 0);
    CHECK(parking_simulate(2, {2, 2}).success);
    CHECK_FALSE(parking_simulate(2, {1, 1}).success);
    CHECK_THROWS_AS(parking_simulate(3, {4}), InvalidParameter);
    CHECK_THROWS_AS(parking_simulate(3, {0}), InvalidParameter);
}

TEST_CASE("parking frequency") {
    auto rng = testutil::rng(5);
    std::int64_t hits = 0;
    for (int r = 0; r < 1000000; ++r) hits += parking_simulate(2, 2, rng).success;
    CHECK(within_sigmas(hits, 1000000, to_double(parking_full_prob(2, 2)), 3.0));
}

TEST_CASE("parking is Abelian") {
    auto rng = testutil::rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        const std::int64_t n = 1 + std::int64_t(rng.below(10));
        const std::int64_t m = 1 + std::int64_t(rng.below(12));
        std::vector<std::int64_t> arr(static_cast<std::size_t>(m));
        for (auto& a : arr) a = 1 + std::int64_t(rng.below(std::uint64_t(n)));
        const auto base = parking_simulate(n, arr);
        for (int k = 0; k < 5; ++k) {
            shuffle(arr, rng);
            const auto o = parking_simulate(n, arr);
            REQUIRE(o.success == base.success);
            REQUIRE(o.occupancy == base.occupancy);
            REQUIRE(o.exited == base.exited);
        }
    }
}

TEST_CASE("argmax time") {
    CHECK(argmax_time(LatticePath({-1, -1})) == 0);
    CHECK(argmax_time(LatticePath({1, 1, -1})) == 2);
    CHECK(argmax_time(LatticePath({1, -1, 1})) == 1);  // first index on ties
}

TEST_CASE("arcsine law for the argmax") {
    // Exact law of the first argmax K of n fair +-1 steps: P(K = 0) = g(n), P(K = k) = g(k-1) g(n-k) / 2,
    // with g(m) = P(max of m steps <= 0) = C(m, floor(m/2)) / 2^m.
    const std::size_t n = 10000;
    auto g = [](std::size_t m) {
        return std::exp(std::lgamma(double(m) + 1) - std::lgamma(double(m / 2) + 1) -
                        std::lgamma(double(m - m / 2) + 1) - double(m) * std::log(2.0));
    };
    std::vector<double> cdf(n + 2, 0.0);  // cdf[k] = P(K < k)
    for (std::size_t k = 0; k <= n; ++k) cdf[k + 1] = cdf[k] + (k == 0 ? g(n) : 0.5 * g(k - 1) * g(n - k));
    REQUIRE(cdf[n + 1] == doctest::Approx(1.0).epsilon(1e-9));

    // (K + U) / n has the piecewise-linear interpolation of the exact cdf.
    auto exact = [&](double u) {
        const double t = std::clamp(u, 0.0, 1.0) * double(n);
        const auto k = std::min<std::size_t>(std::size_t(t), n);
        return cdf[k] + (t - double(k)) * (cdf[k + 1] - cdf[k]);
    };
    auto arcsine = [](double u) { return 2.0 / std::numbers::pi * std::asin(std::sqrt(std::clamp(u, 0.0, 1.0))); };
    // The exact law sits within half the atom at zero, sqrt(2 / (pi n)) / 2, of the limit.
    double gap = 0.0;
    for (std::size_t i = 0; i <= 4 * n; ++i) gap = std::max(gap, std::fabs(exact(double(i) / (4.0 * n)) - arcsine(double(i) / (4.0 * n))));
    CHECK(gap <= 0.5 * std::sqrt(2.0 / (std::numbers::pi * double(n))) + 1e-9);

    auto rng = testutil::rng(7);
    const int reps = 100000;
    std::vector<double> x;
    std::int64_t first_half = 0;
    x.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        const auto k = argmax_time(sample_path(StepLaw::plus_minus_one(), n, rng));
        x.push_back((double(k) + rng.uniform01()) / double(n));
        first_half += 2 * k <= n;
    }
    CHECK(within_sigmas(first_half, reps, 0.5, 3.0));
    std::sort(x.begin(), x.end());
    auto rep = ks_test(x, exact, 0.01);
    CHECK_MESSAGE(rep.pass, rep.statistic << " > " << rep.threshold);
}

TEST_CASE("records") {
    CHECK(record_stats(LatticePath({1, 1, 1})).weak_ascending == 4);
    CHECK(record_stats(LatticePath({-1, -1})).weak_ascending == 1);
    CHECK(record_stats(LatticePath({-1, -1})).strict_descending == 2);
    CHECK(record_stats(LatticePath({0, 0})).weak_ascending == 3);
}

TEST_CASE("duality: mean record count equals mean time below zero") {
    auto rng = testutil::rng(8);
    const auto law = StepLaw::finite({2.0 / 3.0, 0.0, 1.0 / 3.0});
    std::vector<double> records, below;
    for (int r = 0; r < 10000; ++r) {
        records.push_back(double(record_stats(sample_path(law, 10000, rng)).weak_ascending));
        std::int64_t s = 0, i = 0;
        while (s >= 0) s += law.sample(rng), ++i;
        below.push_back(double(i));
    }
    const auto a = testutil::mean_se(records), b = testutil::mean_se(below);
    CHECK(std::fabs(a.mean - b.mean) <= 3.0 * std::sqrt(a.se * a.se + b.se * b.se));
    CHECK(testutil::mean_within(records, 3.0));
    CHECK(testutil::mean_within(below, 3.0));
}
