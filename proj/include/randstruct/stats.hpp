#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace rs {

// Integer-valued tabulation. values are ascending; the last cell is read as
// the upper tail "value >= values.back()" by chi_square_gof.
struct EmpiricalDist {
    std::vector<std::int64_t> values;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    // Cells lo..hi; samples below lo land in lo, above hi land in hi.
    static EmpiricalDist tabulate(const std::vector<std::int64_t>& samples, std::int64_t lo,
                                  std::int64_t hi);
    // Cells min..max of the data.
    static EmpiricalDist tabulate(const std::vector<std::int64_t>& samples);
    // Arbitrary categorical data keyed 0..k-1 from a count vector.
    static EmpiricalDist from_counts(const std::vector<std::int64_t>& counts);
};

struct TestReport {
    double statistic = 0.0;
    double threshold = 0.0;  // critical value at the requested level
    double p_value = 1.0;
    int dof = 0;
    bool pass = false;
    std::int64_t sample_size = 0;
};

using Pmf = std::function<double(std::int64_t)>;

// Pearson goodness of fit. Expected mass missing from the listed cells is
// assigned to the last cell. Cells are merged right to left until each
// expected count is >= 5.
TestReport chi_square_gof(const EmpiricalDist& emp, const Pmf& pmf, double alpha_level);
// Same, with a pmf given on the cells of emp in order.
TestReport chi_square_gof(const EmpiricalDist& emp, const std::vector<double>& cell_probs,
                          double alpha_level);

// Two-sample homogeneity test on aligned count vectors (same categories).
TestReport chi_square_two_sample(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b, double alpha_level);

// Category-keyed convenience for two-sample tests.
TestReport chi_square_two_sample(const std::map<std::vector<std::int64_t>, std::int64_t>& a,
                                 const std::map<std::vector<std::int64_t>, std::int64_t>& b,
                                 double alpha_level);

// One-sample Kolmogorov-Smirnov with asymptotic critical value c(alpha)/sqrt(N).
// Samples must be sorted ascending; at least 50 are required.
TestReport ks_test(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf, double alpha_level);

double ks_critical_coefficient(double alpha_level);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
    double lo() const { return mean - half_width; }
    double hi() const { return mean + half_width; }
    bool contains(double x) const { return x >= lo() && x <= hi(); }
};

// Normal-approximation interval at the given confidence level (e.g. 0.95).
MeanCi mean_ci(const std::vector<double>& samples, double level);

// Proportion estimate with its binomial standard error.
struct Proportion {
    double p = 0.0;
    double se = 0.0;
    std::int64_t n = 0;
};
Proportion proportion(std::int64_t hits, std::int64_t n);

// |observed - expected| <= k * sqrt(p(1-p)/n) computed at the expected p.
bool within_sigmas(std::int64_t hits, std::int64_t n, double expected_p, double k);

double normal_quantile(double p);
double chi_square_quantile(double upper_tail_prob, int dof);
double poisson_pmf(double lambda, std::int64_t k);
// P(Poisson(lambda) >= k).
double poisson_upper_tail(double lambda, std::int64_t k);
double binomial_pmf(std::int64_t n, double p, std::int64_t k);

}  // namespace rs
