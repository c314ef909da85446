#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rs {

using BigCount = boost::multiprecision::cpp_int;
using ExactProb = boost::multiprecision::cpp_rational;

struct SolverConfig {
    double tolerance = 1e-12;
    int max_iter = 10000;
    void validate() const;
};

// Offspring distribution on {0,1,2,...}: a finite table or a named family.
class OffspringLaw {
public:
    enum class Family { finite, poisson, geometric, binomial };

    static OffspringLaw finite(std::vector<double> pmf);  // pmf[k] = P(k children)
    static OffspringLaw finite_exact(const std::vector<ExactProb>& pmf);
    static OffspringLaw poisson(double c);
    static OffspringLaw geometric(double p);  // P(k) = p (1-p)^k
    static OffspringLaw binomial(int d, double p);

    Family family() const { return family_; }
    double mean() const;
    double pmf(std::int64_t k) const;
    // Generating function g(s) = sum_k P(k) s^k.
    double pgf(double s) const;
    const std::vector<double>& table() const { return table_; }
    const std::vector<ExactProb>& exact_table() const { return exact_; }
    double param() const { return a_; }
    int trials() const { return d_; }

private:
    Family family_ = Family::finite;
    std::vector<double> table_;
    std::vector<ExactProb> exact_;
    double a_ = 0.0;
    int d_ = 0;
};

BigCount binomial_coefficient(std::int64_t n, std::int64_t k);
BigCount factorial(std::int64_t n);

BigCount catalan(std::int64_t n);
BigCount cayley_count(std::int64_t n);
BigCount cayley_forest_count(std::int64_t k, std::int64_t n);
// profile maps child count i to the number d_i of vertices with i children.
BigCount plane_trees_with_degree_profile(const std::map<std::int64_t, std::int64_t>& profile);
BigCount plane_forest_count(std::int64_t f, std::int64_t n);

double borel_tanner_pmf(double alpha, std::int64_t n);
ExactProb parking_full_prob(std::int64_t n, std::int64_t m);
ExactProb simple_walk_hitting_pmf(std::int64_t n);
ExactProb plane_height_pmf(std::int64_t n, std::int64_t h);
ExactProb cayley_distance_pmf(std::int64_t n, std::int64_t k);

double bgw_extinction(const OffspringLaw& law, const SolverConfig& cfg = {});
double giant_fraction(double c, const SolverConfig& cfg = {});
double fluid_curve(double c, double t);
double dickman_rho(double x, const SolverConfig& cfg = {});
double poisson_ld_rate(double a);
double rate_inverse(double c);
double ba_height_constant(const SolverConfig& cfg = {});
// Entry k-1 holds P(C_n = k) for k = 1..n.
std::vector<ExactProb> cycles_count_pmf(std::int64_t n);
// c[i-1] is the number of cycles of length i.
ExactProb cauchy_cycle_type_pmf(const std::vector<std::int64_t>& c);
double connectivity_limit(double c);

double to_double(const ExactProb& q);
double to_double(const BigCount& n);

}  // namespace rs
