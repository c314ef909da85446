#include "randstruct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "randstruct/errors.hpp"

namespace rs {

EmpiricalDist EmpiricalDist::tabulate(const std::vector<std::int64_t>& samples, std::int64_t lo,
                                      std::int64_t hi) {
    if (hi < lo) throw InvalidParameter("tabulate: hi < lo");
    EmpiricalDist e;
    for (std::int64_t v = lo; v <= hi; ++v) e.values.push_back(v);
    e.counts.assign(e.values.size(), 0);
    for (auto s : samples) {
        const std::int64_t c = std::clamp(s, lo, hi);
        ++e.counts[static_cast<std::size_t>(c - lo)];
    }
    e.total = static_cast<std::int64_t>(samples.size());
    return e;
}

EmpiricalDist EmpiricalDist::tabulate(const std::vector<std::int64_t>& samples) {
    if (samples.empty()) throw InvalidTest("tabulate: no samples");
    auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    return tabulate(samples, *mn, *mx);
}

EmpiricalDist EmpiricalDist::from_counts(const std::vector<std::int64_t>& counts) {
    EmpiricalDist e;
    e.counts = counts;
    e.values.resize(counts.size());
    std::iota(e.values.begin(), e.values.end(), 0);
    e.total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    return e;
}

double normal_quantile(double p) {
    return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

double chi_square_quantile(double upper_tail_prob, int dof) {
    boost::math::chi_squared_distribution<double> d(dof);
    return boost::math::quantile(boost::math::complement(d, upper_tail_prob));
}

namespace {

double chi_square_sf(double x, int dof) {
    boost::math::chi_squared_distribution<double> d(dof);
    return boost::math::cdf(boost::math::complement(d, x));
}

struct Cell {
    double expected;
    double observed;
};

// Right-to-left merge until every expected count reaches 5; the leftover on
// the far left joins its right neighbour.
std::vector<Cell> merge_cells(const std::vector<Cell>& cells) {
    std::vector<Cell> out;
    Cell cur{0.0, 0.0};
    bool open = false;
    for (std::size_t i = cells.size(); i-- > 0;) {
        cur.expected += cells[i].expected;
        cur.observed += cells[i].observed;
        open = true;
        if (cur.expected >= 5.0) {
            out.push_back(cur);
            cur = {0.0, 0.0};
            open = false;
        }
    }
    if (open) {
        if (out.empty()) {
            out.push_back(cur);
        } else {
            out.back().expected += cur.expected;
            out.back().observed += cur.observed;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

TestReport finish_report(double stat, int dof, double alpha, std::int64_t n) {
    TestReport r;
    r.statistic = stat;
    r.dof = dof;
    r.threshold = chi_square_quantile(alpha, dof);
    r.p_value = std::isfinite(stat) ? chi_square_sf(stat, dof) : 0.0;
    r.pass = stat <= r.threshold;
    r.sample_size = n;
    return r;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("alpha level must lie in (0,1)");
}

}  // namespace

TestReport chi_square_gof(const EmpiricalDist& emp, const std::vector<double>& cell_probs,
                          double alpha_level) {
    check_alpha(alpha_level);
    if (cell_probs.size() != emp.counts.size())
        throw InvalidParameter("chi_square_gof: pmf and cells differ in length");
    if (emp.counts.size() < 2) throw InvalidTest("chi_square_gof: degenerate support (single cell)");
    if (emp.total <= 0) throw InvalidTest("chi_square_gof: empty sample");
    const double n = static_cast<double>(emp.total);
    double mass = 0.0;
    std::vector<Cell> cells(emp.counts.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cell_probs[i] < 0.0) throw InvalidParameter("chi_square_gof: negative probability");
        cells[i] = {n * cell_probs[i], static_cast<double>(emp.counts[i])};
        mass += cell_probs[i];
    }
    if (mass < 1.0) cells.back().expected += n * (1.0 - mass);
    auto merged = merge_cells(cells);
    if (merged.size() < 2) throw InvalidTest("chi_square_gof: degenerate support after merging");
    double stat = 0.0;
    for (const auto& c : merged) {
        if (c.expected <= 0.0) {
            if (c.observed > 0.0) stat = INFINITY;
            continue;
        }
        const double d = c.observed - c.expected;
        stat += d * d / c.expected;
    }
    return finish_report(stat, static_cast<int>(merged.size()) - 1, alpha_level, emp.total);
}

TestReport chi_square_gof(const EmpiricalDist& emp, const Pmf& pmf, double alpha_level) {
    std::vector<double> probs(emp.values.size());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = pmf(emp.values[i]);
    return chi_square_gof(emp, probs, alpha_level);
}

TestReport chi_square_two_sample(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b, double alpha_level) {
    check_alpha(alpha_level);
    if (a.size() != b.size()) throw InvalidParameter("chi_square_two_sample: size mismatch");
    const double na = std::accumulate(a.begin(), a.end(), 0.0);
    const double nb = std::accumulate(b.begin(), b.end(), 0.0);
    if (na <= 0.0 || nb <= 0.0) throw InvalidTest("chi_square_two_sample: empty sample");
    const double fa = na / (na + nb);
    const double fb = nb / (na + nb);
    // Group cells right to left until the smaller expected count reaches 5.
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> cur;
    double cur_e = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
        cur.push_back(i);
        cur_e += std::min(fa, fb) * static_cast<double>(a[i] + b[i]);
        if (cur_e >= 5.0) {
            groups.push_back(cur);
            cur.clear();
            cur_e = 0.0;
        }
    }
    if (!cur.empty()) {
        if (groups.empty())
            groups.push_back(cur);
        else
            groups.back().insert(groups.back().end(), cur.begin(), cur.end());
    }
    if (groups.size() < 2) throw InvalidTest("chi_square_two_sample: degenerate support");
    double stat = 0.0;
    for (const auto& g : groups) {
        double oa = 0.0, ob = 0.0;
        for (auto i : g) {
            oa += static_cast<double>(a[i]);
            ob += static_cast<double>(b[i]);
        }
        const double ea = fa * (oa + ob);
        const double eb = fb * (oa + ob);
        stat += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    return finish_report(stat, static_cast<int>(groups.size()) - 1, alpha_level,
                         static_cast<std::int64_t>(na + nb));
}

TestReport chi_square_two_sample(const std::map<std::vector<std::int64_t>, std::int64_t>& a,
                                 const std::map<std::vector<std::int64_t>, std::int64_t>& b,
                                 double alpha_level) {
    std::map<std::vector<std::int64_t>, std::pair<std::int64_t, std::int64_t>> joined;
    for (const auto& [k, v] : a) joined[k].first += v;
    for (const auto& [k, v] : b) joined[k].second += v;
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (const auto& [k, v] : joined) cells.push_back(v);
    // Frequent categories first so that the rare ones are pooled together.
    std::stable_sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
        return x.first + x.second > y.first + y.second;
    });
    std::vector<std::int64_t> va, vb;
    for (const auto& c : cells) {
        va.push_back(c.first);
        vb.push_back(c.second);
    }
    return chi_square_two_sample(va, vb, alpha_level);
}

double ks_critical_coefficient(double alpha_level) {
    return std::sqrt(-0.5 * std::log(alpha_level / 2.0));
}

TestReport ks_test(const std::vector<double>& xs, const std::function<double(double)>& cdf,
                   double alpha_level) {
    check_alpha(alpha_level);
    if (xs.size() < 50) throw InvalidTest("ks_test: at least 50 samples required");
    if (!std::is_sorted(xs.begin(), xs.end())) throw InvalidParameter("ks_test: samples must be sorted");
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
    }
    TestReport r;
    r.statistic = d;
    r.threshold = ks_critical_coefficient(alpha_level) / std::sqrt(n);
    // Asymptotic Kolmogorov tail, first terms of the alternating series.
    const double lam = d * std::sqrt(n);
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
        p += term;
        if (std::fabs(term) < 1e-16) break;
    }
    r.p_value = std::clamp(p, 0.0, 1.0);
    r.pass = d <= r.threshold;
    r.sample_size = static_cast<std::int64_t>(xs.size());
    return r;
}

MeanCi mean_ci(const std::vector<double>& xs, double level) {
    if (xs.size() < 2) throw InvalidParameter("mean_ci: at least 2 samples required");
    if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("mean_ci: level must lie in (0,1)");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double z = normal_quantile(0.5 + level / 2.0);
    return {mean, z * sd / std::sqrt(n)};
}

Proportion proportion(std::int64_t hits, std::int64_t n) {
    if (n <= 0) throw InvalidParameter("proportion: n must be positive");
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

bool within_sigmas(std::int64_t hits, std::int64_t n, double expected_p, double k) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(expected_p * (1.0 - expected_p) / static_cast<double>(n));
    return std::fabs(p - expected_p) <= k * se;
}

double poisson_pmf(double lambda, std::int64_t k) {
    if (k < 0) return 0.0;
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    return std::exp(-lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0));
}

double poisson_upper_tail(double lambda, std::int64_t k) {
    if (k <= 0) return 1.0;
    if (lambda == 0.0) return 0.0;
    // P(N >= k) = P(Gamma(k,1) <= lambda), the regularized lower gamma.
    return boost::math::gamma_p(static_cast<double>(k), lambda);
}

double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
    if (k < 0 || k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    return std::exp(std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
                    kd * std::log(p) + (nd - kd) * std::log1p(-p));
}

}  // namespace rs
