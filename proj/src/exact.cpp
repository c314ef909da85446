#include "randstruct/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "randstruct/errors.hpp"

namespace rs {

void SolverConfig::validate() const {
    if (!(tolerance > 0.0)) throw InvalidParameter("SolverConfig: tolerance must be > 0");
    if (max_iter < 1) throw InvalidParameter("SolverConfig: max_iter must be >= 1");
}

double to_double(const ExactProb& q) { return q.convert_to<double>(); }
double to_double(const BigCount& n) { return n.convert_to<double>(); }

// ---- OffspringLaw -----------------------------------------------------------

namespace {

void check_not_degenerate_one(const std::vector<double>& pmf) {
    for (std::size_t k = 0; k < pmf.size(); ++k)
        if (k != 1 && pmf[k] > 0.0) return;
    throw InvalidParameter("OffspringLaw: support must not be {1} alone");
}

}  // namespace

OffspringLaw OffspringLaw::finite(std::vector<double> pmf) {
    if (pmf.empty()) throw InvalidParameter("OffspringLaw: empty pmf");
    double s = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0)) throw InvalidParameter("OffspringLaw: negative probability");
        s += p;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw InvalidParameter("OffspringLaw: probabilities must sum to 1");
    check_not_degenerate_one(pmf);
    OffspringLaw law;
    law.family_ = Family::finite;
    law.table_ = std::move(pmf);
    return law;
}

OffspringLaw OffspringLaw::finite_exact(const std::vector<ExactProb>& pmf) {
    ExactProb s = 0;
    std::vector<double> d;
    for (const auto& p : pmf) {
        if (p < 0) throw InvalidParameter("OffspringLaw: negative probability");
        s += p;
        d.push_back(to_double(p));
    }
    if (s != 1) throw InvalidParameter("OffspringLaw: probabilities must sum to exactly 1");
    check_not_degenerate_one(d);
    OffspringLaw law;
    law.family_ = Family::finite;
    law.table_ = std::move(d);
    law.exact_ = pmf;
    return law;
}

OffspringLaw OffspringLaw::poisson(double c) {
    if (!(c > 0.0)) throw InvalidParameter("OffspringLaw::poisson: c must be > 0");
    OffspringLaw law;
    law.family_ = Family::poisson;
    law.a_ = c;
    return law;
}

OffspringLaw OffspringLaw::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("OffspringLaw::geometric: p must lie in (0,1]");
    OffspringLaw law;
    law.family_ = Family::geometric;
    law.a_ = p;
    return law;
}

OffspringLaw OffspringLaw::binomial(int d, double p) {
    if (d < 0 || !(p >= 0.0 && p <= 1.0)) throw InvalidParameter("OffspringLaw::binomial: bad parameters");
    if (d == 1 && p == 1.0) throw InvalidParameter("OffspringLaw: support must not be {1} alone");
    OffspringLaw law;
    law.family_ = Family::binomial;
    law.a_ = p;
    law.d_ = d;
    return law;
}

double OffspringLaw::mean() const {
    switch (family_) {
        case Family::finite: {
            double m = 0.0;
            for (std::size_t k = 0; k < table_.size(); ++k) m += static_cast<double>(k) * table_[k];
            return m;
        }
        case Family::poisson: return a_;
        case Family::geometric: return (1.0 - a_) / a_;
        case Family::binomial: return d_ * a_;
    }
    return 0.0;
}

double OffspringLaw::pmf(std::int64_t k) const {
    if (k < 0) return 0.0;
    switch (family_) {
        case Family::finite:
            return static_cast<std::size_t>(k) < table_.size() ? table_[static_cast<std::size_t>(k)] : 0.0;
        case Family::poisson:
            return std::exp(-a_ + static_cast<double>(k) * std::log(a_) - std::lgamma(static_cast<double>(k) + 1.0));
        case Family::geometric: return a_ * std::pow(1.0 - a_, static_cast<double>(k));
        case Family::binomial: {
            if (k > d_) return 0.0;
            const double lc = std::lgamma(d_ + 1.0) - std::lgamma(k + 1.0) - std::lgamma(d_ - k + 1.0);
            const double pk = k == 0 ? 1.0 : std::pow(a_, static_cast<double>(k));
            const double qk = (d_ - k) == 0 ? 1.0 : std::pow(1.0 - a_, static_cast<double>(d_ - k));
            return std::exp(lc) * pk * qk;
        }
    }
    return 0.0;
}

double OffspringLaw::pgf(double s) const {
    switch (family_) {
        case Family::finite: {
            double acc = 0.0;
            for (std::size_t k = table_.size(); k-- > 0;) acc = acc * s + table_[k];
            return acc;
        }
        case Family::poisson: return std::exp(a_ * (s - 1.0));
        case Family::geometric: return a_ / (1.0 - (1.0 - a_) * s);
        case Family::binomial: return std::pow(1.0 - a_ + a_ * s, d_);
    }
    return 0.0;
}

// ---- counts -----------------------------------------------------------------

BigCount factorial(std::int64_t n) {
    BigCount r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigCount binomial_coefficient(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n || n < 0) return 0;
    k = std::min(k, n - k);
    BigCount r = 1;
    // r stays integral: after step i it equals C(n-k+i, i).
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigCount catalan(std::int64_t n) {
    if (n < 0) throw InvalidParameter("catalan: n must be >= 0");
    return binomial_coefficient(2 * n, n) / (n + 1);
}

BigCount cayley_count(std::int64_t n) {
    if (n < 1) throw InvalidParameter("cayley_count: n must be >= 1");
    if (n <= 2) return 1;
    return boost::multiprecision::pow(BigCount(n), static_cast<unsigned>(n - 2));
}

BigCount cayley_forest_count(std::int64_t k, std::int64_t n) {
    if (k < 1 || k > n) throw InvalidParameter("cayley_forest_count: need 1 <= k <= n");
    BigCount num = BigCount(k) * boost::multiprecision::pow(BigCount(n), static_cast<unsigned>(n - k));
    return num / n;
}

BigCount plane_trees_with_degree_profile(const std::map<std::int64_t, std::int64_t>& profile) {
    std::int64_t vertices = 0, edges = 0;
    for (const auto& [i, d] : profile) {
        if (i < 0 || d < 0) return 0;
        vertices += d;
        edges += i * d;
    }
    if (vertices == 0 || edges + 1 != vertices) return 0;
    BigCount r = factorial(vertices - 1);
    for (const auto& [i, d] : profile) r /= factorial(d);
    return r;
}

BigCount plane_forest_count(std::int64_t f, std::int64_t n) {
    if (f < 1 || n < 0) throw InvalidParameter("plane_forest_count: need f >= 1, n >= 0");
    return BigCount(f) * binomial_coefficient(2 * n + f, n) / (2 * n + f);
}

// ---- exact laws --------------------------------------------------------------

double borel_tanner_pmf(double alpha, std::int64_t n) {
    if (!(alpha >= 0.0 && alpha <= 1.0) || n < 1) throw InvalidParameter("borel_tanner_pmf: bad arguments");
    if (alpha == 0.0) return n == 1 ? 1.0 : 0.0;
    const double nd = static_cast<double>(n);
    return std::exp(-alpha * nd + (nd - 1.0) * std::log(alpha * nd) - std::lgamma(nd + 1.0));
}

ExactProb parking_full_prob(std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 0) throw InvalidParameter("parking_full_prob: need n >= 1, m >= 0");
    if (m > n) return 0;
    if (m == 0) return 1;
    BigCount num = BigCount(n + 1 - m) * boost::multiprecision::pow(BigCount(n + 1), static_cast<unsigned>(m - 1));
    BigCount den = boost::multiprecision::pow(BigCount(n), static_cast<unsigned>(m));
    return ExactProb(num, den);
}

ExactProb simple_walk_hitting_pmf(std::int64_t n) {
    if (n < 1) throw InvalidParameter("simple_walk_hitting_pmf: n must be >= 1");
    BigCount den = 2 * boost::multiprecision::pow(BigCount(4), static_cast<unsigned>(n - 1));
    return ExactProb(catalan(n - 1), den);
}

ExactProb plane_height_pmf(std::int64_t n, std::int64_t h) {
    if (n < 1 || h < 0 || h > n) throw InvalidParameter("plane_height_pmf: need 0 <= h <= n");
    return ExactProb(BigCount(2 * h + 1), BigCount(2 * n + 1)) *
           ExactProb(binomial_coefficient(2 * n + 1, n - h), binomial_coefficient(2 * n, n));
}

ExactProb cayley_distance_pmf(std::int64_t n, std::int64_t k) {
    if (n < 1 || k < 1 || k > n) throw InvalidParameter("cayley_distance_pmf: need 1 <= k <= n");
    ExactProb r = ExactProb(BigCount(k), BigCount(n));
    for (std::int64_t j = 1; j < k; ++j) r *= ExactProb(BigCount(n - j), BigCount(n));
    return r;
}

std::vector<ExactProb> cycles_count_pmf(std::int64_t n) {
    if (n < 1) throw InvalidParameter("cycles_count_pmf: n must be >= 1");
    // coef[k] = unsigned Stirling number [n, k], from prod_{j<n} (z + j).
    std::vector<BigCount> coef(static_cast<std::size_t>(n + 1), 0);
    coef[0] = 1;
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::size_t k = static_cast<std::size_t>(j + 1); k > 0; --k) coef[k] = coef[k - 1] + coef[k] * j;
        coef[0] *= j;
    }
    const BigCount nf = factorial(n);
    std::vector<ExactProb> out;
    for (std::int64_t k = 1; k <= n; ++k) out.emplace_back(coef[static_cast<std::size_t>(k)], nf);
    return out;
}

ExactProb cauchy_cycle_type_pmf(const std::vector<std::int64_t>& c) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0) return 0;
        total += static_cast<std::int64_t>(i + 1) * c[i];
    }
    if (c.empty() || total != static_cast<std::int64_t>(c.size())) return 0;
    BigCount den = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        den *= boost::multiprecision::pow(BigCount(i + 1), static_cast<unsigned>(c[i]));
        den *= factorial(c[i]);
    }
    return ExactProb(BigCount(1), den);
}

// ---- solvers -----------------------------------------------------------------

namespace {

bool mean_at_most_one(const OffspringLaw& law) {
    if (!law.exact_table().empty()) {
        ExactProb m = 0;
        const auto& t = law.exact_table();
        for (std::size_t k = 0; k < t.size(); ++k) m += t[k] * static_cast<long long>(k);
        return m <= 1;
    }
    if (law.family() == OffspringLaw::Family::geometric) return law.param() >= 0.5;
    return law.mean() <= 1.0;
}

}  // namespace

double bgw_extinction(const OffspringLaw& law, const SolverConfig& cfg) {
    cfg.validate();
    if (mean_at_most_one(law)) return 1.0;
    if (law.pmf(0) == 0.0) return 0.0;
    // Monotone iteration from 0 approaches the smallest fixed point from below.
    double u = 0.0;
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double next = law.pgf(u);
        if (next - u < cfg.tolerance * 1e-3) {
            u = next;
            break;
        }
        u = next;
    }
    // g(s) - s > 0 on [0, q) and < 0 on (q, 1): bracket and bisect.
    auto h = [&](double s) { return law.pgf(s) - s; };
    double lo = u, hi = 0.5 * (u + 1.0);
    int guard = 0;
    while (h(hi) >= 0.0) {
        lo = hi;
        hi = 0.5 * (hi + 1.0);
        if (++guard > 200) throw NumericError("bgw_extinction: failed to bracket the fixed point");
    }
    if (h(lo) < 0.0) lo = 0.0;
    for (int it = 0; it < 400 && hi - lo > cfg.tolerance * 1e-2; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double giant_fraction(double c, const SolverConfig& cfg) {
    if (!(c > 0.0)) throw InvalidParameter("giant_fraction: c must be > 0");
    if (c <= 1.0) return 0.0;
    return 1.0 - bgw_extinction(OffspringLaw::poisson(c), cfg);
}

double fluid_curve(double c, double t) {
    if (!(c > 0.0) || !(t >= 0.0 && t <= 1.0)) throw InvalidParameter("fluid_curve: need c > 0, t in [0,1]");
    if (c <= 1.0) return 0.5 * t * (2.0 * c - 2.0 - c * t);
    const double alpha = 1.0 - giant_fraction(c);
    if (t <= 1.0 - alpha) return 1.0 - std::exp(-c * t) - t;
    return 0.5 * (c * (1.0 + alpha - t) - 2.0) * (t - 1.0 + alpha);
}

double dickman_rho(double x, const SolverConfig& cfg) {
    cfg.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidParameter("dickman_rho: x must be >= 0");
    if (x <= 1.0) return 1.0;
    // Trapezoid rule on y rho(y) = int_{y-1}^{y} rho, grid aligned on the
    // integers so the kinks of rho sit on nodes. Ring buffer of one unit.
    constexpr std::int64_t N = 10000;
    const double h = 1.0 / N;
    const auto last = static_cast<std::int64_t>(std::ceil(x * N));
    std::vector<double> ring(N + 1, 1.0);  // rho at nodes i-N..i
    double window = static_cast<double>(N - 1);  // sum of rho_j for j in (i-N, i), i = N
    double prev = 1.0, cur = 1.0;
    for (std::int64_t i = N + 1; i <= last; ++i) {
        const double back = ring[static_cast<std::size_t>((i - N) % (N + 1))];  // rho_{i-N}
        // window currently holds sum_{j=i-N}^{i-2} rho_j; shift it to (i-N, i).
        window += ring[static_cast<std::size_t>((i - 1) % (N + 1))] - back;
        const double y = static_cast<double>(i) * h;
        const double rho = h * (0.5 * back + window) / (y - 0.5 * h);
        ring[static_cast<std::size_t>(i % (N + 1))] = rho;
        prev = cur;
        cur = rho;
    }
    if (last == N) return 1.0;
    const double frac = (static_cast<double>(last) - x * N);  // in [0,1)
    return cur + frac * (prev - cur);
}

double poisson_ld_rate(double a) {
    if (!(a > 0.0)) throw InvalidParameter("poisson_ld_rate: a must be > 0");
    return a * std::log(a) - (a - 1.0);
}

double rate_inverse(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidParameter("rate_inverse: c must be >= 0");
    if (c == 0.0) return 1.0;
    double lo = 1.0, hi = 2.0;
    while (poisson_ld_rate(hi) < c) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (poisson_ld_rate(mid) < c)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ba_height_constant(const SolverConfig& cfg) {
    cfg.validate();
    double lo = 0.0, hi = 1.0;  // gamma e^{1+gamma} increases from 0 to e^2 on [0,1]
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::exp(1.0 + mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double gamma = 0.5 * (lo + hi);
    return 1.0 / (2.0 * gamma);
}

double connectivity_limit(double c) { return std::exp(-std::exp(-c)); }

}  // namespace rs
