#include "randstruct/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "randstruct/errors.hpp"

namespace rs {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    return mix(state);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : seed_(master_seed), index_(stream_index) {
    // Two rounds of mixing so that (seed, idx) and (seed', idx') with
    // seed ^ idx == seed' ^ idx' still land far apart.
    std::uint64_t key = mix(master_seed + 0x632be59bd9b4e019ULL);
    key = mix(key ^ (stream_index * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL));
    std::uint64_t st = key;
    for (auto& w : s_) w = splitmix64(st);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParameter("below: bound must be >= 1");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return RngStream(master_seed, stream_index);
}

// ---- DistributionSpec -------------------------------------------------------

using K = DistributionSpec::Kind;

DistributionSpec DistributionSpec::uniform() { return {K::uniform01, 0, 0, 0}; }
DistributionSpec DistributionSpec::bernoulli(double p) { return {K::bernoulli, p, 0, 0}; }
DistributionSpec DistributionSpec::binomial(std::int64_t n, double p) {
    return {K::binomial, p, 0, n};
}
DistributionSpec DistributionSpec::geometric(double p) { return {K::geometric, p, 0, 0}; }
DistributionSpec DistributionSpec::geometric_shifted(double p) {
    return {K::geometric_shifted, p, 0, 0};
}
DistributionSpec DistributionSpec::poisson(double lambda) { return {K::poisson, lambda, 0, 0}; }
DistributionSpec DistributionSpec::exponential(double rate) {
    return {K::exponential, rate, 0, 0};
}
DistributionSpec DistributionSpec::gumbel() { return {K::gumbel, 0, 0, 0}; }
DistributionSpec DistributionSpec::rayleigh() { return {K::rayleigh, 0, 0, 0}; }
DistributionSpec DistributionSpec::gamma(double shape, double rate) {
    return {K::gamma, shape, rate, 0};
}

bool DistributionSpec::is_integer() const {
    switch (kind) {
        case K::bernoulli:
        case K::binomial:
        case K::geometric:
        case K::geometric_shifted:
        case K::poisson:
            return true;
        default:
            return false;
    }
}

namespace {

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter(std::string(what) + ": p must lie in [0,1]");
}

void check_geom(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("geometric: p must lie in (0,1]");
}

void check_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidParameter(std::string(what) + " must be > 0");
}

}  // namespace

void DistributionSpec::validate() const {
    switch (kind) {
        case K::uniform01:
        case K::gumbel:
        case K::rayleigh:
            return;
        case K::bernoulli:
            check_prob(a, "bernoulli");
            return;
        case K::binomial:
            check_prob(a, "binomial");
            if (n < 0) throw InvalidParameter("binomial: n must be >= 0");
            return;
        case K::geometric:
        case K::geometric_shifted:
            check_geom(a);
            return;
        case K::poisson:
            if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidParameter("poisson: lambda must be >= 0");
            return;
        case K::exponential:
            check_positive(a, "exponential rate");
            return;
        case K::gamma:
            check_positive(a, "gamma shape");
            check_positive(b, "gamma rate");
            return;
    }
}

double sample(const DistributionSpec& d, RngStream& rng) {
    d.validate();
    switch (d.kind) {
        case K::uniform01: return rng.uniform01();
        case K::bernoulli: return bernoulli(rng, d.a) ? 1.0 : 0.0;
        case K::binomial: return static_cast<double>(binomial(rng, d.n, d.a));
        case K::geometric: return static_cast<double>(geometric(rng, d.a));
        case K::geometric_shifted: return static_cast<double>(geometric_shifted(rng, d.a));
        case K::poisson: return static_cast<double>(poisson(rng, d.a));
        case K::exponential: return exponential(rng, d.a);
        case K::gumbel: return gumbel(rng);
        case K::rayleigh: return rayleigh(rng);
        case K::gamma: return gamma_variate(rng, d.a, d.b);
    }
    return 0.0;
}

// ---- samplers ---------------------------------------------------------------

bool bernoulli(RngStream& rng, double p) {
    check_prob(p, "bernoulli");
    return rng.uniform01() < p;
}

namespace {

// Sequential inversion; requires n*p small enough that q^n does not underflow.
std::int64_t binomial_inversion(RngStream& rng, std::int64_t n, double p) {
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = static_cast<double>(n + 1) * s;
    const double r0 = std::pow(q, static_cast<double>(n));
    for (;;) {
        double u = rng.uniform01();
        double r = r0;
        std::int64_t x = 0;
        while (u > r) {
            u -= r;
            ++x;
            if (x > n) break;
            r *= a / static_cast<double>(x) - s;
            if (r <= 0.0) break;
        }
        if (x <= n && u <= r) return x;
    }
}

std::int64_t binomial_small(RngStream& rng, std::int64_t n, double p) {
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < n; ++i) k += rng.uniform01() < p ? 1 : 0;
    return k;
}

}  // namespace

std::int64_t binomial(RngStream& rng, std::int64_t n, double p) {
    check_prob(p, "binomial");
    if (n < 0) throw InvalidParameter("binomial: n must be >= 0");
    std::int64_t acc = 0;
    // Knuth's order-statistic splitting: the a-th smallest of n uniforms is
    // Beta(a, n+1-a); it tells how many uniforms fall below p on one side.
    while (n > 64) {
        if (p == 0.0) return acc;
        if (p == 1.0) return acc + n;
        const double mean_small = static_cast<double>(n) * std::min(p, 1.0 - p);
        if (mean_small < 30.0) {
            if (p <= 0.5) return acc + binomial_inversion(rng, n, p);
            return acc + n - binomial_inversion(rng, n, 1.0 - p);
        }
        const std::int64_t a = 1 + n / 2;
        const std::int64_t b = n + 1 - a;
        const double x = beta_variate(rng, static_cast<double>(a), static_cast<double>(b));
        if (x >= p) {
            n = a - 1;
            p = p / x;
        } else {
            acc += a;
            n = b - 1;
            p = (p - x) / (1.0 - x);
        }
        p = std::min(1.0, std::max(0.0, p));
    }
    return acc + binomial_small(rng, n, p);
}

std::int64_t geometric(RngStream& rng, double p) {
    check_geom(p);
    if (p == 1.0) return 1;
    const double g = std::floor(std::log(rng.uniform_pos()) / std::log1p(-p));
    if (g >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return 1 + static_cast<std::int64_t>(g);
}

std::int64_t geometric_shifted(RngStream& rng, double p) { return geometric(rng, p) - 1; }

std::int64_t poisson(RngStream& rng, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("poisson: lambda must be >= 0");
    if (lambda == 0.0) return 0;
    if (lambda <= 30.0) {
        const double p0 = std::exp(-lambda);
        for (;;) {
            const double u = rng.uniform01();
            double p = p0;
            double f = p0;
            std::int64_t k = 0;
            while (u > f) {
                ++k;
                p *= lambda / static_cast<double>(k);
                f += p;
                if (p == 0.0) break;
            }
            if (u <= f) return k;
        }
    }
    // Transformed rejection with squeeze (Hormann's PTRS).
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform01() - 0.5;
        const double v = rng.uniform01();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -lambda + kf * loglam - std::lgamma(kf + 1.0))
            return static_cast<std::int64_t>(kf);
    }
}

double exponential(RngStream& rng, double rate) {
    check_positive(rate, "exponential rate");
    return -std::log(rng.uniform_pos()) / rate;
}

double gumbel(RngStream& rng) {
    double u;
    do u = rng.uniform01();
    while (u == 0.0);
    return -std::log(-std::log(u));
}

double rayleigh(RngStream& rng) { return std::sqrt(-2.0 * std::log(rng.uniform_pos())); }

double normal01(RngStream& rng) {
    // Marsaglia polar method; the second variate is discarded so that one call
    // consumes a self-contained chunk of the stream.
    for (;;) {
        const double x = 2.0 * rng.uniform01() - 1.0;
        const double y = 2.0 * rng.uniform01() - 1.0;
        const double s = x * x + y * y;
        if (s > 0.0 && s < 1.0) return x * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double gamma_variate(RngStream& rng, double shape, double rate) {
    check_positive(shape, "gamma shape");
    check_positive(rate, "gamma rate");
    if (shape < 1.0) {
        const double g = gamma_variate(rng, shape + 1.0, 1.0);
        return g * std::pow(rng.uniform_pos(), 1.0 / shape) / rate;
    }
    // Marsaglia-Tsang.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal01(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double beta_variate(RngStream& rng, double a, double b) {
    const double x = gamma_variate(rng, a, 1.0);
    const double y = gamma_variate(rng, b, 1.0);
    return x / (x + y);
}

std::pair<std::size_t, double> race(const std::vector<double>& rates, RngStream& rng) {
    if (rates.empty()) throw InvalidParameter("race: at least one rate required");
    for (double r : rates)
        if (!(r > 0.0) || !std::isfinite(r)) throw InvalidParameter("race: rates must be > 0");
    std::size_t best = 0;
    double tmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const double t = exponential(rng, rates[i]);
        if (t < tmin) {
            tmin = t;
            best = i;
        }
    }
    return {best, tmin};
}

}  // namespace rs
