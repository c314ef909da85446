#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rs {

// xoshiro256** seeded from a SplitMix64 hash of (master_seed, stream_index).
// Equal keys give identical sequences; the key hash decorrelates distinct keys.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    // Uniform on [0,1) with 53 random bits.
    double uniform01();
    // Uniform on (0,1]; safe to take the log of.
    double uniform_pos();
    // Uniform on {0, ..., bound-1}, exact (Lemire rejection). bound >= 1.
    std::uint64_t below(std::uint64_t bound);

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_index() const { return index_; }

private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
    std::uint64_t index_;
};

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

std::uint64_t splitmix64(std::uint64_t& state);

struct DistributionSpec {
    enum class Kind {
        uniform01,
        bernoulli,
        binomial,
        geometric,          // on {1,2,...}
        geometric_shifted,  // on {0,1,...}
        poisson,
        exponential,
        gumbel,
        rayleigh,
        gamma
    };
    Kind kind = Kind::uniform01;
    double a = 0.0;      // p, lambda, rate, or gamma shape
    double b = 0.0;      // gamma rate
    std::int64_t n = 0;  // binomial trials

    static DistributionSpec uniform();
    static DistributionSpec bernoulli(double p);
    static DistributionSpec binomial(std::int64_t n, double p);
    static DistributionSpec geometric(double p);
    static DistributionSpec geometric_shifted(double p);
    static DistributionSpec poisson(double lambda);
    static DistributionSpec exponential(double rate);
    static DistributionSpec gumbel();
    static DistributionSpec rayleigh();
    static DistributionSpec gamma(double shape, double rate);

    bool is_integer() const;
    // Throws InvalidParameter when parameters are out of range.
    void validate() const;
};

double sample(const DistributionSpec& dist, RngStream& rng);

// Typed samplers. All of them validate their parameters.
bool bernoulli(RngStream& rng, double p);
std::int64_t binomial(RngStream& rng, std::int64_t n, double p);
std::int64_t geometric(RngStream& rng, double p);          // {1,2,...}
std::int64_t geometric_shifted(RngStream& rng, double p);  // {0,1,...}
std::int64_t poisson(RngStream& rng, double lambda);
double exponential(RngStream& rng, double rate);
double gumbel(RngStream& rng);
double rayleigh(RngStream& rng);
double gamma_variate(RngStream& rng, double shape, double rate);
double beta_variate(RngStream& rng, double a, double b);
double normal01(RngStream& rng);

// Exponential race: index of the first clock to ring and its time.
std::pair<std::size_t, double> race(const std::vector<double>& rates, RngStream& rng);

template <class T>
void shuffle(std::vector<T>& v, RngStream& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace rs
