#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "randstruct/rng.hpp"

namespace testutil {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    double var = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe m;
    const double n = double(xs.size());
    m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.var = ss / (n - 1.0);
    m.se = std::sqrt(m.var / n);
    return m;
}

// |mean - ref| within k standard errors of the sample mean.
inline bool mean_within(const std::vector<double>& xs, double ref, double k = 3.0) {
    auto m = mean_se(xs);
    return std::fabs(m.mean - ref) <= k * m.se;
}

inline rs::RngStream rng(std::uint64_t idx, std::uint64_t seed = 12345) { return rs::make_stream(seed, idx); }

}  // namespace testutil
