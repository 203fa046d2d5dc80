#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arena {

// Configuration of a single simulation run. alpha is the trendiness boost,
// n the number of simultaneous attention matters, c the noise-size parameter
// (larger c means smaller noise). iterations counts all timesteps including
// the two initialization steps.
struct ModelParams {
    double alpha = 1.0;
    int n = 20;
    double c = 12.0;
    int iterations = 10000;
    std::uint64_t seed = 0;
    int burn_in = 100;

    void validate() const {
        if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
        if (n < 2) throw std::invalid_argument("n must be >= 2");
        if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
        if (iterations < 2) throw std::invalid_argument("iterations must be >= 2");
        if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
        if (iterations <= burn_in)
            throw std::invalid_argument("iterations must exceed burn_in");
    }
};

// Standard deviation of the per-item, per-step noise: the noise variance is
// 1/(c*n^2), so sigma = 1/(n*sqrt(c)).
inline double noise_sigma(int n, double c) {
    return 1.0 / (static_cast<double>(n) * std::sqrt(c));
}

inline double noise_sigma(const ModelParams& params) {
    return noise_sigma(params.n, params.c);
}

}  // namespace arena
