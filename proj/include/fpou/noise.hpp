#pragma once

#include <cstdint>
#include <vector>

#include "fpou/kernel.hpp"

namespace fpou {

// Two-valued driving noise: eta takes kappa - 1 with probability kappa and
// kappa with probability 1 - kappa, where kappa = e^{-lambda/n}. Each draw
// has mean zero and variance kappa(1 - kappa).
struct NoiseSpec {
    int n = 0;
    double lambda = 0.0;
    double kappa = 0.0;
};

double kappa_of(int n, double lambda);
NoiseSpec make_noise_spec(int n, double lambda);

struct NoisePath {
    std::vector<double> values;  // eta_1 .. eta_n
    NoiseSpec spec;
    uint64_t stream_seed = 0;
};

// Deterministic given (spec, stream_seed).
NoisePath sample_eta(const NoiseSpec& spec, uint64_t stream_seed);

// Random walk N_k = sum_{i<=k} b~_{k,i} eta_i, returned with N_0 = 0 at
// index 0 (length n+1).
std::vector<double> fractional_path(const CoefficientTable& table,
                                    const NoisePath& noise);

// B_i = eta_i - (kappa - 1), in {0,1}; off-lattice values are rejected.
std::vector<int> to_bernoulli(const NoisePath& noise);

// Total-variation distance between Binomial(n, 1 - e^{-lambda/n}) and
// Poisson(lambda), summed until both tails fall below 1e-15.
double binomial_poisson_tv(long long n, double lambda);

}  // namespace fpou
