#include "fpou/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fpou/errors.hpp"

namespace fpou {

double kappa_of(int n, double lambda) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("intensity lambda must be positive");
    return std::exp(-lambda / n);
}

NoiseSpec make_noise_spec(int n, double lambda) {
    return {n, lambda, kappa_of(n, lambda)};
}

NoisePath sample_eta(const NoiseSpec& spec, uint64_t stream_seed) {
    const double kappa = kappa_of(spec.n, spec.lambda);
    NoisePath path;
    path.spec = spec;
    path.spec.kappa = kappa;
    path.stream_seed = stream_seed;
    path.values.resize(static_cast<size_t>(spec.n));

    std::mt19937_64 rng(stream_seed);
    const double lo = kappa - 1.0;
    for (double& v : path.values) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = u < kappa ? lo : kappa;
    }
    return path;
}

std::vector<double> fractional_path(const CoefficientTable& table,
                                    const NoisePath& noise) {
    if (noise.spec.n != table.n ||
        static_cast<int>(noise.values.size()) != table.n)
        throw std::invalid_argument("noise length does not match the table");
    if (noise.spec.lambda != table.lambda)
        throw std::invalid_argument("noise intensity does not match the table");

    std::vector<double> walk(static_cast<size_t>(table.n) + 1, 0.0);
    const double* eta = noise.values.data();
    for (int k = 1; k <= table.n; ++k) {
        const double* row = table.row(k);
        double acc = 0.0;
        for (int i = 0; i < k; ++i) acc += row[i] * eta[i];
        walk[static_cast<size_t>(k)] = acc;
    }
    return walk;
}

std::vector<int> to_bernoulli(const NoisePath& noise) {
    const double lo = noise.spec.kappa - 1.0;
    const double hi = noise.spec.kappa;
    std::vector<int> bits(noise.values.size());
    for (size_t i = 0; i < noise.values.size(); ++i) {
        if (noise.values[i] == lo) {
            bits[i] = 0;
        } else if (noise.values[i] == hi) {
            bits[i] = 1;
        } else {
            throw CorruptedInputError("noise value off the two-point lattice");
        }
    }
    return bits;
}

double binomial_poisson_tv(long long n, double lambda) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("intensity lambda must be positive");

    const double p = -std::expm1(-lambda / static_cast<double>(n));
    const double odds = p / (1.0 - p);

    // pmf recurrences; stop once both upper tails are negligible
    double pb = std::pow(1.0 - p, static_cast<double>(n));  // k = 0
    double pp = std::exp(-lambda);
    double cb = pb;
    double cp = pp;
    double dist = std::abs(pb - pp);
    const long long k_max =
        std::max(n, static_cast<long long>(lambda + 60.0 * std::sqrt(lambda) + 100.0));
    for (long long k = 0; k < k_max; ++k) {
        if (cb >= 1.0 - 1e-15 && cp >= 1.0 - 1e-15) break;
        pb = k < n ? pb * static_cast<double>(n - k) / static_cast<double>(k + 1) * odds
                   : 0.0;
        pp = pp * lambda / static_cast<double>(k + 1);
        cb += pb;
        cp += pp;
        dist += std::abs(pb - pp);
    }
    return 0.5 * dist;
}

}  // namespace fpou
