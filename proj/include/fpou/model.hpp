#pragma once

#include <cstdint>
#include <vector>

#include "fpou/kernel.hpp"
#include "fpou/noise.hpp"

namespace fpou {

struct PathProvenance {
    bool simulated = false;
    double theta = 0.0;       // meaningful only when simulated
    uint64_t stream_seed = 0;
};

// Observed process X_0..X_n on the grid t_j = j/m, with X_0 = 0.
struct ObservationPath {
    std::vector<double> values;  // length n+1
    int m = 0;
    int n = 0;
    PathProvenance provenance;

    double x(int j) const { return values[static_cast<size_t>(j)]; }
};

// T_j and S_{j-1} arrays together with the forward-substitution solutions
// they are built from: u solves b~u = (x_1..x_n), v solves b~v = y with
// y_k = x_1 + ... + x_{k-1}.
struct TSArrays {
    std::vector<double> T;  // T[j-1] = T_j, j = 1..n-1
    std::vector<double> S;  // S[j]   = S_j, j = 0..n-2
    std::vector<double> u;  // u[i-1] = u_i, i = 1..n
    std::vector<double> v;  // v[i-1] = v_i, i = 1..n
};

// X_{j+1} = (1+theta/m) X_j + sum_{i<=j} f~_{ij} eta_i + F~_j eta_{j+1},
// evaluated in prefix form X_k = N_k + (theta/m) * (X_1 + ... + X_{k-1})
// so that theta = 0 reproduces fractional_path bit for bit.
ObservationPath simulate_ou(const CoefficientTable& table, double theta,
                            const NoisePath& noise);

// Single pass over the rows: the running substitution partials double as
// the T/S sums via T_j = (sum_{i<=j} b~_{j+1,i} u_i) - x_j and
// S_{j-1} = (sum_{i<=j} b~_{j+1,i} v_i) - y_j.
TSArrays compute_TS(const CoefficientTable& table, const ObservationPath& x);

// eta_hat = b~^{-1} (x - (theta/m) prefix(x)); equals the driving noise on
// simulated data at the true theta.
std::vector<double> reconstruct_noise(const CoefficientTable& table,
                                      const ObservationPath& x, double theta);

// Wraps externally supplied observations; a nonzero first value is shifted
// to zero and flagged.
ObservationPath ingest_path(const std::vector<double>& values, int m,
                            bool* shifted = nullptr);

}  // namespace fpou
