#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fpou/quadrature.hpp"

namespace fpou {

// Parameters of the singular moving-average kernel
//   K(t,s) = gamma_factor * s^{1/2-H} * Integral_s^t tau^{H-1/2} (tau-s)^{H-3/2} dtau
// for 0 < s < t, zero otherwise; gamma_factor = 1/Gamma(H-1/2).
struct KernelParams {
    double hurst = 0.0;
    double gamma_factor = 0.0;
};

// H must lie in (0.501, 1); the regularization constant is filled in.
KernelParams make_kernel_params(double hurst);

// Quadrature orders: inner rule integrates the kernel's tau integral,
// outer rule the coefficient's s integral.
struct QuadMeta {
    int inner = 16;
    int outer = 8;

    bool operator==(const QuadMeta&) const = default;
};

// Lower-triangular coefficient table, already scaled by 1/sqrt(lambda).
// Row k (1-based) holds entries for columns 1..k contiguously.
struct CoefficientTable {
    int m = 0;
    int n = 0;
    double hurst = 0.0;
    double lambda = 0.0;
    QuadMeta quad;
    std::vector<double> entries;  // n(n+1)/2, row-major lower triangle

    static size_t index(int k, int i) {
        return static_cast<size_t>(k) * (k - 1) / 2 + static_cast<size_t>(i - 1);
    }
    double b(int k, int i) const { return entries[index(k, i)]; }
    const double* row(int k) const {
        return entries.data() + static_cast<size_t>(k) * (k - 1) / 2;
    }
    // F~_j, 0 <= j <= n-1
    double diag(int j) const { return b(j + 1, j + 1); }
    // f~_{i,j} = b~_{j+1,i} - b~_{j,i}, 1 <= i <= j <= n-1
    double f_tilde(int i, int j) const { return b(j + 1, i) - b(j, i); }
};

// Table before the 1/sqrt(lambda) scaling; shared across intensity values
// so that every scaled table is produced by exactly one rounding step.
struct UnscaledTable {
    int m = 0;
    int n = 0;
    double hurst = 0.0;
    QuadMeta quad;
    std::vector<double> entries;
};

// K(t,s) via the substitution tau = s + (t-s)u and a Gauss-Jacobi rule
// with exponent H - 3/2. Returns 0 for s >= t; s <= 0 is rejected.
double kernel_eval(double t, double s, const KernelParams& params, int inner_order);

// Unscaled b_{k,i} = m * Integral over s in ((i-1)/m, i/m) of K(k/m, s),
// by a fixed composed rule: outer Gauss-Jacobi (exponent 1/2-H) when i = 1,
// Gauss-Legendre otherwise, kernel values from kernel_eval.
double coeff_entry(int k, int i, int m, const KernelParams& params,
                   const QuadMeta& quad);

// n = round(m^alpha). Near-diagonal band (k-i <= 1) uses adaptive
// integration at tolerance 1e-12; remaining entries accumulate smooth
// block increments by prefix sums along each column.
std::shared_ptr<const UnscaledTable> build_unscaled(int m, int n, double hurst,
                                                    const QuadMeta& quad);
CoefficientTable scale_table(const UnscaledTable& unscaled, double lambda);
CoefficientTable build_table(int m, double alpha, double hurst, double lambda,
                             const QuadMeta& quad);

int sample_count(int m, double alpha);

// FNV-1a over the entry payload bytes; the value stored in cache files.
uint64_t table_checksum(const CoefficientTable& table);

void cache_write(const CoefficientTable& table, const std::string& path);
CoefficientTable cache_read(const std::string& path, int m, int n, double hurst,
                            double lambda, const QuadMeta& quad);

}  // namespace fpou
