#include "fpou/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fpou/errors.hpp"

namespace fpou {

namespace {
constexpr int kTableCap = 20000;
}

KernelParams make_kernel_params(double hurst) {
    if (!(hurst > 0.501 && hurst < 1.0))
        throw std::invalid_argument("hurst index must lie in (0.501, 1)");
    return {hurst, 1.0 / std::tgamma(hurst - 0.5)};
}

namespace {

// integral over u in (0,1) of u^{H-3/2} (s + (t-s)u)^{H-1/2}, fixed rule;
// the rule must carry exponent H - 3/2
double inner_fixed(double t, double s, double hurst, const QuadratureRule& rule) {
    const double gap = t - s;
    const double e = hurst - 0.5;
    double acc = 0.0;
    for (int r = 0; r < rule.order; ++r) {
        const size_t q = static_cast<size_t>(r);
        acc += rule.weights[q] * std::pow(s + gap * rule.nodes[q], e);
    }
    return acc;
}

// Full inner integral J(t,s) = Int_s^t tau^{H-1/2} (tau-s)^{H-3/2} dtau,
// usable for every 0 < s < t. The fixed Jacobi rule in u = (tau-s)/(t-s)
// converges at machine precision while its branch point u = -s/(t-s) stays
// away from [0,1]; once s drops below 4(t-s) the range is split at
// tau = 2s instead: below, tau = s(1+z) yields another clean Jacobi
// integral, and above, the integrand is a bounded-ratio power law summed
// octave by octave. No free tolerance anywhere.
double inner_tau_full(double t, double s, double hurst, const QuadratureRule& jac,
                      const QuadratureRule& leg) {
    const double gap = t - s;
    if (s >= 4.0 * gap)
        return std::pow(gap, hurst - 0.5) * inner_fixed(t, s, hurst, jac);

    const double z1 = std::min(1.0, gap / s);
    double head = 0.0;
    for (int r = 0; r < jac.order; ++r) {
        const size_t q = static_cast<size_t>(r);
        head += jac.weights[q] * std::pow(1.0 + z1 * jac.nodes[q], hurst - 0.5);
    }
    head *= std::pow(s, 2.0 * hurst - 1.0) * std::pow(z1, hurst - 0.5);

    double tail = 0.0;
    double hi = t;
    const double cut = 2.0 * s;
    while (hi > cut) {
        const double lo = std::max(cut, 0.5 * hi);
        const double len = hi - lo;
        if (!(len > 0.0)) break;
        double acc = 0.0;
        for (int r = 0; r < leg.order; ++r) {
            const size_t q = static_cast<size_t>(r);
            const double tau = lo + len * leg.nodes[q];
            acc += leg.weights[q] * std::pow(tau, hurst - 0.5) *
                   std::pow(tau - s, hurst - 1.5);
        }
        tail += acc * len;
        hi = lo;
    }
    return head + tail;
}

// kernel without its s^{1/2-H} factor
double kernel_smooth_factor(double t, double s, const KernelParams& p,
                            const QuadratureRule& rule) {
    return p.gamma_factor * std::pow(t - s, p.hurst - 0.5) *
           inner_fixed(t, s, p.hurst, rule);
}

}  // namespace

double kernel_eval(double t, double s, const KernelParams& params, int inner_order) {
    if (!(s > 0.0)) throw std::invalid_argument("kernel requires s > 0");
    if (s >= t) return 0.0;
    const QuadratureRule rule = gauss_jacobi(inner_order, params.hurst - 1.5);
    return std::pow(s, 0.5 - params.hurst) * kernel_smooth_factor(t, s, params, rule);
}

double coeff_entry(int k, int i, int m, const KernelParams& params,
                   const QuadMeta& quad) {
    if (i < 1 || k < i) throw std::invalid_argument("coefficient indices require 1 <= i <= k");
    if (m < 2) throw std::invalid_argument("grid denominator must be >= 2");
    const double t = static_cast<double>(k) / m;
    const QuadratureRule inner = gauss_jacobi(quad.inner, params.hurst - 1.5);
    if (i == 1) {
        // m * Int_0^{1/m} K(t,s) ds with s = x/m and the s^{1/2-H} factor
        // folded into a Jacobi rule
        const QuadratureRule outer = gauss_jacobi(quad.outer, 0.5 - params.hurst);
        double acc = 0.0;
        for (int p = 0; p < outer.order; ++p) {
            const size_t q = static_cast<size_t>(p);
            acc += outer.weights[q] *
                   kernel_smooth_factor(t, outer.nodes[q] / m, params, inner);
        }
        return std::pow(static_cast<double>(m), params.hurst - 0.5) * acc;
    }
    const QuadratureRule outer = gauss_legendre(quad.outer);
    double acc = 0.0;
    for (int p = 0; p < outer.order; ++p) {
        const size_t q = static_cast<size_t>(p);
        const double s = (i - 1 + outer.nodes[q]) / m;
        acc += outer.weights[q] * std::pow(s, 0.5 - params.hurst) *
               kernel_smooth_factor(t, s, params, inner);
    }
    return acc;
}

namespace {

// Near-diagonal entries at adaptive tolerance 1e-12. The inner rule is
// accurate here because s stays at least one grid cell away from t except
// in the two s -> 0 corner entries, which switch to nested adaptive.
struct BandIntegrator {
    const KernelParams& params;
    const QuadratureRule& inner;
    const QuadratureRule& octave;  // Legendre rule for inner_tau_full tails
    int m;

    static constexpr double kTol = 1e-12;

    // b_{k,k}, k >= 2: right-end corner where (t-s)^{H-1/2} loses smoothness
    double diagonal(int k) const {
        const double t = static_cast<double>(k) / m;
        const double lo = static_cast<double>(k - 1) / m;
        const KernelParams& p = params;
        const QuadratureRule& rule = inner;
        const std::function<double(double)> h = [t, &p, &rule](double s) {
            return std::pow(s, 0.5 - p.hurst) * kernel_smooth_factor(t, s, p, rule);
        };
        return m * adaptive_singular(h, lo, t, SingularEnd::right, kTol / m);
    }

    // b_{i+1,i}, i >= 2: integrand analytic on the whole block
    double first_off(int i) const {
        const double t = static_cast<double>(i + 1) / m;
        const double lo = static_cast<double>(i - 1) / m;
        const double hi = static_cast<double>(i) / m;
        const KernelParams& p = params;
        const QuadratureRule& rule = inner;
        const std::function<double(double)> h = [t, &p, &rule](double s) {
            return std::pow(s, 0.5 - p.hurst) * kernel_smooth_factor(t, s, p, rule);
        };
        return m * adaptive_singular(h, lo, hi, SingularEnd::none, kTol / m);
    }

    // b_{1,1} and b_{2,1}: s ranges down to the outer singularity at 0
    double corner(int k) const {
        const double t = static_cast<double>(k) / m;
        const KernelParams& p = params;
        const QuadratureRule& rule = inner;
        const QuadratureRule& leg = octave;
        const std::function<double(double)> h = [t, &p, &rule, &leg](double s) {
            return std::pow(s, 0.5 - p.hurst) * p.gamma_factor *
                   inner_tau_full(t, s, p.hurst, rule, leg);
        };
        return m * adaptive_singular(h, 0.0, 1.0 / m, SingularEnd::left, kTol / m);
    }
};

}  // namespace

std::shared_ptr<const UnscaledTable> build_unscaled(int m, int n, double hurst,
                                                    const QuadMeta& quad) {
    if (m < 2) throw std::invalid_argument("grid denominator must be >= 2");
    if (n < 2) throw std::invalid_argument("sample count must be >= 2");
    if (n > kTableCap)
        throw ResourceLimitError(
            "dense table would exceed the n <= 20000 cap; reduce alpha/m or use a "
            "cached table");
    const KernelParams params = make_kernel_params(hurst);

    auto table = std::make_shared<UnscaledTable>();
    table->m = m;
    table->n = n;
    table->hurst = hurst;
    table->quad = quad;
    table->entries.assign(static_cast<size_t>(n) * (n + 1) / 2, 0.0);
    double* e = table->entries.data();

    const QuadratureRule band_inner =
        gauss_jacobi(std::max(24, quad.inner), hurst - 1.5);
    const QuadratureRule band_octave = gauss_legendre(15);
    const BandIntegrator band{params, band_inner, band_octave, m};

    // band values: diag[k] = b_{k,k}, off[i] = b_{i+1,i}
    std::vector<double> diag(static_cast<size_t>(n) + 1, 0.0);
    std::vector<double> off(static_cast<size_t>(n), 0.0);
    diag[1] = band.corner(1);
    for (int k = 2; k <= n; ++k) diag[static_cast<size_t>(k)] = band.diagonal(k);
    off[1] = band.corner(2);
    for (int i = 2; i <= n - 1; ++i) off[static_cast<size_t>(i)] = band.first_off(i);

    // Block increments f_{i,j'} = b_{j'+1,i} - b_{j',i} for j' >= i+1 are
    // smooth double integrals over 1/m x 1/m blocks; in block coordinates
    //   f = scale * SUM_{p,r} U[i][p] V[j'][r] C[j'-i][p][r]
    // with scale = gamma * m^{H-3/2}. Rows then accumulate by prefix sums.
    const int qo = quad.outer;
    const int qi = quad.inner;
    const QuadratureRule xg = gauss_legendre(qo);
    const QuadratureRule xj = gauss_jacobi(qo, 0.5 - hurst);
    const QuadratureRule yg = gauss_legendre(qi);
    // m-power: m * ds dtau (m^-1) times s, tau, tau-s powers (net m^{3/2-H})
    const double scale = params.gamma_factor * std::pow(static_cast<double>(m), 0.5 - hurst);

    const size_t so = static_cast<size_t>(qo);
    const size_t si = static_cast<size_t>(qi);
    std::vector<double> U(static_cast<size_t>(n + 1) * so, 0.0);
    std::vector<double> V(static_cast<size_t>(n + 1) * si, 0.0);
    for (int i = 2; i <= n - 2; ++i)
        for (int p = 0; p < qo; ++p)
            U[static_cast<size_t>(i) * so + p] =
                scale * xg.weights[static_cast<size_t>(p)] *
                std::pow(i - 1 + xg.nodes[static_cast<size_t>(p)], 0.5 - hurst);
    for (int j = 2; j <= n - 1; ++j)
        for (int r = 0; r < qi; ++r)
            V[static_cast<size_t>(j) * si + r] =
                yg.weights[static_cast<size_t>(r)] *
                std::pow(j + yg.nodes[static_cast<size_t>(r)], hurst - 0.5);

    std::vector<double> C(static_cast<size_t>(std::max(n - 2, 1)) * so * si, 0.0);
    for (int d = 1; d <= n - 3; ++d)
        for (int p = 0; p < qo; ++p)
            for (int r = 0; r < qi; ++r)
                C[(static_cast<size_t>(d) * so + p) * si + r] =
                    std::pow(d + 1 + yg.nodes[static_cast<size_t>(r)] -
                                 xg.nodes[static_cast<size_t>(p)],
                             hurst - 1.5);

    // column 1 increments use the Jacobi x-nodes
    std::vector<double> f1(static_cast<size_t>(n), 0.0);
    for (int j = 2; j <= n - 1; ++j) {
        double acc = 0.0;
        for (int p = 0; p < qo; ++p) {
            const double xp = xj.nodes[static_cast<size_t>(p)];
            double row = 0.0;
            for (int r = 0; r < qi; ++r)
                row += V[static_cast<size_t>(j) * si + r] *
                       std::pow(j + yg.nodes[static_cast<size_t>(r)] - xp, hurst - 1.5);
            acc += xj.weights[static_cast<size_t>(p)] * row;
        }
        f1[static_cast<size_t>(j)] = scale * acc;
    }

    e[CoefficientTable::index(1, 1)] = diag[1];
    if (n >= 2) {
        e[CoefficientTable::index(2, 1)] = off[1];
        e[CoefficientTable::index(2, 2)] = diag[2];
    }
    for (int k = 3; k <= n; ++k) {
        const double* prev = e + static_cast<size_t>(k - 1) * (k - 2) / 2;
        double* cur = e + static_cast<size_t>(k) * (k - 1) / 2;
        cur[0] = prev[0] + f1[static_cast<size_t>(k - 1)];
        const double* Vk = V.data() + static_cast<size_t>(k - 1) * si;
        for (int i = 2; i <= k - 2; ++i) {
            const double* Ui = U.data() + static_cast<size_t>(i) * so;
            const double* Cd = C.data() + static_cast<size_t>(k - 1 - i) * so * si;
            double acc = 0.0;
            for (int p = 0; p < qo; ++p) {
                double row = 0.0;
                const double* Cp = Cd + static_cast<size_t>(p) * si;
                for (int r = 0; r < qi; ++r) row += Vk[r] * Cp[r];
                acc += Ui[p] * row;
            }
            cur[i - 1] = prev[i - 1] + acc;
        }
        cur[k - 2] = off[static_cast<size_t>(k - 1)];
        cur[k - 1] = diag[static_cast<size_t>(k)];
    }
    return table;
}

CoefficientTable scale_table(const UnscaledTable& unscaled, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("intensity lambda must be positive");
    CoefficientTable table;
    table.m = unscaled.m;
    table.n = unscaled.n;
    table.hurst = unscaled.hurst;
    table.lambda = lambda;
    table.quad = unscaled.quad;
    table.entries.resize(unscaled.entries.size());
    const double inv = 1.0 / std::sqrt(lambda);
    for (size_t i = 0; i < unscaled.entries.size(); ++i)
        table.entries[i] = unscaled.entries[i] * inv;
    return table;
}

int sample_count(int m, double alpha) {
    if (m < 2) throw std::invalid_argument("grid denominator must be >= 2");
    if (!(alpha >= 1.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be >= 1");
    const double raw = std::pow(static_cast<double>(m), alpha);
    if (!(raw < static_cast<double>(std::numeric_limits<int>::max())))
        throw ResourceLimitError(
            "sample count m^alpha exceeds the dense table cap; reduce alpha or m");
    return static_cast<int>(std::llround(raw));
}

CoefficientTable build_table(int m, double alpha, double hurst, double lambda,
                             const QuadMeta& quad) {
    const int n = sample_count(m, alpha);
    const auto unscaled = build_unscaled(m, n, hurst, quad);
    return scale_table(*unscaled, lambda);
}

}  // namespace fpou
