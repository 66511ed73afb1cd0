#include "fpou/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "fpou/errors.hpp"
#include "fpou/noise.hpp"

namespace fpou {

EstimateResult estimate_path(const ObservationPath& x, const CoefficientTable& table) {
    if (table.n < 2) throw std::invalid_argument("estimation needs n >= 2");
    const TSArrays ts = compute_TS(table, x);
    const int n = table.n;
    const double kappa = kappa_of(n, table.lambda);

    double num_ls = 0.0;   // sum F~_j^{-2} (dX_{j+1} - T_j)(X_j - S_{j-1})
    double num_ml = 0.0;   // sum F~_j^{-1} (X_j - S_{j-1})
    double a_star = 0.0;   // sum F~_j^{-2} (X_j - S_{j-1})^2
    for (int j = 1; j <= n - 1; ++j) {
        const double fj = table.diag(j);
        const double dx = x.x(j + 1) - x.x(j);
        const double tj = ts.T[static_cast<size_t>(j - 1)];
        const double centered = x.x(j) - ts.S[static_cast<size_t>(j - 1)];
        num_ls += (dx - tj) * centered / (fj * fj);
        num_ml += centered / fj;
        a_star += centered * centered / (fj * fj);
    }

    if (a_star < 1e-12 * n)
        throw DegeneratePathError("path carries no signal: a_star below guard");

    EstimateResult r;
    r.theta_ls = table.m * num_ls / a_star;
    r.theta_ml = r.theta_ls + table.m * (kappa - 1.0) * num_ml / a_star;
    r.a_star = a_star;
    r.bracket = a_star * kappa * (1.0 - kappa);
    r.kappa = kappa;
    r.n = n;
    r.m = table.m;
    r.alpha = std::log(static_cast<double>(n)) / std::log(static_cast<double>(table.m));
    return r;
}

double lse(const ObservationPath& x, const CoefficientTable& table) {
    return estimate_path(x, table).theta_ls;
}

double mle(const ObservationPath& x, const CoefficientTable& table) {
    return estimate_path(x, table).theta_ml;
}

double conditional_variance_formula(const EstimateResult& result) {
    if (!(result.a_star > 0.0))
        throw DegeneratePathError("conditional variance undefined: a_star is zero");
    const double m = static_cast<double>(result.m);
    return m * m * result.kappa * (1.0 - result.kappa) / result.a_star;
}

double normalization(int m, double alpha, double hurst) {
    if (m < 2) throw std::invalid_argument("grid denominator must be >= 2");
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
    if (!(hurst > 0.5 && hurst < 1.0))
        throw std::invalid_argument("hurst index must lie in (0.5, 1)");
    const double na = std::pow(static_cast<double>(m), alpha);
    if (std::abs(hurst - 0.75) <= 1e-12) return std::sqrt(na / std::log(na));
    if (hurst < 0.75) return std::sqrt(na);
    return std::pow(na, 1.0 - hurst);
}

}  // namespace fpou
