#pragma once

#include "fpou/model.hpp"

namespace fpou {

// Closed-form estimates for the drift together with the diagnostics used
// by the variance formulas: a_star = sum_j F~_j^{-2} (X_j - S_{j-1})^2 and
// bracket = a_star * kappa (1 - kappa).
struct EstimateResult {
    double theta_ls = 0.0;
    double theta_ml = 0.0;
    double a_star = 0.0;
    double bracket = 0.0;
    double kappa = 0.0;
    int n = 0;
    int m = 0;
    double alpha = 0.0;
};

// Both estimators in one pass; lse/mle are thin wrappers.
EstimateResult estimate_path(const ObservationPath& x, const CoefficientTable& table);

// theta_LS = m * [sum_j F~_j^{-2} (dX_{j+1} - T_j)(X_j - S_{j-1})] / a_star,
// sums over j = 1..n-1.
double lse(const ObservationPath& x, const CoefficientTable& table);

// theta_ML = theta_LS + m (kappa - 1) [sum_j F~_j^{-1}(X_j - S_{j-1})] / a_star.
double mle(const ObservationPath& x, const CoefficientTable& table);

// m^2 kappa(1-kappa) / a_star, the exact conditional variance of the LSE
// error given the path history.
double conditional_variance_formula(const EstimateResult& result);

// Histogram scaling constant: sqrt(m^alpha) below H = 3/4,
// sqrt(m^alpha / ln m^alpha) at the boundary, m^{alpha(1-H)} above it.
double normalization(int m, double alpha, double hurst);

}  // namespace fpou
