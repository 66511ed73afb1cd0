#pragma once

#include <string>
#include <vector>

#include "fpou/montecarlo.hpp"

namespace fpou {

struct VerifyCheck {
    std::string name;
    std::string status;  // pass | fail | informational
    double measured = 0.0;
    double threshold = 0.0;
    std::string anchor;  // claim under test, or "plumbing"
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    bool passed = true;  // no asserted failures
    double wall_seconds = 0.0;
};

// Exact algebraic identities on one simulated path (small n).
VerifyReport run_identity_suite(const ExperimentConfig& config);

// Deterministic diagonal bounds plus Monte Carlo moment inequalities.
VerifyReport run_bound_suite(const std::vector<ExperimentConfig>& grid);

// Covariance/stationarity/long-range-dependence/total-variation checks.
VerifyReport run_distribution_suite(const ExperimentConfig& config);

// Martingale-increment nullity, decorrelation, measurability, sensitivity.
VerifyReport run_martingale_suite(const ExperimentConfig& config);

std::string report_json(const std::vector<VerifyReport>& reports);
bool all_passed(const std::vector<VerifyReport>& reports);

}  // namespace fpou
