#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fpou/estimators.hpp"
#include "fpou/kernel.hpp"

namespace fpou {

// Intensity selection: a fixed lambda, or the symmetric-noise calibration
// lambda = n ln 2 (kappa = 1/2), or its per-grid-step variant lambda = m ln 2.
enum class LambdaMode { explicit_value, fbm_symmetric, fbm_literal };

struct ExperimentConfig {
    int m = 10;
    double alpha = 2.0;
    double hurst = 0.75;
    double theta = 0.5;
    double lambda = 1.0;
    LambdaMode lambda_mode = LambdaMode::explicit_value;
    int reps = 100;
    uint64_t master_seed = 1;
    QuadMeta quad;
    int threads = 1;
    std::string cache_dir;  // empty: keep tables in memory only
};

struct EstimatorStats {
    double mean = 0.0;
    double variance = 0.0;  // reps - 1 in the denominator
    double bias = 0.0;
    double mse = 0.0;
};

struct McSummary {
    ExperimentConfig config;
    int n = 0;
    double lambda_used = 0.0;
    double kappa = 0.0;
    double c1 = 0.0;  // histogram normalization
    EstimatorStats ls, ml;
    std::vector<double> raw_ls, raw_ml;    // estimates per replication
    std::vector<double> norm_ls, norm_ml;  // c1 * (estimate - theta)
    double wall_seconds = 0.0;
    bool single_rep_warning = false;
    std::string status = "ok";
};

// Replication r draws its noise from this stream; independent of threading.
uint64_t stream_seed(uint64_t master_seed, uint64_t index);

double effective_lambda(const ExperimentConfig& config, int n);

// Basename used for on-disk coefficient caches.
std::string cache_file_name(int m, int n, double hurst, double lambda,
                            const QuadMeta& quad);

// Table lookup order: in-process cache, then cache_dir file, then a fresh
// build (written back to cache_dir when set). All three routes yield
// bit-identical tables.
std::shared_ptr<const CoefficientTable> acquire_table(const ExperimentConfig& config);

McSummary run_cell(const ExperimentConfig& config);

// Per-cell failures become summaries with a non-"ok" status.
std::vector<McSummary> run_grid(const std::vector<ExperimentConfig>& grid);

// CSV emitters. Deterministic byte-for-byte given the summaries
// (wall-clock is never written).
std::string emit_table(const std::vector<McSummary>& cells);
std::string emit_histograms(const McSummary& cell);
std::string emit_rates(const std::vector<int>& m_grid, const ExperimentConfig& base);

// Shortest round-trip decimal form; used by every CSV/JSON emitter.
std::string format_double(double v);

}  // namespace fpou
