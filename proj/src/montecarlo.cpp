#include "fpou/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "fpou/errors.hpp"
#include "fpou/noise.hpp"
#include "fpou/parallel.hpp"

namespace fpou {

uint64_t stream_seed(uint64_t master_seed, uint64_t index) {
    uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double effective_lambda(const ExperimentConfig& config, int n) {
    switch (config.lambda_mode) {
        case LambdaMode::fbm_symmetric:
            return static_cast<double>(n) * std::numbers::ln2;
        case LambdaMode::fbm_literal:
            return static_cast<double>(config.m) * std::numbers::ln2;
        default:
            if (!(config.lambda > 0.0) || !std::isfinite(config.lambda))
                throw std::invalid_argument("intensity lambda must be positive");
            return config.lambda;
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string cache_file_name(int m, int n, double hurst, double lambda,
                            const QuadMeta& quad) {
    return "fpou_m" + std::to_string(m) + "_n" + std::to_string(n) + "_H" +
           format_double(hurst) + "_lam" + format_double(lambda) + "_q" +
           std::to_string(quad.inner) + "x" + std::to_string(quad.outer) + ".fpou";
}

namespace {

struct TableCache {
    std::mutex mutex;
    // single-slot caches: grids change rarely within one run
    int um = 0, un = 0;
    double uh = 0.0;
    QuadMeta uq;
    std::shared_ptr<const UnscaledTable> unscaled;
    double slambda = 0.0;
    std::shared_ptr<const CoefficientTable> scaled;
};

TableCache& table_cache() {
    static TableCache cache;
    return cache;
}

}  // namespace

std::shared_ptr<const CoefficientTable> acquire_table(const ExperimentConfig& config) {
    const int n = sample_count(config.m, config.alpha);
    const double lambda = effective_lambda(config, n);
    TableCache& cache = table_cache();

    std::shared_ptr<const UnscaledTable> unscaled;
    {
        std::lock_guard<std::mutex> lock(cache.mutex);
        const bool same_grid = cache.um == config.m && cache.un == n &&
                               cache.uh == config.hurst && cache.uq == config.quad;
        if (same_grid && cache.scaled && cache.slambda == lambda) return cache.scaled;
        if (same_grid) unscaled = cache.unscaled;
        // release stale tables before building replacements
        cache.scaled.reset();
        if (!same_grid) cache.unscaled.reset();
    }

    const std::string path =
        config.cache_dir.empty()
            ? std::string()
            : config.cache_dir + "/" +
                  cache_file_name(config.m, n, config.hurst, lambda, config.quad);
    if (!path.empty()) {
        try {
            auto table = std::make_shared<CoefficientTable>(
                cache_read(path, config.m, n, config.hurst, lambda, config.quad));
            std::lock_guard<std::mutex> lock(cache.mutex);
            cache.um = config.m;
            cache.un = n;
            cache.uh = config.hurst;
            cache.uq = config.quad;
            cache.slambda = lambda;
            cache.scaled = table;
            return table;
        } catch (const FormatError&) {
            // missing or stale cache file; rebuild below
        }
    }

    if (!unscaled) unscaled = build_unscaled(config.m, n, config.hurst, config.quad);
    auto table = std::make_shared<CoefficientTable>(scale_table(*unscaled, lambda));
    if (!path.empty()) cache_write(*table, path);
    {
        std::lock_guard<std::mutex> lock(cache.mutex);
        cache.um = config.m;
        cache.un = n;
        cache.uh = config.hurst;
        cache.uq = config.quad;
        cache.unscaled = unscaled;
        cache.slambda = lambda;
        cache.scaled = table;
    }
    return table;
}

namespace {

struct RepOut {
    double ls = 0.0;
    double ml = 0.0;
};

// One replication: simulate and estimate in a single streaming pass over
// the table rows. Term order matches simulate_ou/compute_TS/estimate_path
// exactly, so the fused route is bit-identical to the composed one.
RepOut run_one(const CoefficientTable& t, double theta, const NoiseSpec& spec,
               uint64_t seed, std::vector<double>& u, std::vector<double>& v) {
    const NoisePath noise = sample_eta(spec, seed);
    const int n = t.n;
    const double rate = theta / t.m;
    const double kappa = noise.spec.kappa;
    const double* eta = noise.values.data();
    u.assign(static_cast<size_t>(n), 0.0);
    v.assign(static_cast<size_t>(n), 0.0);

    double prefix = 0.0;  // X_1 + ... + X_{k-1}
    double y = 0.0;       // y_k
    double y_prev = 0.0;  // y_{k-1}
    double x_prev = 0.0;  // X_{k-1}
    double num_ls = 0.0;
    double num_ml = 0.0;
    double a_star = 0.0;

    for (int k = 1; k <= n; ++k) {
        const double* row = t.row(k);
        double walk = 0.0;
        double du = 0.0;
        double dv = 0.0;
        for (int i = 0; i < k - 1; ++i) {
            walk += row[i] * eta[i];
            du += row[i] * u[static_cast<size_t>(i)];
            dv += row[i] * v[static_cast<size_t>(i)];
        }
        const double dk = row[k - 1];
        walk += dk * eta[k - 1];
        const double xk = walk + rate * prefix;
        if (k >= 2) {
            const double fj = dk;           // F~_{k-1}
            const double tj = du - x_prev;  // T_{k-1}
            const double sj = dv - y_prev;  // S_{k-2}
            const double dx = xk - x_prev;
            const double centered = x_prev - sj;
            num_ls += (dx - tj) * centered / (fj * fj);
            num_ml += centered / fj;
            a_star += centered * centered / (fj * fj);
        }
        u[static_cast<size_t>(k - 1)] = (xk - du) / dk;
        v[static_cast<size_t>(k - 1)] = (y - dv) / dk;
        y_prev = y;
        y += xk;
        prefix += xk;
        x_prev = xk;
    }

    if (a_star < 1e-12 * n)
        throw DegeneratePathError("path carries no signal: a_star below guard");
    RepOut out;
    out.ls = t.m * num_ls / a_star;
    out.ml = out.ls + t.m * (kappa - 1.0) * num_ml / a_star;
    return out;
}

EstimatorStats stats_of(const std::vector<double>& xs, double theta) {
    EstimatorStats st;
    const double R = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    st.mean = sum / R;
    double ss = 0.0;
    double se = 0.0;
    for (double x : xs) {
        ss += (x - st.mean) * (x - st.mean);
        se += (x - theta) * (x - theta);
    }
    st.variance = xs.size() > 1 ? ss / (R - 1.0) : 0.0;
    st.bias = st.mean - theta;
    st.mse = se / R;
    return st;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

}  // namespace

McSummary run_cell(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");

    const auto table = acquire_table(config);
    const int n = table->n;

    McSummary s;
    s.config = config;
    s.n = n;
    s.lambda_used = table->lambda;
    s.kappa = kappa_of(n, table->lambda);
    s.c1 = normalization(config.m, config.alpha, config.hurst);
    s.single_rep_warning = config.reps == 1;
    s.raw_ls.resize(static_cast<size_t>(config.reps));
    s.raw_ml.resize(static_cast<size_t>(config.reps));

    const NoiseSpec spec = make_noise_spec(n, table->lambda);
    parallel_for(config.threads, config.reps, [&](int r) {
        thread_local std::vector<double> u, v;
        const RepOut out = run_one(*table, config.theta, spec,
                                   stream_seed(config.master_seed,
                                               static_cast<uint64_t>(r)),
                                   u, v);
        s.raw_ls[static_cast<size_t>(r)] = out.ls;
        s.raw_ml[static_cast<size_t>(r)] = out.ml;
    });

    s.norm_ls.resize(s.raw_ls.size());
    s.norm_ml.resize(s.raw_ml.size());
    for (size_t i = 0; i < s.raw_ls.size(); ++i) {
        s.norm_ls[i] = s.c1 * (s.raw_ls[i] - config.theta);
        s.norm_ml[i] = s.c1 * (s.raw_ml[i] - config.theta);
    }
    s.ls = stats_of(s.raw_ls, config.theta);
    s.ml = stats_of(s.raw_ml, config.theta);
    s.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

std::vector<McSummary> run_grid(const std::vector<ExperimentConfig>& grid) {
    std::vector<McSummary> out;
    out.reserve(grid.size());
    for (const ExperimentConfig& cfg : grid) {
        try {
            out.push_back(run_cell(cfg));
        } catch (const std::exception& e) {
            McSummary s;
            s.config = cfg;
            s.status = e.what();
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.ls = {nan, nan, nan, nan};
            s.ml = {nan, nan, nan, nan};
            try {
                s.n = sample_count(cfg.m, cfg.alpha);
                s.lambda_used = effective_lambda(cfg, s.n);
                s.kappa = kappa_of(s.n, s.lambda_used);
            } catch (const std::exception&) {
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

void emit_summary_row(std::string& out, const McSummary& s, const char* estimator,
                      const EstimatorStats& st) {
    out += format_double(s.config.theta);
    out += ',';
    out += format_double(s.config.hurst);
    out += ',';
    out += std::to_string(s.config.m);
    out += ',';
    out += format_double(s.config.alpha);
    out += ',';
    out += format_double(s.lambda_used);
    out += ',';
    out += std::to_string(s.config.reps);
    out += ',';
    out += estimator;
    out += ',';
    out += format_double(st.mean);
    out += ',';
    out += format_double(st.variance);
    out += ',';
    out += format_double(st.bias);
    out += ',';
    out += format_double(st.mse);
    out += ',';
    out += sanitize(s.status);
    out += '\n';
}

}  // namespace

std::string emit_table(const std::vector<McSummary>& cells) {
    std::string out =
        "theta,H,m,alpha,lambda,reps,estimator,mean,variance,bias,mse,status\n";
    std::vector<size_t> order(cells.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (cells[a].config.hurst != cells[b].config.hurst)
            return cells[a].config.hurst < cells[b].config.hurst;
        return cells[a].config.theta < cells[b].config.theta;
    });
    for (size_t idx : order) {
        emit_summary_row(out, cells[idx], "ls", cells[idx].ls);
        emit_summary_row(out, cells[idx], "ml", cells[idx].ml);
    }
    return out;
}

std::string emit_histograms(const McSummary& cell) {
    std::string out = "estimator,theta_hat,normalized\n";
    for (size_t i = 0; i < cell.raw_ls.size(); ++i) {
        out += "ls,";
        out += format_double(cell.raw_ls[i]);
        out += ',';
        out += format_double(cell.norm_ls[i]);
        out += '\n';
    }
    for (size_t i = 0; i < cell.raw_ml.size(); ++i) {
        out += "ml,";
        out += format_double(cell.raw_ml[i]);
        out += ',';
        out += format_double(cell.norm_ml[i]);
        out += '\n';
    }
    return out;
}

std::string emit_rates(const std::vector<int>& m_grid, const ExperimentConfig& base) {
    std::string out = "m,n,alpha,lambda,reps,var_ls,var_ml,bound\n";
    for (int m : m_grid) {
        ExperimentConfig cfg = base;
        cfg.m = m;
        const McSummary cell = run_cell(cfg);
        const double bound = std::pow(static_cast<double>(m), 3.0 - cfg.alpha) *
                             cell.kappa * (1.0 - cell.kappa);
        out += std::to_string(m);
        out += ',';
        out += std::to_string(cell.n);
        out += ',';
        out += format_double(cfg.alpha);
        out += ',';
        out += format_double(cell.lambda_used);
        out += ',';
        out += std::to_string(cfg.reps);
        out += ',';
        out += format_double(cell.ls.variance);
        out += ',';
        out += format_double(cell.ml.variance);
        out += ',';
        out += format_double(bound);
        out += '\n';
    }
    return out;
}

}  // namespace fpou
