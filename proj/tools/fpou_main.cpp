// fpou: simulation and drift estimation for an Ornstein-Uhlenbeck model
// driven by a fractional Poisson random walk. Subcommands wrap the library
// operations; every run writes a manifest next to its primary output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpou/errors.hpp"
#include "fpou/estimators.hpp"
#include "fpou/model.hpp"
#include "fpou/montecarlo.hpp"
#include "fpou/noise.hpp"
#include "fpou/verify.hpp"

namespace {

using nlohmann::json;

struct Options {
    fpou::ExperimentConfig cfg;
    std::string fbm_mode;  // empty, "symmetric", or "literal"
    bool lambda_given = false;
    std::string out;
    std::string format = "csv";
    std::string input;
    std::string suite = "all";
    std::string command;
};

std::string iso_utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string checksum_hex(uint64_t cs) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cs));
    return buf;
}

json config_echo(const Options& o) {
    json j;
    j["command"] = o.command;
    j["m"] = o.cfg.m;
    j["alpha"] = o.cfg.alpha;
    j["hurst"] = o.cfg.hurst;
    j["theta"] = o.cfg.theta;
    if (o.cfg.lambda_mode == fpou::LambdaMode::explicit_value)
        j["lambda"] = o.cfg.lambda;
    else
        j["fbm_mode"] = o.fbm_mode;
    j["reps"] = o.cfg.reps;
    j["seed"] = o.cfg.master_seed;
    j["threads"] = o.cfg.threads;
    j["quad_inner"] = o.cfg.quad.inner;
    j["quad_outer"] = o.cfg.quad.outer;
    j["cache_dir"] = o.cfg.cache_dir;
    j["format"] = o.format;
    j["out"] = o.out;
    if (!o.input.empty()) j["input"] = o.input;
    if (o.command == "verify") j["suite"] = o.suite;
    return j;
}

struct Manifest {
    json config;
    uint64_t master_seed = 0;
    std::string cache_checksum;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    std::string status = "ok";
};

void write_manifest(const Manifest& man, const std::string& path) {
    json j;
    j["config"] = man.config;
    j["master_seed"] = man.master_seed;
    j["tool_version"] = FPOU_VERSION;
    j["cache_checksum"] = man.cache_checksum;
    j["started"] = man.started;
    j["finished"] = man.finished;
    j["outputs"] = man.outputs;
    j["status"] = man.status;
    std::ofstream out(path, std::ios::binary);
    if (out) out << j.dump(2) << '\n';
    // a manifest that cannot be written must not mask the run's own status
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fpou::FormatError("cannot open output file: " + path);
    out << content;
    if (!out) throw fpou::FormatError("failed writing output file: " + path);
}

void validate(const Options& o) {
    using std::invalid_argument;
    if (o.cfg.m < 2) throw invalid_argument("m must be at least 2");
    if (!(o.cfg.hurst > 0.501 && o.cfg.hurst < 1.0))
        throw invalid_argument("hurst must lie in (0.501, 1)");
    if (o.lambda_given && !(o.cfg.lambda > 0.0))
        throw invalid_argument("lambda must be positive");
    if (o.cfg.reps < 1) throw invalid_argument("reps must be at least 1");
    if (o.cfg.alpha < 1.0) throw invalid_argument("alpha must be at least 1");
    if (o.cfg.threads < 1) throw invalid_argument("threads must be at least 1");
    if (o.cfg.quad.inner < 2 || o.cfg.quad.outer < 2)
        throw invalid_argument("quadrature orders must be at least 2");
    if (o.format != "csv" && o.format != "json")
        throw invalid_argument("format must be csv or json");
    if (o.lambda_given && !o.fbm_mode.empty())
        throw invalid_argument("--lambda and --fbm-mode are mutually exclusive");
    if (!o.fbm_mode.empty() && o.fbm_mode != "symmetric" && o.fbm_mode != "literal")
        throw invalid_argument("fbm-mode must be symmetric or literal");
}

std::string default_out(const std::string& command, const std::string& format) {
    const std::string ext = format == "json" ? ".json" : ".csv";
    if (command == "coeffs") return "coeffs.fpou";
    if (command == "simulate") return "path" + ext;
    if (command == "estimate") return "estimate.json";
    if (command == "mc") return "mc_summary" + ext;
    if (command == "tables") return "tables" + ext;
    if (command == "hist") return "histograms" + ext;
    if (command == "rates") return "rates" + ext;
    return "verify_report.json";
}

json estimate_json(const fpou::EstimateResult& est) {
    json j;
    j["theta_ls"] = est.theta_ls;
    j["theta_ml"] = est.theta_ml;
    j["a_star"] = est.a_star;
    j["bracket"] = est.bracket;
    j["kappa"] = est.kappa;
    j["n"] = est.n;
    j["m"] = est.m;
    j["alpha"] = est.alpha;
    return j;
}

json stats_json(const fpou::EstimatorStats& s) {
    return json{{"mean", s.mean},
                {"variance", s.variance},
                {"bias", s.bias},
                {"mse", s.mse}};
}

json summary_json(const fpou::McSummary& cell) {
    json j;
    j["m"] = cell.config.m;
    j["alpha"] = cell.config.alpha;
    j["hurst"] = cell.config.hurst;
    j["theta"] = cell.config.theta;
    j["n"] = cell.n;
    j["lambda"] = cell.lambda_used;
    j["kappa"] = cell.kappa;
    j["reps"] = cell.config.reps;
    j["ls"] = stats_json(cell.ls);
    j["ml"] = stats_json(cell.ml);
    j["status"] = cell.status;
    if (cell.single_rep_warning) j["warning"] = "variance undefined at reps=1";
    return j;
}

// Path files: header index,t,x[,eta]; t = index/m; row 0 is the zero start.
std::string path_csv(const fpou::ObservationPath& x, const fpou::NoisePath& noise) {
    std::string out = "index,t,x,eta\n";
    for (int j = 0; j <= x.n; ++j) {
        out += std::to_string(j);
        out += ',';
        out += fpou::format_double(static_cast<double>(j) / x.m);
        out += ',';
        out += fpou::format_double(x.x(j));
        out += ',';
        if (j >= 1) out += fpou::format_double(noise.values[j - 1]);
        out += '\n';
    }
    return out;
}

std::vector<double> read_path_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fpou::FormatError("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw fpou::CorruptedInputError("input file is empty: " + path);
    if (line.rfind("index,t,x", 0) != 0)
        throw fpou::CorruptedInputError("expected header index,t,x[,eta] in " + path);
    std::vector<double> values;
    long expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        if (!std::getline(row, field, ','))
            throw fpou::CorruptedInputError("short row in " + path);
        if (std::stol(field) != expected)
            throw fpou::CorruptedInputError("non-contiguous index column in " + path);
        ++expected;
        std::getline(row, field, ',');  // t column, recomputed from m
        if (!std::getline(row, field, ','))
            throw fpou::CorruptedInputError("missing x column in " + path);
        values.push_back(std::stod(field));
    }
    return values;
}

fpou::CoefficientTable table_for_length(const Options& o, int n) {
    fpou::ExperimentConfig cfg = o.cfg;
    const double lambda = fpou::effective_lambda(cfg, n);
    auto unscaled = fpou::build_unscaled(cfg.m, n, cfg.hurst, cfg.quad);
    return fpou::scale_table(*unscaled, lambda);
}

int cmd_coeffs(Options& o, Manifest& man) {
    if (o.cfg.cache_dir.empty()) o.cfg.cache_dir = ".";
    auto table = fpou::acquire_table(o.cfg);
    const uint64_t cs = fpou::table_checksum(*table);
    man.cache_checksum = checksum_hex(cs);
    const std::string file =
        o.cfg.cache_dir + "/" +
        fpou::cache_file_name(table->m, table->n, table->hurst, table->lambda,
                              table->quad);
    man.outputs.push_back(file);
    std::cout << "cache " << file << "\nchecksum " << checksum_hex(cs) << "\n";
    return 0;
}

int cmd_simulate(Options& o, Manifest& man) {
    auto table = fpou::acquire_table(o.cfg);
    man.cache_checksum = checksum_hex(fpou::table_checksum(*table));
    const fpou::NoiseSpec spec = fpou::make_noise_spec(table->n, table->lambda);
    const fpou::NoisePath noise =
        fpou::sample_eta(spec, fpou::stream_seed(o.cfg.master_seed, 0));
    const fpou::ObservationPath x = fpou::simulate_ou(*table, o.cfg.theta, noise);

    if (o.format == "json") {
        json j;
        j["m"] = x.m;
        j["n"] = x.n;
        j["theta"] = o.cfg.theta;
        j["lambda"] = table->lambda;
        j["x"] = x.values;
        j["eta"] = noise.values;
        write_text(o.out, j.dump(2) + "\n");
    } else {
        write_text(o.out, path_csv(x, noise));
    }
    man.outputs.push_back(o.out);
    std::cout << "wrote " << o.out << " (n=" << x.n << ")\n";
    return 0;
}

int cmd_estimate(Options& o, Manifest& man) {
    if (o.input.empty())
        throw std::invalid_argument("estimate requires --input with a path CSV");
    const std::vector<double> values = read_path_csv(o.input);
    if (values.size() < 3)
        throw fpou::CorruptedInputError("input path needs at least 3 samples");
    bool shifted = false;
    const fpou::ObservationPath x = fpou::ingest_path(values, o.cfg.m, &shifted);
    const fpou::CoefficientTable table = table_for_length(o, x.n);
    man.cache_checksum = checksum_hex(fpou::table_checksum(table));
    const fpou::EstimateResult est = fpou::estimate_path(x, table);

    json j = estimate_json(est);
    if (shifted) j["input_shifted_to_zero"] = true;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!o.out.empty()) {
        write_text(o.out, text);
        man.outputs.push_back(o.out);
    }
    return 0;
}

int cmd_mc(Options& o, Manifest& man) {
    // acquire first so the checksum can be recorded; run_cell reuses the
    // in-process slot without rebuilding
    man.cache_checksum = checksum_hex(fpou::table_checksum(*fpou::acquire_table(o.cfg)));
    const fpou::McSummary cell = fpou::run_cell(o.cfg);
    if (o.format == "json")
        write_text(o.out, summary_json(cell).dump(2) + "\n");
    else
        write_text(o.out, fpou::emit_table({cell}));
    man.outputs.push_back(o.out);
    std::cout << "ls mean=" << fpou::format_double(cell.ls.mean)
              << " var=" << fpou::format_double(cell.ls.variance)
              << "  ml mean=" << fpou::format_double(cell.ml.mean)
              << " var=" << fpou::format_double(cell.ml.variance) << "\n";
    return cell.status == "ok" ? 0 : 2;
}

int cmd_tables(Options& o, Manifest& man) {
    std::vector<fpou::ExperimentConfig> grid;
    for (double hurst : {0.55, 0.75, 0.90})
        for (double theta : {0.1, 0.5, 0.9}) {
            fpou::ExperimentConfig c = o.cfg;
            c.hurst = hurst;
            c.theta = theta;
            grid.push_back(c);
        }
    const std::vector<fpou::McSummary> cells = fpou::run_grid(grid);
    if (o.format == "json") {
        json j = json::array();
        for (const auto& cell : cells) j.push_back(summary_json(cell));
        write_text(o.out, j.dump(2) + "\n");
    } else {
        write_text(o.out, fpou::emit_table(cells));
    }
    man.outputs.push_back(o.out);
    std::cout << "wrote " << o.out << " (" << cells.size() << " cells)\n";
    for (const auto& cell : cells)
        if (cell.status != "ok") return 2;
    return 0;
}

int cmd_hist(Options& o, Manifest& man) {
    const fpou::McSummary cell = fpou::run_cell(o.cfg);
    if (o.format == "json") {
        json j = summary_json(cell);
        j["norm_ls"] = cell.norm_ls;
        j["norm_ml"] = cell.norm_ml;
        j["c1"] = cell.c1;
        write_text(o.out, j.dump(2) + "\n");
    } else {
        write_text(o.out, fpou::emit_histograms(cell));
    }
    man.outputs.push_back(o.out);
    std::cout << "wrote " << o.out << " (" << cell.norm_ls.size() << " samples per estimator)\n";
    return cell.status == "ok" ? 0 : 2;
}

int cmd_rates(Options& o, Manifest& man) {
    const std::vector<int> m_grid = {o.cfg.m, 2 * o.cfg.m, 4 * o.cfg.m, 8 * o.cfg.m};
    write_text(o.out, fpou::emit_rates(m_grid, o.cfg));
    man.outputs.push_back(o.out);
    std::cout << "wrote " << o.out << "\n";
    return 0;
}

int cmd_verify(Options& o, Manifest& man) {
    std::vector<fpou::VerifyReport> reports;
    const bool all = o.suite == "all";
    if (all || o.suite == "identity")
        reports.push_back(fpou::run_identity_suite(o.cfg));
    if (all || o.suite == "bounds") {
        std::vector<fpou::ExperimentConfig> grid;
        for (double hurst : {0.55, 0.75, 0.90}) {
            fpou::ExperimentConfig c = o.cfg;
            c.hurst = hurst;
            grid.push_back(c);
        }
        reports.push_back(fpou::run_bound_suite(grid));
    }
    if (all || o.suite == "distribution")
        reports.push_back(fpou::run_distribution_suite(o.cfg));
    if (all || o.suite == "martingale")
        reports.push_back(fpou::run_martingale_suite(o.cfg));
    if (reports.empty())
        throw std::invalid_argument(
            "suite must be one of: all identity bounds distribution martingale");

    write_text(o.out, fpou::report_json(reports) + "\n");
    man.outputs.push_back(o.out);
    for (const auto& rep : reports)
        std::cout << "suite " << rep.suite << ": "
                  << (rep.passed ? "pass" : "FAIL") << " (" << rep.checks.size()
                  << " checks)\n";
    if (!fpou::all_passed(reports)) {
        man.status = "verify failed";
        return 3;
    }
    return 0;
}

void apply_config_file(Options& o, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fpou::FormatError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw fpou::CorruptedInputError(std::string("bad config JSON: ") + e.what());
    }
    if (j.contains("m")) o.cfg.m = j["m"].get<int>();
    if (j.contains("alpha")) o.cfg.alpha = j["alpha"].get<double>();
    if (j.contains("hurst")) o.cfg.hurst = j["hurst"].get<double>();
    if (j.contains("theta")) o.cfg.theta = j["theta"].get<double>();
    if (j.contains("lambda")) {
        o.cfg.lambda = j["lambda"].get<double>();
        o.lambda_given = true;
    }
    if (j.contains("fbm_mode")) o.fbm_mode = j["fbm_mode"].get<std::string>();
    if (j.contains("reps")) o.cfg.reps = j["reps"].get<int>();
    if (j.contains("seed")) o.cfg.master_seed = j["seed"].get<uint64_t>();
    if (j.contains("threads")) o.cfg.threads = j["threads"].get<int>();
    if (j.contains("quad_inner")) o.cfg.quad.inner = j["quad_inner"].get<int>();
    if (j.contains("quad_outer")) o.cfg.quad.outer = j["quad_outer"].get<int>();
    if (j.contains("cache_dir")) o.cfg.cache_dir = j["cache_dir"].get<std::string>();
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    if (j.contains("format")) o.format = j["format"].get<std::string>();
    if (j.contains("input")) o.input = j["input"].get<std::string>();
    if (j.contains("suite")) o.suite = j["suite"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    std::string config_path;
    double lambda_flag = 1.0;

    CLI::App app{"fractional-Poisson Ornstein-Uhlenbeck simulation and estimation"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--config", config_path, "JSON config file; flags override it");
    app.add_option("--m", o.cfg.m, "grid refinement (points per unit time)");
    app.add_option("--alpha", o.cfg.alpha, "sample-size exponent, n = round(m^alpha)");
    app.add_option("--hurst", o.cfg.hurst, "memory parameter in (0.501, 1)");
    app.add_option("--theta", o.cfg.theta, "drift parameter");
    auto* lam = app.add_option("--lambda", lambda_flag, "jump intensity (> 0)");
    app.add_option("--fbm-mode", o.fbm_mode,
                   "symmetric: lambda = n ln 2; literal: lambda = m ln 2");
    app.add_option("--reps", o.cfg.reps, "Monte Carlo replications");
    app.add_option("--seed", o.cfg.master_seed, "master seed");
    app.add_option("--out", o.out, "output file");
    app.add_option("--format", o.format, "csv or json");
    app.add_option("--threads", o.cfg.threads, "worker threads for replications");
    app.add_option("--quad-inner", o.cfg.quad.inner, "inner quadrature order");
    app.add_option("--quad-outer", o.cfg.quad.outer, "outer quadrature order");
    app.add_option("--cache-dir", o.cfg.cache_dir,
                   "coefficient cache directory (default: FPOU_CACHE_DIR)");
    app.add_option("--input", o.input, "input path CSV (estimate)");
    app.add_option("--suite", o.suite,
                   "verify suite: all identity bounds distribution martingale");

    app.add_subcommand("coeffs", "build the coefficient table and cache it");
    app.add_subcommand("simulate", "simulate one observation path");
    app.add_subcommand("estimate", "estimate drift from a path CSV");
    app.add_subcommand("mc", "Monte Carlo study of one parameter cell");
    app.add_subcommand("tables", "3x3 theta/hurst grid summary at one m");
    app.add_subcommand("hist", "normalized estimation-error samples");
    app.add_subcommand("rates", "variance decay across a doubling m grid");
    app.add_subcommand("verify", "run executable invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!config_path.empty()) {
            Options from_file;
            from_file.cfg.cache_dir = o.cfg.cache_dir;
            apply_config_file(from_file, config_path);
            // flags override the file: re-apply any flag the user passed
            from_file.cfg.m = app.count("--m") ? o.cfg.m : from_file.cfg.m;
            from_file.cfg.alpha = app.count("--alpha") ? o.cfg.alpha : from_file.cfg.alpha;
            from_file.cfg.hurst = app.count("--hurst") ? o.cfg.hurst : from_file.cfg.hurst;
            from_file.cfg.theta = app.count("--theta") ? o.cfg.theta : from_file.cfg.theta;
            if (app.count("--lambda")) {
                from_file.cfg.lambda = lambda_flag;
                from_file.lambda_given = true;
                from_file.fbm_mode.clear();
            }
            if (app.count("--fbm-mode")) from_file.fbm_mode = o.fbm_mode;
            from_file.cfg.reps = app.count("--reps") ? o.cfg.reps : from_file.cfg.reps;
            from_file.cfg.master_seed =
                app.count("--seed") ? o.cfg.master_seed : from_file.cfg.master_seed;
            from_file.cfg.threads =
                app.count("--threads") ? o.cfg.threads : from_file.cfg.threads;
            from_file.cfg.quad.inner =
                app.count("--quad-inner") ? o.cfg.quad.inner : from_file.cfg.quad.inner;
            from_file.cfg.quad.outer =
                app.count("--quad-outer") ? o.cfg.quad.outer : from_file.cfg.quad.outer;
            if (app.count("--cache-dir")) from_file.cfg.cache_dir = o.cfg.cache_dir;
            if (app.count("--out")) from_file.out = o.out;
            if (app.count("--format")) from_file.format = o.format;
            if (app.count("--input")) from_file.input = o.input;
            if (app.count("--suite")) from_file.suite = o.suite;
            o = from_file;
        } else if (app.count("--lambda")) {
            o.cfg.lambda = lambda_flag;
            o.lambda_given = true;
        }

        if (o.cfg.cache_dir.empty())
            if (const char* env = std::getenv("FPOU_CACHE_DIR")) o.cfg.cache_dir = env;

        o.command = app.get_subcommands().front()->get_name();
        if (o.fbm_mode == "symmetric") o.cfg.lambda_mode = fpou::LambdaMode::fbm_symmetric;
        if (o.fbm_mode == "literal") o.cfg.lambda_mode = fpou::LambdaMode::fbm_literal;

        validate(o);
        if (o.out.empty() && o.command != "estimate")
            o.out = default_out(o.command, o.format);

        Manifest man;
        man.config = config_echo(o);
        man.master_seed = o.cfg.master_seed;
        man.started = iso_utc_now();
        const std::string manifest_path =
            (o.out.empty() ? o.command : o.out) + ".manifest.json";

        int code = 0;
        try {
            if (o.command == "coeffs") code = cmd_coeffs(o, man);
            else if (o.command == "simulate") code = cmd_simulate(o, man);
            else if (o.command == "estimate") code = cmd_estimate(o, man);
            else if (o.command == "mc") code = cmd_mc(o, man);
            else if (o.command == "tables") code = cmd_tables(o, man);
            else if (o.command == "hist") code = cmd_hist(o, man);
            else if (o.command == "rates") code = cmd_rates(o, man);
            else if (o.command == "verify") code = cmd_verify(o, man);
        } catch (...) {
            man.finished = iso_utc_now();
            try {
                throw;
            } catch (const fpou::ResourceLimitError& e) {
                man.status = e.what();
                write_manifest(man, manifest_path);
                std::cerr << "resource limit: " << e.what()
                          << "\nadvisory: reduce --m or --alpha, or raise the table cap\n";
                return 2;
            } catch (const fpou::DegeneratePathError& e) {
                man.status = e.what();
                write_manifest(man, manifest_path);
                std::cerr << "degenerate path: " << e.what() << "\n";
                return 1;
            } catch (const fpou::CorruptedInputError& e) {
                man.status = e.what();
                write_manifest(man, manifest_path);
                std::cerr << "bad input: " << e.what() << "\n";
                return 1;
            } catch (const fpou::FormatError& e) {
                man.status = e.what();
                write_manifest(man, manifest_path);
                std::cerr << "i/o error: " << e.what() << "\n";
                return 2;
            } catch (const fpou::NumericFailure& e) {
                man.status = e.what();
                write_manifest(man, manifest_path);
                std::cerr << "numeric failure: " << e.what() << "\n";
                return 2;
            } catch (const std::invalid_argument& e) {
                man.status = e.what();
                write_manifest(man, manifest_path);
                std::cerr << "validation: " << e.what() << "\n";
                return 1;
            }
        }
        man.finished = iso_utc_now();
        write_manifest(man, manifest_path);
        return code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation: " << e.what() << "\n";
        return 1;
    } catch (const fpou::FormatError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
