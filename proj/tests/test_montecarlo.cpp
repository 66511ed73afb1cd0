#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fpou/montecarlo.hpp"
#include "fpou/noise.hpp"

using namespace fpou;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.m = 10;
    c.alpha = 1.5;  // n = 32, cheap
    c.hurst = 0.75;
    c.theta = 0.5;
    c.lambda = 1.0;
    c.reps = 25;
    c.master_seed = 99;
    return c;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("stream seeds are deterministic and collision free at study scale") {
    std::set<uint64_t> seen;
    for (uint64_t r = 0; r < 20000; ++r) seen.insert(stream_seed(12345, r));
    CHECK(seen.size() == 20000);
    CHECK(stream_seed(1, 7) == stream_seed(1, 7));
    CHECK(stream_seed(1, 7) != stream_seed(2, 7));
}

TEST_CASE("intensity modes resolve as documented") {
    ExperimentConfig c = small_config();
    c.lambda = 2.5;
    CHECK(effective_lambda(c, 32) == 2.5);
    c.lambda_mode = LambdaMode::fbm_symmetric;
    CHECK(effective_lambda(c, 32) == 32 * std::log(2.0));
    // symmetric reading makes the noise a fair coin
    CHECK(kappa_of(32, effective_lambda(c, 32)) == doctest::Approx(0.5).epsilon(1e-15));
    c.lambda_mode = LambdaMode::fbm_literal;
    CHECK(effective_lambda(c, 32) == 10 * std::log(2.0));
}

TEST_CASE("cells are reproducible and thread count never changes bytes") {
    ExperimentConfig c = small_config();
    const McSummary a = run_cell(c);
    const McSummary b = run_cell(c);
    CHECK(a.raw_ls == b.raw_ls);
    CHECK(a.raw_ml == b.raw_ml);

    ExperimentConfig threaded = c;
    threaded.threads = 3;
    const McSummary t = run_cell(threaded);
    CHECK(t.raw_ls == a.raw_ls);
    CHECK(t.raw_ml == a.raw_ml);

    ExperimentConfig reseeded = c;
    reseeded.master_seed = 100;
    const McSummary r = run_cell(reseeded);
    CHECK(r.raw_ls != a.raw_ls);
}

TEST_CASE("summary statistics satisfy their algebra") {
    const McSummary s = run_cell(small_config());
    CHECK(s.n == 32);
    CHECK(s.lambda_used == 1.0);
    CHECK(s.kappa == doctest::Approx(std::exp(-1.0 / 32)).epsilon(1e-15));
    const double r = static_cast<double>(s.config.reps);
    for (const EstimatorStats* st : {&s.ls, &s.ml}) {
        const double want = st->variance * (r - 1.0) / r + st->bias * st->bias;
        CHECK(std::fabs(st->mse - want) <= 1e-12 * std::max(1.0, want));
    }
    // normalized errors are c1 (theta_hat - theta)
    for (size_t i = 0; i < s.raw_ls.size(); ++i)
        CHECK(s.norm_ls[i] == s.c1 * (s.raw_ls[i] - s.config.theta));
}

TEST_CASE("symmetric mode equals the explicit intensity it abbreviates") {
    ExperimentConfig sym = small_config();
    sym.lambda_mode = LambdaMode::fbm_symmetric;
    ExperimentConfig exp = small_config();
    exp.lambda = 32 * std::log(2.0);
    const McSummary a = run_cell(sym);
    const McSummary b = run_cell(exp);
    CHECK(a.raw_ls == b.raw_ls);
    CHECK(a.raw_ml == b.raw_ml);
    CHECK(a.lambda_used == b.lambda_used);
}

TEST_CASE("single replication is flagged and produces no variance") {
    ExperimentConfig c = small_config();
    c.reps = 1;
    const McSummary s = run_cell(c);
    CHECK(s.single_rep_warning);
    CHECK(s.ls.variance == 0.0);
    CHECK(s.raw_ls.size() == 1);
}

TEST_CASE("grid runs isolate per-cell failures") {
    ExperimentConfig good = small_config();
    ExperimentConfig bad = small_config();
    bad.hurst = 0.3;
    const std::vector<McSummary> out = run_grid({good, bad});
    REQUIRE(out.size() == 2);
    CHECK(out[0].status == "ok");
    CHECK(out[1].status != "ok");
    CHECK(std::isnan(out[1].ls.mean));
    CHECK(out[0].raw_ls.size() == 25);
}

TEST_CASE("table emitter is deterministic, sorted and shaped") {
    ExperimentConfig a = small_config();
    a.hurst = 0.9;
    a.theta = 0.1;
    ExperimentConfig b = small_config();
    b.hurst = 0.75;
    b.theta = 0.9;
    const std::vector<McSummary> cells = run_grid({a, b});
    const std::string csv = emit_table(cells);
    CHECK(csv == emit_table(cells));
    CHECK(count_lines(csv) == 1 + 2 * static_cast<int>(cells.size()));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "theta,H,m,alpha,lambda,reps,estimator,mean,variance,bias,mse,status");
    // rows ordered by (H, theta): the H=0.75 cell precedes H=0.9
    std::getline(in, line);
    CHECK(line.substr(0, 9) == "0.9,0.75,");
}

TEST_CASE("histogram emitter carries one row per replication and estimator") {
    const McSummary s = run_cell(small_config());
    const std::string csv = emit_histograms(s);
    CHECK(count_lines(csv) == 1 + 2 * s.config.reps);
    CHECK(csv.rfind("estimator,theta_hat,normalized\n", 0) == 0);
    CHECK(csv.find("\nml,") != std::string::npos);
}

TEST_CASE("rate emitter sweeps the grid parameter") {
    ExperimentConfig base = small_config();
    base.reps = 10;
    const std::string csv = emit_rates({4, 8}, base);
    CHECK(count_lines(csv) == 3);
    CHECK(csv.rfind("m,n,alpha,lambda,reps,var_ls,var_ml,bound\n", 0) == 0);
    CHECK(csv.find("\n4,8,") != std::string::npos);   // n = 4^1.5 = 8
    CHECK(csv.find("\n8,23,") != std::string::npos);  // n = round(8^1.5) = 23
}

TEST_CASE("shortest round trip formatting parses back exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789, -2.5e300, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("disk cache returns the table that was asked for") {
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("fpou_cache_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    ExperimentConfig a = small_config();
    a.cache_dir = dir.string();
    ExperimentConfig b = a;
    b.hurst = 0.8;

    const auto ta1 = acquire_table(a);
    CHECK(fs::exists(dir / cache_file_name(10, 32, a.hurst, 1.0, a.quad)));
    const auto tb = acquire_table(b);  // evicts the in-process slot
    CHECK(fs::exists(dir / cache_file_name(10, 32, b.hurst, 1.0, b.quad)));
    const auto ta2 = acquire_table(a);  // must come back from disk, not the slot
    CHECK(ta2->hurst == a.hurst);
    CHECK(table_checksum(*ta2) == table_checksum(*ta1));
    CHECK(ta2->entries == ta1->entries);

    // disk route and fresh build are bit identical
    ExperimentConfig mem = small_config();
    const auto built = acquire_table(mem);
    CHECK(built->entries == ta2->entries);

    fs::remove_all(dir);
}

TEST_SUITE_END();
