#include <cmath>
#include <vector>

#include "doctest.h"
#include "fpou/errors.hpp"
#include "fpou/noise.hpp"

using namespace fpou;

TEST_SUITE_BEGIN("noise");

TEST_CASE("kappa is e^{-lambda/n}") {
    CHECK(std::fabs(kappa_of(100, 1.0) - 0.99004983374916805357) < 1e-16);
    CHECK(kappa_of(10, 10.0 * std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    const NoiseSpec s = make_noise_spec(100, 1.0);
    CHECK(s.n == 100);
    CHECK(s.lambda == 1.0);
    CHECK(s.kappa == kappa_of(100, 1.0));
    CHECK_THROWS_AS(make_noise_spec(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_noise_spec(10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_noise_spec(10, -1.0), std::invalid_argument);
}

TEST_CASE("draws live on the two-point lattice and are seed reproducible") {
    const NoiseSpec s = make_noise_spec(500, 2.0);
    const NoisePath a = sample_eta(s, 42);
    const NoisePath b = sample_eta(s, 42);
    const NoisePath c = sample_eta(s, 43);
    REQUIRE(a.values.size() == 500);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.stream_seed == 42);
    const double lo = s.kappa - 1.0, hi = s.kappa;
    for (double e : a.values) CHECK((e == lo || e == hi));
}

TEST_CASE("sample moments sit inside their four sigma bands") {
    // aggregate over reps * n draws; eta has mean 0, variance kappa(1-kappa)
    const NoiseSpec s = make_noise_spec(1000, 1.0);
    const int reps = 200;
    const double kq = s.kappa * (1.0 - s.kappa);
    double sum = 0.0, sumsq = 0.0, cross = 0.0;
    long long cnt = 0, cross_cnt = 0;
    for (int r = 0; r < reps; ++r) {
        const NoisePath p = sample_eta(s, 1000 + r);
        for (size_t i = 0; i < p.values.size(); ++i) {
            sum += p.values[i];
            sumsq += p.values[i] * p.values[i];
            ++cnt;
            if (i + 1 < p.values.size()) {
                cross += p.values[i] * p.values[i + 1];
                ++cross_cnt;
            }
        }
    }
    const double mean = sum / cnt;
    CHECK(std::fabs(mean) <= 4.0 * std::sqrt(kq / cnt));
    const double var = sumsq / cnt - mean * mean;
    // relative se of the second moment of a two-point law is sqrt((1-4kq)/ (kq cnt))-ish;
    // a plain 4/sqrt(cnt) band on the ratio is far wider than needed only for
    // kappa near 1/2, so keep the exact fourth-moment form
    const double m4 = kq * (std::pow(1.0 - s.kappa, 3) + std::pow(s.kappa, 3));
    const double se_var = std::sqrt((m4 - kq * kq) / cnt);
    CHECK(std::fabs(var - kq) <= 4.0 * se_var);
    // consecutive draws are independent: correlation within 4/sqrt(count)
    const double corr = (cross / cross_cnt) / kq;
    CHECK(std::fabs(corr) <= 4.0 / std::sqrt(static_cast<double>(cross_cnt)));
}

TEST_CASE("next draw is mean free given bounded transforms of the past") {
    const NoiseSpec s = make_noise_spec(50, 1.5);
    const int reps = 4000;
    const double kq = s.kappa * (1.0 - s.kappa);
    double dot_sign = 0.0, dot_clip = 0.0;
    for (int r = 0; r < reps; ++r) {
        const NoisePath p = sample_eta(s, 77000 + r);
        double past = 0.0;
        for (int i = 0; i < 49; ++i) past += p.values[static_cast<size_t>(i)];
        const double nxt = p.values[49];
        dot_sign += (past < 0.0 ? -1.0 : 1.0) * nxt;
        dot_clip += std::tanh(past) * nxt;
    }
    const double se = std::sqrt(kq / reps);  // |transform| <= 1
    CHECK(std::fabs(dot_sign / reps) <= 4.0 * se);
    CHECK(std::fabs(dot_clip / reps) <= 4.0 * se);
}

TEST_CASE("bernoulli view is the shifted lattice and rejects off-lattice data") {
    const NoiseSpec s = make_noise_spec(200, 1.0);
    NoisePath p = sample_eta(s, 5);
    const std::vector<int> b = to_bernoulli(p);
    REQUIRE(b.size() == p.values.size());
    for (size_t i = 0; i < b.size(); ++i) {
        CHECK((b[i] == 0 || b[i] == 1));
        // kappa in (0.5, 1): kappa - 1 is exact, so the shift is bitwise
        CHECK(p.values[i] == (s.kappa - 1.0) + b[i]);
    }
    p.values[17] += 1e-9;
    CHECK_THROWS_AS(to_bernoulli(p), CorruptedInputError);
}

TEST_CASE("binomial to Poisson distance matches the frozen oracle values") {
    // direct summation cross-checked against an independent script
    const struct {
        long long n;
        double want;
    } cases[] = {{10, 0.019022744520125581},
                 {100, 0.001845543888894572},
                 {1000, 0.00018400104915729262},
                 {10000, 1.8394585206302685e-5}};
    for (const auto& c : cases) {
        const double got = binomial_poisson_tv(c.n, 1.0);
        CHECK_MESSAGE(std::fabs(got - c.want) < 1e-12, "n=", c.n);
    }
    CHECK(binomial_poisson_tv(10000, 1.0) < 1e-3);
}

TEST_CASE("distance decreases along n for every study intensity") {
    for (double lambda : {0.5, 1.0, 5.0}) {
        double prev = 2.0;
        for (long long n : {10LL, 100LL, 1000LL, 10000LL}) {
            const double tv = binomial_poisson_tv(n, lambda);
            CHECK_MESSAGE(tv < prev, "lambda=", lambda, " n=", n);
            CHECK(tv > 0.0);
            prev = tv;
        }
    }
    // degenerate-intensity limit: both laws pile onto zero
    CHECK(binomial_poisson_tv(10, 1e-12) < 1e-11);
}

TEST_SUITE_END();
