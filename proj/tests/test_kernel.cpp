#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "fpou/errors.hpp"
#include "fpou/kernel.hpp"
#include "support/oracles.hpp"

using namespace fpou;

namespace {

double rel(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

std::string temp_path(const char* stem) {
    return std::string("fpou_test_") + stem + "_" + std::to_string(::getpid()) + ".bin";
}

}  // namespace

TEST_SUITE_BEGIN("kernel");

TEST_CASE("hurst domain is the open interval (0.501, 1)") {
    CHECK_THROWS_AS(make_kernel_params(0.501), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel_params(0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel_params(1.0), std::invalid_argument);
    CHECK_NOTHROW(make_kernel_params(0.502));
    CHECK_NOTHROW(make_kernel_params(0.999));
    const KernelParams p = make_kernel_params(0.75);
    // 1/Gamma(0.25), Gamma(0.25) = 3.6256099082219083119...
    CHECK(rel(p.gamma_factor, 1.0 / 3.6256099082219083119) < 1e-14);
}

TEST_CASE("gamma regularization agrees with an independent Lanczos evaluation") {
    for (double h : {0.505, 0.55, 0.6, 0.75, 0.9, 0.99}) {
        const KernelParams p = make_kernel_params(h);
        CHECK(rel(p.gamma_factor, 1.0 / oracle::lanczos_gamma(h - 0.5)) < 1e-11);
    }
    // frozen references: Gamma(0.05), Gamma(0.4)
    CHECK(rel(oracle::lanczos_gamma(0.05), 19.470085311255512864) < 1e-12);
    CHECK(rel(oracle::lanczos_gamma(0.4), 2.2181595437576882231) < 1e-12);
}

TEST_CASE("kernel point values match frozen references") {
    // K(1, 0.5) for the three study exponents
    const struct {
        double h, want;
    } cases[] = {{0.55, 0.99417829210835071686},
                 {0.75, 0.96705967743735027333},
                 {0.90, 0.93905145151469382876}};
    for (const auto& c : cases) {
        const KernelParams p = make_kernel_params(c.h);
        CHECK_MESSAGE(rel(kernel_eval(1.0, 0.5, p, 16), c.want) < 1e-12, "H=", c.h);
        // the independent tanh-sinh route lands on the same values
        CHECK_MESSAGE(rel(oracle::kernel(1.0, 0.5, c.h), c.want) < 1e-9, "H=", c.h);
    }
}

TEST_CASE("kernel is self-similar of order H - 1/2") {
    const KernelParams p = make_kernel_params(0.8);
    const double base = kernel_eval(1.0, 0.3, p, 24);
    for (double a : {2.0, 10.0, 0.25}) {
        const double scaled = kernel_eval(a, 0.3 * a, p, 24);
        CHECK(rel(scaled, std::pow(a, 0.3) * base) < 1e-12);
    }
}

TEST_CASE("kernel vanishes above the diagonal and rejects s <= 0") {
    const KernelParams p = make_kernel_params(0.75);
    CHECK(kernel_eval(1.0, 1.0, p, 16) == 0.0);
    CHECK(kernel_eval(1.0, 2.0, p, 16) == 0.0);
    CHECK_THROWS_AS(kernel_eval(1.0, 0.0, p, 16), std::invalid_argument);
    CHECK_THROWS_AS(kernel_eval(1.0, -0.5, p, 16), std::invalid_argument);
}

TEST_CASE("first block integral has a closed form") {
    // b_{1,1} = m^{1/2-H} Gamma(3/2-H)/(H+1/2); frozen at m=10
    const struct {
        double h, want;
    } cases[] = {{0.55, 0.87550832050706064989},
                 {0.75, 0.55128196189972456459},
                 {0.90, 0.42347008041790735139}};
    const QuadMeta quad;
    for (const auto& c : cases) {
        const KernelParams p = make_kernel_params(c.h);
        const auto table = build_unscaled(10, 4, c.h, quad);
        CHECK_MESSAGE(rel(table->entries[0], c.want) < 1e-10, "H=", c.h);
        CHECK_MESSAGE(rel(oracle::coeff_entry(1, 1, 10, c.h), c.want) < 5e-8, "H=", c.h);
        // the fixed composed rule is order-limited at this corner: the inner
        // integral behaves like (t-s)^{H-1/2} at the outer right endpoint,
        // outside the Jacobi weight's reach
        CHECK_MESSAGE(rel(coeff_entry(1, 1, 10, p, quad), c.want) < 5e-3, "H=", c.h);
    }
}

TEST_CASE("table entries match frozen high-precision references") {
    // unscaled entries at m=10: corner (2,1) exercises the split inner
    // integral, (5,3) the first block increment, (20,17) the prefix sums
    const struct {
        double h;
        int k, i;
        double want;
    } cases[] = {{0.55, 2, 1, 0.940122259012543897826},
                 {0.55, 5, 3, 0.960038878081646218422},
                 {0.55, 20, 17, 0.974999088052970613135},
                 {0.75, 2, 1, 0.805107286213839036721},
                 {0.75, 5, 3, 0.812956426737617713525},
                 {0.75, 20, 17, 0.856698351925732680761},
                 {0.90, 2, 1, 0.781588979444136104215},
                 {0.90, 5, 3, 0.712373157385973155674},
                 {0.90, 20, 17, 0.757377476283993434078}};
    for (double h : {0.55, 0.75, 0.9}) {
        auto t = build_unscaled(10, 20, h, QuadMeta{});
        const CoefficientTable tab = scale_table(*t, 1.0);
        for (const auto& c : cases) {
            if (c.h != h) continue;
            CHECK_MESSAGE(rel(tab.b(c.k, c.i), c.want) < 5e-10, "H=", h, " k=", c.k,
                          " i=", c.i);
        }
    }
}

TEST_CASE("table entries agree with the independent oracle") {
    const QuadMeta quad;
    for (double h : {0.55, 0.9}) {
        auto t = build_unscaled(10, 25, h, quad);
        const CoefficientTable tab = scale_table(*t, 1.0);
        // spot entries spanning corner, band, interior and far column
        const int picks[][2] = {{1, 1}, {2, 1}, {2, 2},  {5, 3},
                                {9, 9}, {20, 1}, {20, 17}, {25, 24}};
        for (const auto& ki : picks) {
            const double got = tab.b(ki[0], ki[1]);
            const double want = oracle::coeff_entry(ki[0], ki[1], 10, h);
            CHECK_MESSAGE(rel(got, want) < 1e-7, "H=", h, " k=", ki[0], " i=", ki[1]);
        }
    }
}

TEST_CASE("tables are positive with the documented diagonal floor") {
    const QuadMeta quad;
    for (double h : {0.55, 0.75, 0.9}) {
        auto t = build_unscaled(10, 40, h, quad);
        for (double e : t->entries) CHECK(e > 0.0);
        // F_j >= c_H m^{1/2-H}, c_H = 1/(Gamma(H-1/2)(H-1/2)(H+1/2))
        const double c_h =
            1.0 / (oracle::lanczos_gamma(h - 0.5) * (h - 0.5) * (h + 0.5));
        const double floor = c_h * std::pow(10.0, 0.5 - h);
        const CoefficientTable tab = scale_table(*t, 1.0);
        for (int j = 0; j < 40; ++j) CHECK(tab.diag(j) >= floor * (1.0 - 1e-12));
    }
}

TEST_CASE("scaled diagonal is invariant under grid refinement") {
    // sqrt(lambda) F~_j m^{H-1/2} equals the block integral of K(j+1, .)
    // on the unit-time grid, so it cannot depend on m
    const QuadMeta quad;
    for (double h : {0.55, 0.9}) {
        auto coarse = build_unscaled(10, 16, h, quad);
        auto fine = build_unscaled(40, 16, h, quad);
        const CoefficientTable a = scale_table(*coarse, 1.0);
        const CoefficientTable b = scale_table(*fine, 1.0);
        for (int j = 0; j < 16; ++j) {
            const double va = a.diag(j) * std::pow(10.0, h - 0.5);
            const double vb = b.diag(j) * std::pow(40.0, h - 0.5);
            CHECK_MESSAGE(rel(va, vb) < 1e-9, "H=", h, " j=", j);
        }
    }
}

TEST_CASE("scaling by intensity only divides by sqrt(lambda)") {
    const QuadMeta quad;
    auto u = build_unscaled(10, 12, 0.75, quad);
    const CoefficientTable one = scale_table(*u, 1.0);
    const CoefficientTable four = scale_table(*u, 4.0);
    for (size_t i = 0; i < one.entries.size(); ++i)
        CHECK(four.entries[i] == one.entries[i] / 2.0);
    CHECK(four.lambda == 4.0);
}

TEST_CASE("sample count rounds m^alpha and enforces the cap") {
    CHECK(sample_count(10, 2.0) == 100);
    CHECK(sample_count(100, 2.0) == 10000);
    CHECK(sample_count(10, 1.2) == 16);  // 10^1.2 = 15.849
    CHECK_THROWS_AS(sample_count(10, 13.0), ResourceLimitError);
    CHECK_THROWS_AS(build_unscaled(10, 30000, 0.75, QuadMeta{}), ResourceLimitError);
    CHECK_THROWS_AS(sample_count(1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_count(10, 0.5), std::invalid_argument);
}

TEST_CASE("rebuilds are bit identical") {
    const QuadMeta quad;
    const CoefficientTable a = build_table(10, 1.5, 0.75, 2.0, quad);
    const CoefficientTable b = build_table(10, 1.5, 0.75, 2.0, quad);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) CHECK(a.entries[i] == b.entries[i]);
    CHECK(table_checksum(a) == table_checksum(b));
}

TEST_CASE("cache round trips bit for bit and rejects mismatches") {
    const QuadMeta quad;
    const CoefficientTable t = build_table(10, 1.5, 0.8, 1.5, quad);
    const std::string path = temp_path("cache");

    cache_write(t, path);
    const CoefficientTable back = cache_read(path, t.m, t.n, t.hurst, t.lambda, quad);
    REQUIRE(back.entries.size() == t.entries.size());
    for (size_t i = 0; i < t.entries.size(); ++i) CHECK(back.entries[i] == t.entries[i]);
    CHECK(table_checksum(back) == table_checksum(t));

    CHECK_THROWS_AS(cache_read(path, t.m, t.n, 0.75, t.lambda, quad), FormatError);
    CHECK_THROWS_AS(cache_read(path, 11, t.n, t.hurst, t.lambda, quad), FormatError);
    QuadMeta other;
    other.inner = 24;
    CHECK_THROWS_AS(cache_read(path, t.m, t.n, t.hurst, t.lambda, other), FormatError);

    // truncation must surface as a format error, not garbage data
    FILE* f = std::fopen(path.c_str(), "rb+");
    REQUIRE(f != nullptr);
    std::fseek(f, 0, SEEK_END);
    const long size = std::ftell(f);
    REQUIRE(std::fclose(f) == 0);
    REQUIRE(::truncate(path.c_str(), size - 16) == 0);
    CHECK_THROWS_AS(cache_read(path, t.m, t.n, t.hurst, t.lambda, quad), FormatError);

    std::remove(path.c_str());
    CHECK_THROWS_AS(cache_read(path, t.m, t.n, t.hurst, t.lambda, quad), FormatError);
}

TEST_CASE("payload corruption fails the checksum") {
    const QuadMeta quad;
    const CoefficientTable t = build_table(10, 1.5, 0.8, 1.0, quad);
    const std::string path = temp_path("corrupt");
    cache_write(t, path);

    FILE* f = std::fopen(path.c_str(), "rb+");
    REQUIRE(f != nullptr);
    std::fseek(f, -24, SEEK_END);  // somewhere inside the entry payload
    unsigned char byte = 0;
    REQUIRE(std::fread(&byte, 1, 1, f) == 1);
    byte ^= 0x40;
    std::fseek(f, -1, SEEK_CUR);
    REQUIRE(std::fwrite(&byte, 1, 1, f) == 1);
    REQUIRE(std::fclose(f) == 0);

    CHECK_THROWS_AS(cache_read(path, t.m, t.n, t.hurst, t.lambda, quad), FormatError);
    std::remove(path.c_str());
}

TEST_SUITE_END();
