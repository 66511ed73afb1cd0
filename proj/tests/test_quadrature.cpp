#include <cmath>
#include <vector>

#include "doctest.h"
#include "fpou/errors.hpp"
#include "fpou/quadrature.hpp"

using fpou::adaptive_singular;
using fpou::gauss_jacobi;
using fpou::gauss_legendre;
using fpou::QuadratureRule;
using fpou::SingularEnd;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("two point Legendre rule matches the closed form") {
    const QuadratureRule r = gauss_legendre(2);
    REQUIRE(r.order == 2);
    // nodes (3 -+ sqrt(3))/6
    CHECK(r.nodes[0] == doctest::Approx(0.21132486540518711775).epsilon(1e-15));
    CHECK(r.nodes[1] == doctest::Approx(0.78867513459481288225).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.weights[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("two point Jacobi rule at beta=-1/2 matches the closed form") {
    const QuadratureRule r = gauss_jacobi(2, -0.5);
    REQUIRE(r.order == 2);
    CHECK(r.nodes[0] == doctest::Approx(0.11558710999704793517).epsilon(1e-14));
    CHECK(r.nodes[1] == doctest::Approx(0.74155574714580920769).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(1.3042903097250922853).epsilon(1e-14));
    CHECK(r.weights[1] == doctest::Approx(0.69570969027490771475).epsilon(1e-14));
}

TEST_CASE("one point Jacobi rule is the weighted centroid") {
    // for weight x^beta on (0,1): node (beta+1)/(beta+2), weight 1/(beta+1)
    const QuadratureRule r = gauss_jacobi(1, -0.75);
    REQUIRE(r.order == 1);
    CHECK(r.nodes[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("weights sum to the mass of the weight function") {
    for (double beta : {0.0, -0.25, -0.5, -0.95}) {
        for (int order : {1, 2, 5, 16, 24}) {
            const QuadratureRule r =
                beta == 0.0 ? gauss_legendre(order) : gauss_jacobi(order, beta);
            double sum = 0.0;
            for (double w : r.weights) sum += w;
            // recurrence rounding grows mildly with order near beta = -1
            CHECK_MESSAGE(sum == doctest::Approx(1.0 / (beta + 1.0)).epsilon(1e-12),
                          "beta=", beta, " order=", order);
            for (double w : r.weights) CHECK(w > 0.0);
            for (int i = 1; i < order; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
            CHECK(r.nodes[0] > 0.0);
            CHECK(r.nodes[order - 1] < 1.0);
        }
    }
}

TEST_CASE("rules are exact on the highest admissible monomial") {
    // integral of x^beta * x^d over (0,1) is 1/(beta+d+1)
    for (double beta : {0.0, -0.5, -0.9}) {
        for (int order : {2, 4, 9}) {
            const QuadratureRule r =
                beta == 0.0 ? gauss_legendre(order) : gauss_jacobi(order, beta);
            const int d = 2 * order - 1;
            const double got = r.apply([&](double x) { return std::pow(x, d); });
            CHECK_MESSAGE(got == doctest::Approx(1.0 / (beta + d + 1.0)).epsilon(5e-13),
                          "beta=", beta, " order=", order);
        }
    }
}

TEST_CASE("adaptive integrator reproduces closed forms at singular endpoints") {
    const double tol = 1e-12;
    const double left = adaptive_singular(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, SingularEnd::left, tol);
    CHECK(left == doctest::Approx(2.0).epsilon(1e-11));

    const double mixed = adaptive_singular(
        [](double x) { return std::pow(x, -0.25) * (1.0 - x); }, 0.0, 1.0,
        SingularEnd::left, tol);
    CHECK(mixed == doctest::Approx(16.0 / 21.0).epsilon(1e-11));

    const double right = adaptive_singular(
        [](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0,
        SingularEnd::right, tol);
    CHECK(right == doctest::Approx(2.0).epsilon(1e-11));

    const double smooth = adaptive_singular([](double x) { return std::cos(x); }, 0.0,
                                            1.0, SingularEnd::none, tol);
    CHECK(smooth == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
}

TEST_CASE("fixed Jacobi rule and adaptive integrator agree off the textbook cases") {
    // integrand x^{-0.25} e^x: one route absorbs the power into the rule,
    // the other resolves it by geometric refinement
    const QuadratureRule r = gauss_jacobi(16, -0.25);
    const double fixed = r.apply([](double x) { return std::exp(x); });
    const double adaptive = adaptive_singular(
        [](double x) { return std::pow(x, -0.25) * std::exp(x); }, 0.0, 1.0,
        SingularEnd::left, 1e-13);
    CHECK(fixed == doctest::Approx(adaptive).epsilon(1e-12));
}

TEST_CASE("exhausted refinement reports the partial result") {
    // exponent -0.9999 decays ~2^-1e-4 per level: no budget suffices
    bool threw = false;
    try {
        adaptive_singular([](double x) { return std::pow(x, -0.9999); }, 0.0, 1.0,
                          SingularEnd::left, 1e-12);
    } catch (const fpou::NumericFailure& e) {
        threw = true;
        CHECK(e.best_estimate > 0.0);
        CHECK(e.best_estimate < 10000.0);  // true value is 1/(1-0.9999) = 1e4
        CHECK(e.bound > 0.0);
    }
    CHECK(threw);
}

TEST_SUITE_END();
