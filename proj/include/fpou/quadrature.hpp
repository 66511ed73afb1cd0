#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fpou {

// Fixed quadrature rule on (0,1) for integrands of the form x^beta * g(x)
// with g smooth. Nodes are strictly increasing in the open interval,
// weights are positive and sum to 1/(beta+1). beta == 0 is plain
// Gauss-Legendre; beta in (-1,0) absorbs a left-endpoint power singularity.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double beta = 0.0;
    int order = 0;

    // sum_i w_i * g(x_i); the x^beta factor is folded into the weights.
    template <class F>
    double apply(F&& g) const {
        double acc = 0.0;
        for (int i = 0; i < order; ++i) acc += weights[static_cast<size_t>(i)] * g(nodes[static_cast<size_t>(i)]);
        return acc;
    }
};

// order >= 1. Exact for polynomials of degree <= 2*order - 1.
QuadratureRule gauss_legendre(int order);

// Gauss rule for weight x^beta on (0,1), beta in (-1, 0]. order >= 1.
// Exact for x^beta * p(x), deg p <= 2*order - 1.
QuadratureRule gauss_jacobi(int order, double beta);

enum class SingularEnd { left, right, none };

// Adaptive integration of f over (a,b) where f may blow up (integrably)
// at the flagged endpoint. Subdivides geometrically toward the singular
// end and extrapolates the remaining tail; returns a value with estimated
// absolute error <= tol or throws NumericFailure carrying the best
// estimate and its error bound.
double adaptive_singular(const std::function<double(double)>& f, double a,
                         double b, SingularEnd singular_end, double tol);

}  // namespace fpou
