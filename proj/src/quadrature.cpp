#include "fpou/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fpou/errors.hpp"

namespace fpou {
namespace {

// Jacobi polynomial P_n^{(a,b)} via the three-term recurrence.
double jacobi_eval(int n, double a, double b, double x) {
    if (n == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double c1 = 2.0 * kk * (kk + a + b) * (2.0 * kk + a + b - 2.0);
        const double c2 = (2.0 * kk + a + b - 1.0) * (a * a - b * b);
        const double c3 =
            (2.0 * kk + a + b - 1.0) * (2.0 * kk + a + b) * (2.0 * kk + a + b - 2.0);
        const double c4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * (2.0 * kk + a + b);
        const double p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double jacobi_deriv(int n, double a, double b, double x) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, x);
}

}  // namespace

QuadratureRule gauss_jacobi(int order, double beta) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    if (!(beta > -1.0 && beta <= 0.0))
        throw std::invalid_argument("jacobi exponent must lie in (-1, 0]");

    const double a = 0.0;
    const double b = beta;
    QuadratureRule rule;
    rule.beta = beta;
    rule.order = order;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));

    for (int i = 1; i <= order; ++i) {
        // roots come out in descending xi order from this guess
        double xi = std::cos(std::numbers::pi * (i - 0.25 + 0.5 * a) /
                             (order + 0.5 * (a + b + 1.0)));
        for (int it = 0; it < 100; ++it) {
            const double p = jacobi_eval(order, a, b, xi);
            const double dp = jacobi_deriv(order, a, b, xi);
            const double dx = p / dp;
            xi -= dx;
            xi = std::clamp(xi, -1.0 + 1e-15, 1.0 - 1e-15);
            if (std::abs(dx) < 1e-15) break;
        }
        const double dp = jacobi_deriv(order, a, b, xi);
        // map [-1,1] -> [0,1]; for a = 0 the interval factor 2^{-(b+1)} cancels
        // the classical weight prefactor 2^{a+b+1} exactly
        const size_t slot = static_cast<size_t>(order - i);
        rule.nodes[slot] = 0.5 * (1.0 + xi);
        rule.weights[slot] = 1.0 / ((1.0 - xi * xi) * dp * dp);
    }

    for (int i = 0; i < order; ++i) {
        const size_t s = static_cast<size_t>(i);
        const bool inside = rule.nodes[s] > 0.0 && rule.nodes[s] < 1.0;
        const bool ordered = i == 0 || rule.nodes[s] > rule.nodes[s - 1];
        if (!inside || !ordered || !(rule.weights[s] > 0.0) ||
            !std::isfinite(rule.weights[s]))
            throw NumericFailure("gauss-jacobi node solve failed", rule.nodes[s], 1.0);
    }
    return rule;
}

QuadratureRule gauss_legendre(int order) { return gauss_jacobi(order, 0.0); }

namespace {

const QuadratureRule& panel_rule() {
    static const QuadratureRule rule = gauss_legendre(15);
    return rule;
}

double rule_apply(const std::function<double(double)>& f, double lo, double hi) {
    const QuadratureRule& r = panel_rule();
    const double len = hi - lo;
    double acc = 0.0;
    for (int i = 0; i < r.order; ++i) {
        const size_t s = static_cast<size_t>(i);
        acc += r.weights[s] * f(lo + len * r.nodes[s]);
    }
    return acc * len;
}

struct SmoothResult {
    double value;
    double err;
};

// whole is the rule applied to [lo,hi]; the halves refine it and their
// disagreement with whole bounds the error of the refined value.
SmoothResult smooth_split(const std::function<double(double)>& f, double lo, double hi,
                          double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return {whole, 0.0};
    const double left = rule_apply(f, lo, mid);
    const double right = rule_apply(f, mid, hi);
    const double refined = left + right;
    const double err = std::abs(whole - refined);
    if (err <= tol || depth >= 48) return {refined, err};
    const SmoothResult l = smooth_split(f, lo, mid, left, 0.5 * tol, depth + 1);
    const SmoothResult r = smooth_split(f, mid, hi, right, 0.5 * tol, depth + 1);
    return {l.value + r.value, l.err + r.err};
}

SmoothResult integrate_smooth(const std::function<double(double)>& f, double lo,
                              double hi, double tol) {
    return smooth_split(f, lo, hi, rule_apply(f, lo, hi), tol, 0);
}

}  // namespace

double adaptive_singular(const std::function<double(double)>& f, double a, double b,
                         SingularEnd singular_end, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("tolerance must be positive and finite");
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integration interval is empty or infinite");

    if (singular_end == SingularEnd::none) {
        const SmoothResult r = integrate_smooth(f, a, b, tol);
        if (r.err > tol)
            throw NumericFailure("adaptive integration did not reach tolerance", r.value,
                                 r.err);
        return r.value;
    }
    if (singular_end == SingularEnd::right) {
        const std::function<double(double)> g = [&f, a, b](double x) {
            return f(a + b - x);
        };
        return adaptive_singular(g, a, b, SingularEnd::left, tol);
    }

    // Geometric panels shrinking toward the left endpoint. Panel sums of an
    // integrable power singularity decay geometrically, so the remaining tail
    // is extrapolated from the measured decay ratio and convergence is judged
    // on the stability of the corrected value.
    constexpr int max_levels = 60;
    const double len = b - a;
    double acc = 0.0;
    double rule_err = 0.0;
    double hi = b;
    double c_prev = 0.0;
    bool have_prev = false;
    double v_prev = 0.0;
    double dv_prev = 0.0;
    bool have_v = false;
    bool have_dv = false;
    int calm = 0;
    double best = 0.0;
    double best_bound = std::numeric_limits<double>::infinity();

    for (int level = 0; level < max_levels; ++level) {
        const double lo = a + len * std::ldexp(1.0, -(level + 1));
        if (!(lo > a && lo < hi)) break;  // interval exhausted at machine precision
        const double panel_tol = tol / (4.0 * (level + 1.0) * (level + 2.0));
        const SmoothResult panel = integrate_smooth(f, lo, hi, panel_tol);
        acc += panel.value;
        rule_err += panel.err;

        double value = acc;
        bool have_tail = false;
        if (have_prev && std::abs(panel.value) < std::abs(c_prev)) {
            const double rho = std::abs(panel.value) / std::abs(c_prev);
            if (rho < 0.995) {
                value += panel.value * rho / (1.0 - rho);
                have_tail = true;
            }
        }

        const bool tail_negligible =
            have_tail || (have_prev && std::abs(panel.value) <= 0.5 * std::abs(c_prev));
        if (level >= 1 && tail_negligible && std::abs(panel.value) < 0.1 * tol)
            return value;

        if (have_tail && have_v) {
            const double dv = std::abs(value - v_prev);
            if (have_dv) {
                double rho_v = dv_prev > 0.0 ? std::min(dv / dv_prev, 0.9) : 0.0;
                const double bound =
                    dv * std::max(rho_v / (1.0 - rho_v), 0.5) + rule_err;
                if (bound < best_bound) {
                    best = value;
                    best_bound = bound;
                }
                calm = bound <= tol ? calm + 1 : 0;
                if (calm >= 2) return value;
            }
            dv_prev = dv;
            have_dv = true;
        }
        if (have_tail) {
            v_prev = value;
            have_v = true;
        }
        c_prev = panel.value;
        have_prev = true;
        hi = lo;
    }

    throw NumericFailure("singular integration exhausted refinement levels",
                         std::isfinite(best_bound) ? best : (have_v ? v_prev : acc),
                         best_bound);
}

}  // namespace fpou
