#include "fpou/model.hpp"

#include <stdexcept>

#include "fpou/errors.hpp"

namespace fpou {

namespace {

void check_sizes(const CoefficientTable& table, const ObservationPath& x) {
    if (x.m != table.m || x.n != table.n ||
        x.values.size() != static_cast<size_t>(table.n) + 1)
        throw std::invalid_argument("observation path does not match the table");
}

}  // namespace

ObservationPath simulate_ou(const CoefficientTable& table, double theta,
                            const NoisePath& noise) {
    if (noise.spec.n != table.n ||
        static_cast<int>(noise.values.size()) != table.n)
        throw std::invalid_argument("noise length does not match the table");
    if (noise.spec.lambda != table.lambda)
        throw std::invalid_argument("noise intensity does not match the table");

    ObservationPath path;
    path.m = table.m;
    path.n = table.n;
    path.provenance = {true, theta, noise.stream_seed};
    path.values.assign(static_cast<size_t>(table.n) + 1, 0.0);

    const double rate = theta / table.m;
    const double* eta = noise.values.data();
    double prefix = 0.0;  // X_1 + ... + X_{k-1}
    for (int k = 1; k <= table.n; ++k) {
        const double* row = table.row(k);
        double walk = 0.0;
        for (int i = 0; i < k; ++i) walk += row[i] * eta[i];
        const double xk = walk + rate * prefix;
        path.values[static_cast<size_t>(k)] = xk;
        prefix += xk;
    }
    return path;
}

TSArrays compute_TS(const CoefficientTable& table, const ObservationPath& x) {
    check_sizes(table, x);
    const int n = table.n;

    TSArrays out;
    out.u.assign(static_cast<size_t>(n), 0.0);
    out.v.assign(static_cast<size_t>(n), 0.0);
    out.T.assign(static_cast<size_t>(n - 1), 0.0);
    out.S.assign(static_cast<size_t>(n - 1), 0.0);

    double y = 0.0;       // y_k = x_1 + ... + x_{k-1}
    double y_prev = 0.0;  // y_{k-1}
    for (int k = 1; k <= n; ++k) {
        const double* row = table.row(k);
        double du = 0.0;  // sum_{i<k} b~_{k,i} u_i
        double dv = 0.0;
        for (int i = 0; i < k - 1; ++i) {
            du += row[i] * out.u[static_cast<size_t>(i)];
            dv += row[i] * out.v[static_cast<size_t>(i)];
        }
        if (k >= 2) {
            out.T[static_cast<size_t>(k - 2)] = du - x.x(k - 1);  // T_{k-1}
            out.S[static_cast<size_t>(k - 2)] = dv - y_prev;      // S_{k-2}
        }
        const double dk = row[k - 1];
        if (dk == 0.0) throw SingularMatrixError("zero diagonal in coefficient table");
        out.u[static_cast<size_t>(k - 1)] = (x.x(k) - du) / dk;
        out.v[static_cast<size_t>(k - 1)] = (y - dv) / dk;
        y_prev = y;
        y += x.x(k);
    }
    return out;
}

std::vector<double> reconstruct_noise(const CoefficientTable& table,
                                      const ObservationPath& x, double theta) {
    check_sizes(table, x);
    const int n = table.n;
    const double rate = theta / table.m;

    std::vector<double> eta(static_cast<size_t>(n), 0.0);
    double prefix = 0.0;  // x_1 + ... + x_{k-1}
    for (int k = 1; k <= n; ++k) {
        const double* row = table.row(k);
        double acc = 0.0;
        for (int i = 0; i < k - 1; ++i) acc += row[i] * eta[static_cast<size_t>(i)];
        const double dk = row[k - 1];
        if (dk == 0.0) throw SingularMatrixError("zero diagonal in coefficient table");
        const double z = x.x(k) - rate * prefix;
        eta[static_cast<size_t>(k - 1)] = (z - acc) / dk;
        prefix += x.x(k);
    }
    return eta;
}

ObservationPath ingest_path(const std::vector<double>& values, int m, bool* shifted) {
    if (values.size() < 3)
        throw CorruptedInputError("observation path needs at least X_0, X_1, X_2");
    if (m < 2) throw std::invalid_argument("grid denominator must be >= 2");

    ObservationPath path;
    path.m = m;
    path.n = static_cast<int>(values.size()) - 1;
    path.provenance = {false, 0.0, 0};
    path.values = values;
    const double x0 = path.values[0];
    if (shifted) *shifted = x0 != 0.0;
    if (x0 != 0.0)
        for (double& v : path.values) v -= x0;
    path.values[0] = 0.0;
    return path;
}

}  // namespace fpou
