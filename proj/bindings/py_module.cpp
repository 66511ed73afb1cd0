// Python bindings for the core operations: coefficient tables, noise and
// path simulation, and the closed-form drift estimators. Exceptions map to
// Python ones through the standard translators (invalid_argument ->
// ValueError, runtime_error family -> RuntimeError).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "fpou/estimators.hpp"
#include "fpou/kernel.hpp"
#include "fpou/model.hpp"
#include "fpou/montecarlo.hpp"
#include "fpou/noise.hpp"

namespace py = pybind11;

namespace {

void check_index(bool ok, const std::string& what) {
    if (!ok) throw py::index_error(what);
}

fpou::QuadMeta quad_of(int inner, int outer) {
    fpou::QuadMeta quad;
    quad.inner = inner;
    quad.outer = outer;
    return quad;
}

}  // namespace

PYBIND11_MODULE(_fpou, mod) {
    mod.doc() =
        "Simulation and drift estimation for a discrete Ornstein-Uhlenbeck "
        "model driven by a fractional Poisson random walk";
    mod.attr("__version__") = FPOU_VERSION;

    py::class_<fpou::CoefficientTable>(mod, "CoefficientTable")
        .def_readonly("m", &fpou::CoefficientTable::m)
        .def_readonly("n", &fpou::CoefficientTable::n)
        .def_readonly("hurst", &fpou::CoefficientTable::hurst)
        .def_readonly("intensity", &fpou::CoefficientTable::lambda)
        .def(
            "entry",
            [](const fpou::CoefficientTable& t, int k, int i) {
                check_index(k >= 1 && k <= t.n && i >= 1 && i <= k,
                            "entry indices must satisfy 1 <= i <= k <= n");
                return t.b(k, i);
            },
            py::arg("k"), py::arg("i"),
            "scaled lower-triangular entry b~_{k,i}")
        .def(
            "diag",
            [](const fpou::CoefficientTable& t, int j) {
                check_index(j >= 0 && j <= t.n - 1,
                            "diagonal index must lie in [0, n-1]");
                return t.diag(j);
            },
            py::arg("j"), "freshest-noise coefficient F~_j")
        .def("checksum",
             [](const fpou::CoefficientTable& t) { return fpou::table_checksum(t); })
        .def("__repr__", [](const fpou::CoefficientTable& t) {
            return "CoefficientTable(m=" + std::to_string(t.m) +
                   ", n=" + std::to_string(t.n) +
                   ", hurst=" + fpou::format_double(t.hurst) +
                   ", intensity=" + fpou::format_double(t.lambda) + ")";
        });

    mod.def(
        "build_table",
        [](int m, double alpha, double hurst, double intensity, int quad_inner,
           int quad_outer) {
            return fpou::build_table(m, alpha, hurst, intensity,
                                     quad_of(quad_inner, quad_outer));
        },
        py::arg("m"), py::arg("alpha"), py::arg("hurst"),
        py::arg("intensity") = 1.0, py::arg("quad_inner") = 16,
        py::arg("quad_outer") = 8,
        "Coefficient table on the grid t_j = j/m with n = round(m^alpha) "
        "rows, scaled by 1/sqrt(intensity)");

    mod.def(
        "kernel_eval",
        [](double t, double s, double hurst, int quad_inner) {
            return fpou::kernel_eval(t, s, fpou::make_kernel_params(hurst),
                                     quad_inner);
        },
        py::arg("t"), py::arg("s"), py::arg("hurst"), py::arg("quad_inner") = 16,
        "Moving-average kernel K(t, s); zero for s >= t");

    mod.def("kappa", &fpou::kappa_of, py::arg("n"), py::arg("intensity"),
            "Noise probability parameter e^{-intensity/n}");

    mod.def(
        "sample_eta",
        [](int n, double intensity, uint64_t seed) {
            return fpou::sample_eta(fpou::make_noise_spec(n, intensity), seed)
                .values;
        },
        py::arg("n"), py::arg("intensity"), py::arg("seed"),
        "Two-valued mean-zero noise draws eta_1..eta_n");

    mod.def(
        "simulate",
        [](const fpou::CoefficientTable& table, double theta, uint64_t seed) {
            const fpou::NoisePath noise = fpou::sample_eta(
                fpou::make_noise_spec(table.n, table.lambda), seed);
            const fpou::ObservationPath x =
                fpou::simulate_ou(table, theta, noise);
            py::dict out;
            out["x"] = x.values;
            out["eta"] = noise.values;
            out["theta"] = theta;
            out["seed"] = seed;
            return out;
        },
        py::arg("table"), py::arg("theta"), py::arg("seed"),
        "One observation path X_0..X_n (X_0 = 0) with its driving noise");

    mod.def(
        "estimate",
        [](const fpou::CoefficientTable& table,
           const std::vector<double>& values) {
            if (static_cast<int>(values.size()) != table.n + 1)
                throw std::invalid_argument(
                    "path length must be n+1 = " + std::to_string(table.n + 1) +
                    " for this table");
            bool shifted = false;
            const fpou::ObservationPath x =
                fpou::ingest_path(values, table.m, &shifted);
            const fpou::EstimateResult est = fpou::estimate_path(x, table);
            py::dict out;
            out["theta_ls"] = est.theta_ls;
            out["theta_ml"] = est.theta_ml;
            out["a_star"] = est.a_star;
            out["bracket"] = est.bracket;
            out["kappa"] = est.kappa;
            out["input_shifted_to_zero"] = shifted;
            return out;
        },
        py::arg("table"), py::arg("values"),
        "Least-squares and likelihood drift estimates from a sampled path");

    mod.def("normalization", &fpou::normalization, py::arg("m"),
            py::arg("alpha"), py::arg("hurst"),
            "Histogram scaling constant for the estimation error");

    mod.def("binomial_poisson_tv", &fpou::binomial_poisson_tv, py::arg("n"),
            py::arg("intensity"),
            "Total-variation distance between Binomial(n, 1-e^{-intensity/n}) "
            "and Poisson(intensity)");
}
