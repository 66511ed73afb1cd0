"""Simulation and drift estimation for a discrete Ornstein-Uhlenbeck model
driven by a fractional Poisson random walk."""

from ._fpou import (
    CoefficientTable,
    __version__,
    binomial_poisson_tv,
    build_table,
    estimate,
    kappa,
    kernel_eval,
    normalization,
    sample_eta,
    simulate,
)

__all__ = [
    "CoefficientTable",
    "__version__",
    "binomial_poisson_tv",
    "build_table",
    "estimate",
    "kappa",
    "kernel_eval",
    "normalization",
    "sample_eta",
    "simulate",
]
