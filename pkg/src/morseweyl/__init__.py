"""Eigenvalue counting and Weyl-law asymptotics for ``-y'' + V y`` on ``[x0, inf)``.

The building blocks:

* :mod:`morseweyl.potentials` -- Morse-type and exponential potential families
* :mod:`morseweyl.oscillation` -- Sturm oscillation (Prufer phase) counting
* :mod:`morseweyl.weyl` -- the Weyl integral and split differences
* :mod:`morseweyl.asymptotics` -- closed-form counting models, residual fits
* :mod:`morseweyl.zeta` -- zeta zero tables and their counting functions
* :mod:`morseweyl.harness` -- T-grid sweeps and experiment verdicts
"""

from .asymptotics import AsymptoticModel, model_value, occupancy, residuals
from .errors import NumericalError
from .oscillation import CountOptions, CountResult, comparison_check, count_below, eigenvalue
from .potentials import (
    BoundedPerturbedMorse,
    DomainSpec,
    Exponential,
    Linear,
    Morse,
    PerturbedMorse,
    SubExponential,
    SuperExponential,
    Tabulated,
    evaluate,
    inverse,
    parse_potential,
)
from .weyl import WeylValue, phase_space_area, split_difference, weyl_count
from .zeta import ZeroTable, count_zeros_below, load_zeros, squared_spectrum_count

__version__ = "0.1.0"

__all__ = [
    "AsymptoticModel",
    "BoundedPerturbedMorse",
    "CountOptions",
    "CountResult",
    "DomainSpec",
    "Exponential",
    "Linear",
    "Morse",
    "NumericalError",
    "PerturbedMorse",
    "SubExponential",
    "SuperExponential",
    "Tabulated",
    "WeylValue",
    "ZeroTable",
    "comparison_check",
    "count_below",
    "count_zeros_below",
    "eigenvalue",
    "evaluate",
    "inverse",
    "load_zeros",
    "model_value",
    "occupancy",
    "parse_potential",
    "phase_space_area",
    "residuals",
    "split_difference",
    "squared_spectrum_count",
    "weyl_count",
]
