"""Closed-form counting models and residual analysis.

Models
------
``lagarias(x0)``
    ``(sqrt(T) log sqrt(T) + (2 log 2 - 1 - x0) sqrt(T)) / pi``, the two-term
    expansion of the Morse counting function on ``[x0, inf)``.
``zeta_paper``
    ``(T log T + (-2 log 2pi - 1) T) / pi``.
``zeta_classical``
    ``(T/pi) log(T / 2pi) - T/pi``: Riemann-von Mangoldt with zeros of both
    signs counted.
``envelope(eps)``
    ``T**(eps/4) * sqrt(log T)``, the growth floor for perturbations of size
    ``e^{(1+eps)t}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np
from scipy import stats

from .errors import InsufficientDataError
from .potentials import Potential

__all__ = [
    "AsymptoticModel",
    "ResidualSeries",
    "model_value",
    "loglog_slope",
    "residuals",
    "occupancy",
]

LOG2 = math.log(2.0)
LOG2PI = math.log(2.0 * math.pi)
RESIDUAL_FLOOR = 1e-9
KINDS = ("lagarias", "zeta_paper", "zeta_classical", "envelope")


@dataclass(frozen=True)
class AsymptoticModel:
    kind: str
    x0: float = 0.0
    eps: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "envelope" and not (self.eps is not None and self.eps > 0):
            raise ValueError("envelope model needs eps > 0")

    @classmethod
    def lagarias(cls, x0: float = 0.0) -> "AsymptoticModel":
        return cls("lagarias", x0=x0)

    @classmethod
    def zeta_paper(cls) -> "AsymptoticModel":
        return cls("zeta_paper")

    @classmethod
    def zeta_classical(cls) -> "AsymptoticModel":
        return cls("zeta_classical")

    @classmethod
    def envelope(cls, eps: float) -> "AsymptoticModel":
        return cls("envelope", eps=eps)

    @property
    def coefficients(self) -> Tuple[float, float]:
        """``(leading, second)`` coefficients in the model's natural basis."""
        if self.kind == "lagarias":
            return 1.0 / math.pi, (2.0 * LOG2 - 1.0 - self.x0) / math.pi
        if self.kind == "zeta_paper":
            return 1.0 / math.pi, (-2.0 * LOG2PI - 1.0) / math.pi
        if self.kind == "zeta_classical":
            return 1.0 / math.pi, (-LOG2PI - 1.0) / math.pi
        return self.eps / 4.0, 0.5

    def __call__(self, T):
        return model_value(self, T)


def model_value(m: AsymptoticModel, T):
    """Evaluate the model at ``T > 1``; accepts scalars or arrays."""
    T_arr = np.asarray(T, dtype=float)
    if np.any(T_arr <= 1):
        raise ValueError("models are defined for T > 1")
    a, b = m.coefficients
    if m.kind == "lagarias":
        r = np.sqrt(T_arr)
        out = a * r * np.log(r) + b * r
    elif m.kind == "envelope":
        out = T_arr**a * np.sqrt(np.log(T_arr))
    else:
        out = a * T_arr * np.log(T_arr) + b * T_arr
    return float(out) if np.ndim(out) == 0 else out


def loglog_slope(x, y) -> Tuple[float, float]:
    """Least-squares slope of ``log y`` against ``log x`` with a 95% half-width."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    fit = stats.linregress(lx, ly)
    n = len(lx)
    half = float(stats.t.ppf(0.975, n - 2) * fit.stderr) if n > 2 else math.inf
    return float(fit.slope), half


@dataclass
class ResidualSeries:
    T: np.ndarray
    measured: np.ndarray
    model: np.ndarray
    residual: np.ndarray
    slope: float
    slope_ci: float
    #: every residual fell below the fitting floor; slope forced to 0
    degenerate: bool = False
    kind: str = field(default="")

    @property
    def rows(self):
        return list(zip(self.T, self.measured, self.model, self.residual))


def residuals(
    counts: Iterable[Tuple[float, float]],
    m: AsymptoticModel,
    min_rows: int = 5,
    min_decades: float = 2.0,
) -> ResidualSeries:
    """Residuals ``measured - model`` and the log-log slope of their magnitude.

    ``counts`` is an iterable of ``(T, measured)`` pairs.
    """
    rows = sorted((float(T), float(v)) for T, v in counts)
    if len(rows) < min_rows:
        raise InsufficientDataError(f"need at least {min_rows} rows, got {len(rows)}")
    T = np.array([r[0] for r in rows])
    if math.log10(T[-1] / T[0]) < min_decades - 1e-9:
        raise InsufficientDataError(f"rows span fewer than {min_decades} decades of T")
    measured = np.array([r[1] for r in rows])
    model = np.asarray(model_value(m, T))
    resid = measured - model
    mag = np.abs(resid)
    if np.all(mag < RESIDUAL_FLOOR):
        return ResidualSeries(T, measured, model, resid, 0.0, 0.0, True, m.kind)
    slope, ci = loglog_slope(T, np.maximum(mag, RESIDUAL_FLOOR))
    return ResidualSeries(T, measured, model, resid, slope, ci, False, m.kind)


def occupancy(p: Potential, w: Potential, x0: float, R: float, samples: int = 10_000) -> float:
    """Fraction of ``[x0, R]`` on which ``p < w``, estimated on a uniform grid."""
    if not R > x0:
        raise ValueError("R must exceed x0")
    if samples < 1000:
        raise ValueError("samples must be at least 1000")
    ts = np.linspace(x0, R, samples)
    with np.errstate(over="ignore"):
        below = p.sample(ts) < w.sample(ts)
    return float(np.count_nonzero(below)) / samples
