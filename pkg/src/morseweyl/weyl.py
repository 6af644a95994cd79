"""Weyl-law integral ``(1/pi) * int_{x0}^{V^{-1}(T)} sqrt(T - V(t)) dt``.

The square-root singularity at the turning point is removed with the
substitution ``t = V^{-1}(T) - s**2`` on the last panel, after which the
integrand vanishes like ``s**2`` and plain adaptive Gauss-Kronrod
(:func:`scipy.integrate.quad`) converges quickly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate, optimize

from .errors import AccuracyError
from .potentials import Morse, PerturbedMorse, Potential, Tabulated, inverse, turning_point

__all__ = ["WeylValue", "weyl_count", "phase_space_area", "split_difference"]

EPSABS = 1e-9
EPSREL = 1e-9
LIMIT = 10_000


@dataclass(frozen=True)
class WeylValue:
    value: float
    quad_error: float
    turning_point: float


def _quad(f, a, b, points=None):
    if b <= a:
        return 0.0, 0.0
    pts = None
    if points is not None:
        pts = [x for x in points if a < x < b] or None
    val, err = integrate.quad(f, a, b, epsabs=EPSABS, epsrel=EPSREL, limit=LIMIT, points=pts)
    return val, err


def _quad_to_root(f, a, root):
    """``int_a^root f`` where ``f`` has a square-root zero at ``root``.

    Splits at the midpoint; the last half uses ``t = root - s**2``.
    """
    if root <= a:
        return 0.0, 0.0
    mid = a + 0.5 * (root - a)
    v1, e1 = _quad(f, a, mid)
    v2, e2 = _quad(lambda s: 2.0 * s * f(root - s * s), 0.0, math.sqrt(root - mid))
    return v1 + v2, e1 + e2


def _sqrt_gap(p, T):
    def f(t):
        g = T - p(t)
        return math.sqrt(g) if g > 0 else 0.0

    return f


def _check(value, err, turn):
    wv = WeylValue(value, err, turn)
    if err > 1e-6 * max(1.0, value):
        raise AccuracyError(f"quadrature error {err:.3g} too large for value {value:.6g}", wv)
    return wv


def weyl_count(p: Potential, T: float, x0: float = 0.0) -> WeylValue:
    """Weyl estimate of the number of eigenvalues below ``T`` on ``[x0, inf)``.

    An empty allowed region gives ``value == 0`` with ``turning_point == x0``.
    """
    T = float(T)
    f = _sqrt_gap(p, T)
    knots = list(p._t) if isinstance(p, Tabulated) else None
    turn = turning_point(p, T, x0)
    m = max(x0, p.monotone_from)
    if turn is None:
        if p.lower_bound(x0) >= T or m <= x0:
            return WeylValue(0.0, 0.0, x0)
        # allowed pockets before the increasing branch (tabulated only)
        val, err = _quad(f, x0, m, knots)
        return _check(val / math.pi, err / math.pi, x0)

    start = x0
    if m > x0 and p(x0) > T and not isinstance(p, Tabulated):
        # decreasing branch of a unimodal potential: skip the forbidden head
        start = optimize.brentq(lambda t: p(t) - T, x0, m, xtol=1e-14, rtol=1e-15)
    if knots:
        val, err = _quad(f, start, turn, knots)
    else:
        val, err = _quad_to_root(f, start, turn)
    return _check(val / math.pi, err / math.pi, turn)


def phase_space_area(p: Potential, T: float, x0: float = 0.0) -> float:
    """Area of ``{(t, xi): xi**2 + V(t) < T, t >= x0}``, i.e. ``2 * int sqrt(T - V)``."""
    return 2.0 * math.pi * weyl_count(p, T, x0).value


def split_difference(eps: float, sign: int, T: float, x0: float = 0.0) -> float:
    """Gap between the Weyl integrals of ``Q_0 = e^{2t}/4`` and ``Q_0 +/- e^{(1+eps)t}/4``.

    For ``sign=+1`` returns ``N_weyl(Q_0) - N_weyl(Q_0 + P)``; for ``sign=-1``
    returns ``N_weyl(Q_0 - P) - N_weyl(Q_0)``, so both are positive.  The
    two integrals are combined over their common range as
    ``(A - B) / (sqrt(A) + sqrt(B))`` so no cancellation occurs.  ``eps=0``
    means no perturbation and returns exactly 0.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    T = float(T)
    q0 = Morse(0.0)
    if eps == 0:
        pert = lambda t: 0.0  # noqa: E731
        w = q0
    else:
        pert = lambda t: 0.25 * math.exp((1.0 + eps) * t)  # noqa: E731
        w = PerturbedMorse(eps, sign)

    u = 0.5 * math.log(4.0 * T) if T > 0 else -math.inf  # Q_0(u) = T
    # the lower potential has the longer allowed interval
    low, high = (q0, w) if sign > 0 else (w, q0)
    end_low = u if low is q0 else _root(w, T, x0, u)
    if end_low is None or end_low <= x0:
        return 0.0
    end_high = u if high is q0 else _root(w, T, x0, u)
    if end_high is None:
        end_high = x0
    end_high = max(end_high, x0)

    def common(t):
        a = T - low(t)
        b = T - high(t)
        den = math.sqrt(max(a, 0.0)) + math.sqrt(max(b, 0.0))
        return pert(t) / den if den > 0 else 0.0

    v1, e1 = _quad_to_root(common, x0, end_high)
    v2, e2 = _quad_to_root(_sqrt_gap(low, T), end_high, end_low)
    return (v1 + v2) / math.pi


def _root(w, T, x0, u):
    """Turning point of the perturbed potential; ``None`` if it never reaches ``T`` past ``x0``."""
    m = max(x0, w.monotone_from)
    if w(m) >= T:
        return None
    hi = max(u, m) + 1.0
    while w(hi) <= T:
        hi += 2.0 * (hi - m)
    return inverse(w, T, m, hi)
