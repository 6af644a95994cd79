"""Eigenvalue counting by Sturm oscillation.

The Dirichlet solution of ``-y'' + (V - T) y = 0`` is written in Prufer form
``y = r sin(theta)``, ``y' = r cos(theta)``, which turns the problem into the
scalar phase equation::

    theta' = cos(theta)**2 + (T - V(t)) * sin(theta)**2,   theta(x0) = 0.

Each zero of ``y`` is a crossing of a multiple of pi, and these crossings are
always upward.  The number of zeros on ``(x0, inf)`` equals the number of
eigenvalues strictly below ``T``.

Truncation
----------
Past the turning point ``V - T = kappa**2 > 0`` and, with ``V`` increasing,
the strip ``[m*pi, m*pi + atan(1/kappa)]`` is forward invariant (the phase
velocity is <= 0 on its upper edge).  So is ``[m*pi, (m+1)*pi - atan(1/kappa)]``.
Hence once ``phi = theta mod pi`` satisfies ``phi <= pi - atan(1/kappa)`` the
count can no longer change and the phase can still rise by at most
``max(0, atan(1/kappa) - phi)``.  Integration stops as soon as that bound is
below ``tail_phase_budget``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _dopri
from .errors import (
    CostGuardError,
    InversionError,
    NotFoundError,
    OrderingError,
    StiffnessError,
    TruncationError,
)
from .potentials import DomainSpec, Potential, turning_point

__all__ = ["CountOptions", "CountResult", "count_below", "eigenvalue", "comparison_check"]

PI = math.pi


@dataclass(frozen=True)
class CountOptions:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    tail_phase_budget: float = PI / 100
    #: hard cap on ``t_stop - x0``
    max_span: float = 200.0
    #: refuse counts above this many eigenvalues; ``None`` disables the guard
    max_count: Optional[int] = 5000
    #: keep integrating to ``turn + tail_extension * (t_stop - turn)``
    tail_extension: float = 1.0
    #: step cap near the turning point, as a fraction of the Airy length
    turning_cap: float = 1e-2

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if not 0 < self.tail_phase_budget < PI:
            raise ValueError("tail_phase_budget must lie in (0, pi)")
        if not self.max_span > 0:
            raise ValueError("max_span must be positive")
        if self.tail_extension < 1:
            raise ValueError("tail_extension must be >= 1")


@dataclass(frozen=True)
class CountResult:
    count: int
    final_phase: float
    t_stop: float
    tail_bound: float
    steps: int = 0


def _tail(theta, gap):
    """Return ``(certified, bound)`` for phase ``theta`` where ``V - T = gap > 0``."""
    a = math.atan(1.0 / math.sqrt(gap))
    phi = theta - math.floor(theta / PI) * PI
    return phi <= PI - a, max(0.0, a - phi)


def count_below(
    p: Potential,
    T: float,
    dom: DomainSpec = DomainSpec(),
    opts: CountOptions = CountOptions(),
) -> CountResult:
    """Number of Dirichlet eigenvalues of ``-y'' + V y`` on ``[x0, inf)`` strictly below ``T``.

    Raises
    ------
    TruncationError
        ``V`` did not confine within ``opts.max_span``; ``exc.partial`` holds
        the lower-bound count reached.
    CostGuardError
        The count exceeded ``opts.max_count``.
    StiffnessError
        The step size underflowed.
    """
    T = float(T)
    x0 = float(dom.x0)
    if x0 < p.domain_start:
        raise ValueError(f"x0={x0} lies outside the domain of {p.spec}")

    try:
        turn = turning_point(p, T, x0)
    except InversionError:
        turn = None
        confining = False
    else:
        confining = True
    m = max(x0, p.monotone_from)
    check_from = max(m, turn if turn is not None else x0)
    ref = turn if turn is not None else x0

    # Airy length at the turning point sets the step cap there
    ell = None
    if turn is not None:
        d = p.derivative(turn)
        if d is not None and math.isfinite(d) and d > 0:
            ell = d ** (-1.0 / 3.0)

    def rhs(t, th):
        s = math.sin(th)
        c = math.cos(th)
        return c * c + (T - p(t)) * s * s

    rtol, atol = opts.rel_tol, opts.abs_tol
    t, th = x0, 0.0
    k1 = 1.0
    h = 0.01 / math.sqrt(max(1.0, abs(T - p(x0))))
    steps = 0
    target = None
    guard = None if opts.max_count is None else (opts.max_count + 1) * PI

    while True:
        if t - x0 > opts.max_span:
            partial = CountResult(int(th // PI), th, t, math.inf, steps)
            reason = "potential never exceeds T" if not confining else "no certified stop"
            raise TruncationError(
                f"{p.spec}, T={T!r}: {reason} within max_span={opts.max_span}; "
                f"count {partial.count} is a lower bound",
                partial,
            )
        if ell is not None and abs(t - turn) <= ell:
            h = min(h, opts.turning_cap * ell)
        if target is not None:
            h = min(h, target - t)
        if h < 1e-14 * max(1.0, abs(t)):
            raise StiffnessError(f"{p.spec}, T={T!r}: step size underflow at t={t!r}")

        th_new, k7, err = _dopri.step(rhs, t, th, k1, h)
        err_norm = abs(err) / (atol + rtol * abs(th_new - th))
        if err_norm > 1.0 or not math.isfinite(th_new):
            h *= _dopri.factor(err_norm) if math.isfinite(err_norm) else _dopri.MIN_FACTOR
            continue
        if math.floor(th_new / PI) < math.floor(th / PI):
            # multiples of pi are only ever crossed upward
            h *= 0.5
            continue

        t += h
        th = th_new
        k1 = k7
        steps += 1
        if guard is not None and th > guard:
            raise CostGuardError(
                f"{p.spec}, T={T!r}: more than {opts.max_count} eigenvalues below T"
            )

        if target is not None:
            if t >= target:
                break
        elif t >= check_from:
            gap = p(t) - T
            if gap > 0:
                ok, bound = _tail(th, gap)
                if ok and bound <= opts.tail_phase_budget:
                    if opts.tail_extension > 1.0:
                        target = ref + opts.tail_extension * (t - ref)
                    else:
                        break
        h *= _dopri.factor(err_norm)

    gap = p(t) - T
    tail = _tail(th, gap)[1] if gap > 0 else math.inf
    return CountResult(int(th // PI), th, t, tail, steps)


def eigenvalue(
    p: Potential,
    n: int,
    dom: DomainSpec = DomainSpec(),
    opts: CountOptions = CountOptions(),
    max_doublings: int = 200,
) -> float:
    """``n``-th Dirichlet eigenvalue (``n = 0`` is the ground state), by bisection on the count."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def count(lam):
        return count_below(p, lam, dom, opts).count

    lo = p.lower_bound(dom.x0)
    gap = 1.0
    for _ in range(max_doublings):
        if count(lo) <= n:
            break
        lo -= gap
        gap *= 2
    else:
        raise NotFoundError(f"{p.spec}: no lower bracket for eigenvalue {n}")
    gap = max(1.0, abs(lo))
    hi = lo + gap
    for _ in range(max_doublings):
        if count(hi) > n:
            break
        lo = hi
        gap *= 2
        hi = lo + gap
    else:
        raise NotFoundError(f"{p.spec}: no upper bracket for eigenvalue {n}")

    while hi - lo > 1e-8 * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if count(mid) <= n:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def comparison_check(
    p_low: Potential,
    p_high: Potential,
    T: float,
    dom: DomainSpec = DomainSpec(),
    opts: CountOptions = CountOptions(),
    grid_points: int = 400,
) -> Tuple[int, int]:
    """Counts below ``T`` for two potentials that must satisfy ``p_low <= p_high``.

    The ordering is checked on a uniform grid covering the classically
    allowed regions of both potentials; a violation raises
    :class:`OrderingError`.  Sturm comparison then gives
    ``count(p_low) >= count(p_high) - 1``.
    """
    x0 = dom.x0
    ends = [x0 + 1.0]
    for p in (p_low, p_high):
        try:
            tp = turning_point(p, T, x0)
        except InversionError:
            tp = None
        if tp is not None:
            ends.append(tp + 1.0)
    ts = np.linspace(x0, max(ends), grid_points)
    lo = p_low.sample(ts)
    hi = p_high.sample(ts)
    bad = lo > hi + 1e-12 * np.abs(hi)
    if np.any(bad):
        t_bad = ts[np.argmax(bad)]
        raise OrderingError(f"{p_low.spec} exceeds {p_high.spec} at t={t_bad!r}")
    return (
        count_below(p_low, T, dom, opts).count,
        count_below(p_high, T, dom, opts).count,
    )
