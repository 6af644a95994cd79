"""Potential families for half-line Schrodinger operators ``-y'' + V y``.

Every potential is an immutable value object.  Calling it on a float returns
``V(t)``; :meth:`Potential.sample` evaluates on numpy arrays, and
:meth:`Potential.derivative` gives ``V'(t)`` in closed form.

Potentials can also be built from short spec strings, see
:func:`parse_potential`::

    >>> parse_potential("morse:k=1")(0.0)
    1.25
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import AmbiguityError, DomainError, InversionError, ParseError

__all__ = [
    "Potential",
    "Morse",
    "BoundedPerturbedMorse",
    "PerturbedMorse",
    "Exponential",
    "SubExponential",
    "SuperExponential",
    "Linear",
    "Tabulated",
    "DomainSpec",
    "evaluate",
    "inverse",
    "turning_point",
    "parse_potential",
]

_EXP_MAX = 709.0


def _exp(x: float) -> float:
    return math.exp(x) if x < _EXP_MAX else math.inf


@dataclass(frozen=True)
class DomainSpec:
    """Half-line ``[x0, inf)`` with the Dirichlet condition ``y(x0) = 0``."""

    x0: float = 0.0
    boundary: str = "dirichlet"

    def __post_init__(self):
        if not math.isfinite(self.x0):
            raise DomainError(f"x0 must be finite, got {self.x0}")
        if self.boundary != "dirichlet":
            raise DomainError("only the Dirichlet boundary condition is supported")


class Potential:
    """Base class.  Subclasses implement ``__call__``, ``sample`` and ``spec``."""

    #: left end of the natural domain of definition
    domain_start: float = -math.inf

    def __call__(self, t: float) -> float:
        raise NotImplementedError

    def sample(self, ts) -> np.ndarray:
        raise NotImplementedError

    def derivative(self, t: float) -> Optional[float]:
        return None

    @property
    def monotone_from(self) -> float:
        """Point after which ``V`` is strictly increasing."""
        return -math.inf

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def lower_bound(self, x0: float) -> float:
        """Infimum of ``V`` over ``[x0, inf)``."""
        m = self.monotone_from
        return self(x0) if x0 >= m else self(m)

    def _check_domain(self, t):
        if np.any(np.asarray(t) < self.domain_start):
            raise DomainError(f"{self.spec}: t below domain start {self.domain_start}")


@dataclass(frozen=True)
class Morse(Potential):
    """``Q_k(t) = e^{2t}/4 + k e^t``."""

    k: float = 0.0

    def __call__(self, t):
        et = _exp(t)
        if math.isinf(et):
            return math.inf
        return 0.25 * et * et + self.k * et

    def sample(self, ts):
        et = np.exp(np.asarray(ts, dtype=float))
        return 0.25 * et * et + self.k * et

    def derivative(self, t):
        et = _exp(t)
        if math.isinf(et):
            return math.inf
        return 0.5 * et * et + self.k * et

    @property
    def monotone_from(self):
        return math.log(-2.0 * self.k) if self.k < 0 else -math.inf

    @property
    def spec(self):
        return f"morse:k={self.k!r}"


@dataclass(frozen=True)
class BoundedPerturbedMorse(Morse):
    """``e^{2t}/4 + c e^t``: a Morse potential shifted by a bounded multiple of ``e^t``.

    Same formula as :class:`Morse`; kept as its own variant so the two
    sandwich potentials ``Q_0 +/- C e^t`` read as such in reports.
    """

    k: float = field(init=False, repr=False, default=0.0)
    c: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "k", float(self.c))

    @property
    def spec(self):
        return f"bmorse:c={self.c!r}"


@dataclass(frozen=True)
class PerturbedMorse(Potential):
    """``e^{2t}/4 + sign * e^{(1+eps)t}/4``."""

    eps: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if not self.eps > 0:
            raise DomainError("eps must be positive")
        if self.sign == -1 and not self.eps < 1:
            # e^{2t} - e^{(1+eps)t} must stay positive for large t
            raise DomainError("sign=-1 requires eps < 1")

    def __call__(self, t):
        a = 2.0 * t
        b = (1.0 + self.eps) * t
        if max(a, b) >= _EXP_MAX:
            return math.inf if self.sign > 0 or a > b else -math.inf
        return 0.25 * (math.exp(a) + self.sign * math.exp(b))

    def sample(self, ts):
        ts = np.asarray(ts, dtype=float)
        return 0.25 * (np.exp(2.0 * ts) + self.sign * np.exp((1.0 + self.eps) * ts))

    def derivative(self, t):
        a = 2.0 * t
        b = (1.0 + self.eps) * t
        if max(a, b) >= _EXP_MAX:
            return math.inf
        return 0.5 * math.exp(a) + self.sign * 0.25 * (1.0 + self.eps) * math.exp(b)

    @property
    def monotone_from(self):
        if self.sign > 0:
            return -math.inf
        return math.log((1.0 + self.eps) / 2.0) / (1.0 - self.eps)

    @property
    def spec(self):
        return f"pmorse:eps={self.eps!r},sign={'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Exponential(Potential):
    """``c e^{a t}``."""

    a: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0):
            raise DomainError("Exponential requires a > 0 and c > 0")

    def __call__(self, t):
        return self.c * _exp(self.a * t)

    def sample(self, ts):
        return self.c * np.exp(self.a * np.asarray(ts, dtype=float))

    def derivative(self, t):
        return self.a * self.c * _exp(self.a * t)

    @property
    def spec(self):
        return f"exp:a={self.a!r},c={self.c!r}"


@dataclass(frozen=True)
class SubExponential(Potential):
    """``c exp(t^{1-beta})`` on ``t >= 0``, i.e. ``W(t) = e^{t eps(t)}`` with ``eps(t) = t^{-beta}``."""

    beta: float = 0.5
    c: float = 1.0
    domain_start = 0.0

    def __post_init__(self):
        if not (0 < self.beta < 1 and self.c > 0):
            raise DomainError("SubExponential requires 0 < beta < 1 and c > 0")

    def __call__(self, t):
        self._check_domain(t)
        return self.c * _exp(t ** (1.0 - self.beta))

    def sample(self, ts):
        ts = np.asarray(ts, dtype=float)
        self._check_domain(ts)
        return self.c * np.exp(ts ** (1.0 - self.beta))

    def derivative(self, t):
        self._check_domain(t)
        if t == 0:
            return math.inf
        return self.c * (1.0 - self.beta) * t ** (-self.beta) * _exp(t ** (1.0 - self.beta))

    @property
    def monotone_from(self):
        return 0.0

    @property
    def spec(self):
        return f"subexp:beta={self.beta!r},c={self.c!r}"


@dataclass(frozen=True)
class SuperExponential(Potential):
    """``c exp(t^{1+beta})`` on ``t >= 0``."""

    beta: float = 0.5
    c: float = 1.0
    domain_start = 0.0

    def __post_init__(self):
        if not (self.beta > 0 and self.c > 0):
            raise DomainError("SuperExponential requires beta > 0 and c > 0")

    def __call__(self, t):
        self._check_domain(t)
        return self.c * _exp(t ** (1.0 + self.beta))

    def sample(self, ts):
        ts = np.asarray(ts, dtype=float)
        self._check_domain(ts)
        with np.errstate(over="ignore"):
            return self.c * np.exp(ts ** (1.0 + self.beta))

    def derivative(self, t):
        self._check_domain(t)
        return self.c * (1.0 + self.beta) * t**self.beta * _exp(t ** (1.0 + self.beta))

    @property
    def monotone_from(self):
        return 0.0

    @property
    def spec(self):
        return f"superexp:beta={self.beta!r},c={self.c!r}"


@dataclass(frozen=True)
class Linear(Potential):
    """``V(t) = t``; Dirichlet eigenvalues on ``[0, inf)`` are the negated Airy zeros."""

    def __call__(self, t):
        return float(t)

    def sample(self, ts):
        return np.asarray(ts, dtype=float).copy()

    def derivative(self, t):
        return 1.0

    @property
    def spec(self):
        return "linear"


@dataclass(frozen=True)
class Tabulated(Potential):
    """Potential given at knots, interpolated linearly in ``(t, log V)``.

    Past the last knot ``log V`` is continued with the slope of the final
    segment.  Values must be positive; ``t`` must be strictly increasing.
    """

    knots: Tuple[Tuple[float, float], ...]
    source: str = ""

    def __post_init__(self):
        knots = tuple((float(t), float(v)) for t, v in self.knots)
        if len(knots) < 2:
            raise DomainError("Tabulated needs at least two knots")
        ts = np.array([k[0] for k in knots])
        vs = np.array([k[1] for k in knots])
        if np.any(np.diff(ts) <= 0):
            raise DomainError("Tabulated knots must be strictly increasing in t")
        if np.any(vs <= 0):
            raise DomainError("Tabulated values must be positive (log interpolation)")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "_t", ts)
        object.__setattr__(self, "_logv", np.log(vs))
        object.__setattr__(self, "_slope", np.diff(np.log(vs)) / np.diff(ts))

    @classmethod
    def from_file(cls, path) -> "Tabulated":
        path = Path(path)
        knots = []
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise ParseError(f"{path}:{lineno}: expected two columns 't V'")
                try:
                    knots.append((float(parts[0]), float(parts[1])))
                except ValueError as exc:
                    raise ParseError(f"{path}:{lineno}: {exc}") from None
        try:
            return cls(tuple(knots), source=str(path))
        except DomainError as exc:
            raise ParseError(f"{path}: {exc}") from None

    @property
    def domain_start(self):
        return self._t[0]

    def _segment(self, t):
        if t < self._t[0]:
            raise DomainError(f"t={t} precedes the first knot {self._t[0]}")
        i = bisect.bisect_right(self._t, t) - 1
        return min(i, len(self._slope) - 1)

    def __call__(self, t):
        i = self._segment(t)
        return _exp(self._logv[i] + self._slope[i] * (t - self._t[i]))

    def sample(self, ts):
        ts = np.asarray(ts, dtype=float)
        self._check_domain(ts)
        i = np.clip(np.searchsorted(self._t, ts, side="right") - 1, 0, len(self._slope) - 1)
        return np.exp(self._logv[i] + self._slope[i] * (ts - self._t[i]))

    def derivative(self, t):
        i = self._segment(t)
        return self._slope[i] * self(t)

    @property
    def monotone_from(self):
        if self._slope[-1] <= 0:
            return math.inf
        i = len(self._slope) - 1
        while i > 0 and self._slope[i - 1] > 0:
            i -= 1
        return float(self._t[i])

    def lower_bound(self, x0):
        inside = np.exp(self._logv[self._t >= x0])
        cands = [self(x0)] + list(inside)
        if self._slope[-1] < 0:
            return 0.0
        return float(min(cands))

    def crossings(self, T, lo, hi) -> int:
        """Number of times the piecewise curve crosses level ``T`` on ``[lo, hi]``."""
        grid = [lo] + [t for t in self._t if lo < t < hi] + [hi]
        signs = [self(t) > T for t in grid]
        return sum(a != b for a, b in zip(signs, signs[1:]))

    @property
    def spec(self):
        return f"table:{self.source}" if self.source else "table:<inline>"


def evaluate(p: Potential, t: float) -> float:
    """``V(t)``; raises :class:`DomainError` outside the domain."""
    return p(t)


def inverse(
    p: Potential,
    T: float,
    hint_lo: float,
    hint_hi: float,
    rtol: float = 1e-13,
    max_iter: int = 200,
) -> float:
    """Solve ``V(t) = T`` for ``t`` in ``[hint_lo, hint_hi]``.

    Safeguarded Newton iteration: each step is a Newton step when the
    closed-form derivative exists and the step stays inside the current
    bracket, and a bisection step otherwise.

    Raises
    ------
    InversionError
        ``V - T`` does not change sign on the bracket, or the iteration
        failed to reach ``|V(t) - T| <= 1e-10 |T|``.
    AmbiguityError
        A tabulated potential crosses ``T`` more than once in the bracket.
    """
    lo, hi = float(hint_lo), float(hint_hi)
    flo, fhi = p(lo) - T, p(hi) - T
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if not (flo < 0 < fhi):
        raise InversionError(
            f"{p.spec}: no upward crossing of T={T!r} on [{lo!r}, {hi!r}] "
            f"(V-T = {flo!r}, {fhi!r})"
        )
    if isinstance(p, Tabulated) and p.crossings(T, lo, hi) > 1:
        raise AmbiguityError(f"{p.spec}: T={T!r} is crossed more than once on [{lo!r}, {hi!r}]")

    scale = max(abs(T), 1e-300)
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f = p(x) - T
        if abs(f) <= rtol * scale:
            return x
        if f < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= 4 * np.finfo(float).eps * max(abs(lo), abs(hi), 1.0):
            break
        d = p.derivative(x)
        step_ok = False
        if d is not None and math.isfinite(d) and d > 0:
            xn = x - f / d
            # only accept Newton if it lands inside and beats bisection halving
            if lo < xn < hi and abs(xn - x) < 0.5 * (hi - lo):
                x = xn
                step_ok = True
        if not step_ok:
            x = 0.5 * (lo + hi)
    if abs(p(x) - T) <= 1e-10 * scale:
        return x
    raise InversionError(f"{p.spec}: inversion of T={T!r} did not converge (x={x!r})")


def turning_point(p: Potential, T: float, x0: float) -> Optional[float]:
    """Largest ``t >= x0`` with ``V(t) = T``, or ``None`` if ``V >= T`` past ``x0``.

    Only the eventually increasing branch is searched; on it ``V^{-1}(T)``
    is unique.
    """
    m = max(x0, p.monotone_from, p.domain_start)
    if math.isinf(m):
        raise InversionError(f"{p.spec} is not eventually increasing")
    if p(m) >= T:
        return None
    width = 1.0
    hi = m + width
    while p(hi) <= T:
        width *= 2.0
        if width > 1e6:
            raise InversionError(f"{p.spec} stays below T={T!r} on [{m}, {m + width}]")
        hi = m + width
    return inverse(p, T, m, hi)


# -- spec strings -------------------------------------------------------------

_FAMILIES = {
    "morse": (Morse, {"k": float}),
    "bmorse": (BoundedPerturbedMorse, {"c": float}),
    "pmorse": (PerturbedMorse, {"eps": float, "sign": None}),
    "exp": (Exponential, {"a": float, "c": float}),
    "subexp": (SubExponential, {"beta": float, "c": float}),
    "superexp": (SuperExponential, {"beta": float, "c": float}),
    "linear": (Linear, {}),
}


def _parse_sign(s: str) -> int:
    s = s.strip()
    if s in ("+", "+1", "1"):
        return 1
    if s in ("-", "-1"):
        return -1
    raise ParseError(f"sign must be '+' or '-', got {s!r}")


def parse_potential(spec: str) -> Potential:
    """Build a potential from a spec string.

    Accepted forms: ``morse:k=<r>``, ``bmorse:c=<r>``,
    ``pmorse:eps=<r>,sign=<+|->``, ``exp:a=<r>,c=<r>``,
    ``subexp:beta=<r>,c=<r>``, ``superexp:beta=<r>,c=<r>``, ``linear`` and
    ``table:<path>`` (two columns ``t V``, increasing ``t``).
    """
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if name == "table":
        if not rest:
            raise ParseError("table: needs a file path")
        return Tabulated.from_file(rest)
    if name not in _FAMILIES:
        raise ParseError(f"unknown potential family {name!r} in {spec!r}")
    cls, keys = _FAMILIES[name]
    kwargs = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq or key not in keys:
            raise ParseError(f"bad parameter {item!r} for {name}; expected {sorted(keys)}")
        conv = keys[key] or _parse_sign
        try:
            kwargs[key] = conv(val)
        except ValueError as exc:
            raise ParseError(f"bad value for {key} in {spec!r}: {exc}") from None
    if name == "pmorse" and "eps" not in kwargs:
        raise ParseError("pmorse requires eps")
    try:
        return cls(**kwargs)
    except DomainError as exc:
        raise ParseError(f"{spec!r}: {exc}") from None


def tabulate(p: Potential, ts: Sequence[float]) -> Tabulated:
    """Freeze ``p`` onto knots ``ts``; handy for testing the tabulated path."""
    return Tabulated(tuple((float(t), float(p(t))) for t in ts))
