"""T-grid sweeps, experiment verdicts and report files.

Each experiment pairs one potential with the Morse target model
``lagarias(x0)`` and applies a decision rule to the sweep:

=====================  ==================================================
``lagarias_O1``        residual slope within +/-0.07 of 0, top-two-decade
                       residual range <= 3
``sandwich_converse``  same rule, for ``e^{2t}/4 + c e^t``
``perturbation_growth`` growth exponent of ``|residual| / sqrt(log T)`` in
                       ``[eps/4 - 0.03, eps/4 + 0.10]``
``subexp_divergence``  ``N / (sqrt(T) log T)`` strictly increasing over
                       decades, last/first >= 3, occupancy >= 0.9
``exp_order``          ``N / (sqrt(T) log T)`` in ``[1/(pi a) - 0.05, 1/a]``
                       for ``T >= 1e4``
``superexp_vanishing`` same ratio strictly decreasing, last/first <= 1/3
=====================  ==================================================
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .asymptotics import AsymptoticModel, loglog_slope, model_value, occupancy, residuals
from .errors import CostGuardError, NumericalError, ParseError
from .oscillation import CountOptions, count_below
from .potentials import (
    BoundedPerturbedMorse,
    DomainSpec,
    Exponential,
    Morse,
    PerturbedMorse,
    Potential,
    SubExponential,
    parse_potential,
)
from .weyl import weyl_count

__all__ = [
    "EXPERIMENTS",
    "ExperimentSpec",
    "SweepRecord",
    "Verdict",
    "log_grid",
    "parse_grid",
    "run_sweep",
    "verdict",
    "sandwich_counts",
    "sandwich_ordered",
    "zeta_comparison",
    "records_to_csv",
    "write_report",
]

EXPERIMENTS = (
    "lagarias_O1",
    "sandwich_converse",
    "perturbation_growth",
    "subexp_divergence",
    "exp_order",
    "superexp_vanishing",
)

DEFAULT_POTENTIALS = {
    "lagarias_O1": "morse:k=1",
    "sandwich_converse": "bmorse:c=1",
    "perturbation_growth": "pmorse:eps=0.5,sign=+",
    "subexp_divergence": "subexp:beta=0.5,c=1",
    "exp_order": "exp:a=1,c=1",
    "superexp_vanishing": "superexp:beta=0.5,c=1",
}

CSV_COLUMNS = ("T", "n_osc", "n_weyl", "model", "residual_osc", "residual_weyl")

# decision thresholds
O1_SLOPE_TOL = 0.07
O1_RANGE_MAX = 3.0
GROWTH_BELOW = 0.03
GROWTH_ABOVE = 0.10
DIVERGENCE_FACTOR = 3.0
OCCUPANCY_DELTA = 0.9
OCCUPANCY_R = (50.0, 100.0, 200.0)
EXP_BAND_T_MIN = 1e4
EXP_BAND_SLACK = 0.05


def log_grid(lo: float, hi: float, per_decade: int) -> Tuple[float, ...]:
    """Log-spaced grid from ``lo`` to ``hi`` with ``per_decade`` intervals per decade.

    Points are ``10**(log10(lo) + i/per_decade)``; decade endpoints are hit
    exactly when ``lo`` is a power of ten.
    """
    if not (0 < lo <= hi) or per_decade < 1:
        raise ValueError("need 0 < lo <= hi and per_decade >= 1")
    a, b = math.log10(lo), math.log10(hi)
    n = int(round((b - a) * per_decade))
    return tuple(float(10 ** (a + i / per_decade)) if i else float(lo) for i in range(n + 1))


def parse_grid(text: str) -> Tuple[float, ...]:
    """``log:<lo>:<hi>:<per-decade>``, e.g. ``log:1e2:1e5:5``."""
    parts = text.split(":")
    if len(parts) != 4 or parts[0] != "log":
        raise ParseError(f"grid must look like log:<lo>:<hi>:<per-decade>, got {text!r}")
    try:
        lo, hi, per = float(parts[1]), float(parts[2]), int(parts[3])
        return log_grid(lo, hi, per)
    except ValueError as exc:
        raise ParseError(f"bad grid {text!r}: {exc}") from None


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    grid: Tuple[float, ...] = ()
    potential: Optional[Potential] = None
    x0: float = 0.0
    oscillation: bool = True

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.name!r}; expected one of {EXPERIMENTS}")
        grid = tuple(float(T) for T in self.grid)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if len(grid) > 1:
            decades = math.log10(grid[-1] / grid[0])
            if len(grid) - 1 < 5 * decades - 1e-9:
                raise ValueError("grid needs at least 5 points per decade")
        object.__setattr__(self, "grid", grid)
        if self.potential is None:
            object.__setattr__(self, "potential", parse_potential(DEFAULT_POTENTIALS[self.name]))

    @property
    def model(self) -> AsymptoticModel:
        return AsymptoticModel.lagarias(self.x0)


@dataclass(frozen=True)
class SweepRecord:
    T: float
    n_osc: Optional[int]
    n_weyl: float
    model: float
    residual_osc: Optional[float]
    residual_weyl: float
    error: Optional[str] = None


def _record(T, p, x0, m, osc, opts) -> SweepRecord:
    errors = []
    try:
        n_weyl = weyl_count(p, T, x0).value
    except NumericalError as exc:
        n_weyl = math.nan
        errors.append(f"weyl: {exc}")
    model = model_value(m, T)
    n_osc = None
    if osc:
        try:
            n_osc = count_below(p, T, DomainSpec(x0), opts).count
        except CostGuardError:
            pass
        except NumericalError as exc:
            errors.append(f"osc: {exc}")
    return SweepRecord(
        T=T,
        n_osc=n_osc,
        n_weyl=n_weyl,
        model=model,
        residual_osc=None if n_osc is None else n_osc - model,
        residual_weyl=n_weyl - model,
        error="; ".join(errors) or None,
    )


def _record_args(args):
    return _record(*args)


def run_sweep(
    spec: ExperimentSpec,
    opts: CountOptions = CountOptions(),
    workers: int = 1,
) -> List[SweepRecord]:
    """One record per grid point, sorted by ``T``.

    Errors in a single record are stored in ``record.error`` instead of
    aborting the sweep.  Oscillation counts above the cost guard are left
    empty.
    """
    jobs = [(T, spec.potential, spec.x0, spec.model, spec.oscillation, opts) for T in spec.grid]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_record_args, jobs))
    else:
        records = [_record(*job) for job in jobs]
    return sorted(records, key=lambda r: r.T)


@dataclass
class Verdict:
    experiment: str
    status: str  # "pass", "fail" or "inconclusive"
    slope: Optional[float] = None
    slope_ci: Optional[float] = None
    max_residual: Optional[float] = None
    grid: Tuple[float, ...] = ()
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> Optional[bool]:
        return None if self.status == "inconclusive" else self.status == "pass"

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment,
            "pass": self.passed,
            "status": self.status,
            "slope": self.slope,
            "slope_ci": self.slope_ci,
            "max_residual": self.max_residual,
            "grid": list(self.grid),
            "details": self.details,
        }


def _decade_points(records):
    """Records sitting on exact powers of ten."""
    out = []
    for r in records:
        e = math.log10(r.T)
        if abs(e - round(e)) < 1e-9:
            out.append(r)
    return out


def _ratio(r):
    return r.n_weyl / (math.sqrt(r.T) * math.log(r.T))


def _strictly(seq, increasing=True):
    pairs = zip(seq, seq[1:])
    return all((b > a) if increasing else (b < a) for a, b in pairs)


def verdict(records: Sequence[SweepRecord], spec: ExperimentSpec) -> Verdict:
    """Apply the experiment's decision rule to a sweep."""
    recs = sorted((r for r in records if math.isfinite(r.n_weyl)), key=lambda r: r.T)
    grid = tuple(r.T for r in recs)
    v = Verdict(spec.name, "inconclusive", grid=grid)
    if len(recs) < 5 or math.log10(recs[-1].T / recs[0].T) < 2 - 1e-9:
        v.details["reason"] = "need at least 5 records spanning 2 decades"
        return v
    v.max_residual = float(max(abs(r.residual_weyl) for r in recs))
    rule = _RULES[spec.name]
    return rule(recs, spec, v)


def _rule_o1(recs, spec, v):
    series = residuals([(r.T, r.n_weyl) for r in recs], spec.model)
    v.slope, v.slope_ci = series.slope, series.slope_ci
    top = [r.residual_weyl for r in recs if r.T >= recs[-1].T / 100 * (1 - 1e-12)]
    rng = float(max(top) - min(top))
    v.details.update(residual_range_top2=rng, degenerate=series.degenerate)
    ok = abs(series.slope) <= O1_SLOPE_TOL and rng <= O1_RANGE_MAX
    v.status = "pass" if ok else "fail"
    return v


def _rule_growth(recs, spec, v):
    p = spec.potential
    if not isinstance(p, PerturbedMorse):
        raise ValueError("perturbation_growth needs a PerturbedMorse potential")
    Ts = np.array([r.T for r in recs])
    y = np.array([abs(r.residual_weyl) for r in recs]) / np.sqrt(np.log(Ts))
    v.slope, v.slope_ci = loglog_slope(Ts, y)
    lo, hi = p.eps / 4 - GROWTH_BELOW, p.eps / 4 + GROWTH_ABOVE
    v.details.update(target=p.eps / 4, window=[lo, hi])
    v.status = "pass" if lo <= v.slope <= hi else "fail"
    return v


def _ratio_rule(recs, spec, v, increasing):
    pts = _decade_points(recs)
    if len(pts) < 3:
        pts = recs
    ratios = [_ratio(r) for r in pts]
    v.slope, v.slope_ci = loglog_slope([r.T for r in recs], [_ratio(r) for r in recs])
    v.details.update(decade_T=[r.T for r in pts], ratios=ratios, last_over_first=ratios[-1] / ratios[0])
    return ratios


def _rule_subexp(recs, spec, v):
    ratios = _ratio_rule(recs, spec, v, True)
    ok = _strictly(ratios, True) and ratios[-1] / ratios[0] >= DIVERGENCE_FACTOR
    p = spec.potential
    if isinstance(p, SubExponential):
        env = SubExponential(p.beta, 2.0 * p.c)
        occ = [occupancy(p, env, spec.x0, R) for R in OCCUPANCY_R if R > spec.x0]
        v.details["occupancy"] = occ
        ok = ok and min(occ) >= OCCUPANCY_DELTA
    v.status = "pass" if ok else "fail"
    return v


def _rule_exp(recs, spec, v):
    p = spec.potential
    if not isinstance(p, Exponential):
        raise ValueError("exp_order needs an Exponential potential")
    _ratio_rule(recs, spec, v, True)
    band = (1.0 / (math.pi * p.a) - EXP_BAND_SLACK, 1.0 / p.a)
    tail = [_ratio(r) for r in recs if r.T >= EXP_BAND_T_MIN]
    v.details.update(band=list(band), ratios_T_ge_1e4=tail)
    if not tail:
        v.status = "inconclusive"
        v.details["reason"] = "no records with T >= 1e4"
        return v
    v.status = "pass" if all(band[0] <= x <= band[1] for x in tail) else "fail"
    return v


def _rule_superexp(recs, spec, v):
    ratios = _ratio_rule(recs, spec, v, False)
    ok = _strictly(ratios, False) and ratios[-1] / ratios[0] <= 1.0 / DIVERGENCE_FACTOR
    v.status = "pass" if ok else "fail"
    return v


_RULES = {
    "lagarias_O1": _rule_o1,
    "sandwich_converse": _rule_o1,
    "perturbation_growth": _rule_growth,
    "subexp_divergence": _rule_subexp,
    "exp_order": _rule_exp,
    "superexp_vanishing": _rule_superexp,
}


def sandwich_counts(
    C: float,
    grid: Sequence[float],
    x0: float = 0.0,
    opts: CountOptions = CountOptions(),
    oscillation: bool = True,
) -> List[Tuple[float, float, float, float]]:
    """``(T, N(Q0 + C e^t), N(Q0), N(Q0 - C e^t))`` on a grid.

    Oscillation counts are used where available, Weyl values otherwise.
    """
    pots = (BoundedPerturbedMorse(abs(C)), Morse(0.0), BoundedPerturbedMorse(-abs(C)))
    rows = []
    for T in grid:
        row = [T]
        for p in pots:
            n = None
            if oscillation:
                try:
                    n = count_below(p, T, DomainSpec(x0), opts).count
                except CostGuardError:
                    n = None
            row.append(n if n is not None else weyl_count(p, T, x0).value)
        rows.append(tuple(row))
    return rows


def sandwich_ordered(rows) -> bool:
    """``N(+C) <= N(Q0) <= N(-C) + 1`` on every row."""
    return all(hi <= mid <= lo + 1 for _, hi, mid, lo in rows)


def zeta_comparison(z, Ts: Sequence[float], m: AsymptoticModel):
    """Rows ``(T, Z(T), model, deviation, band)`` with ``Z`` counting zeros of both signs."""
    from .zeta import count_zeros_magnitude_below

    rows = []
    for T in Ts:
        count = count_zeros_magnitude_below(z, T)
        model = model_value(m, T)
        rows.append((T, count, model, count - model, 3.0 + math.log(T)))
    return rows


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in sorted(records, key=lambda r: r.T):
        w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def write_report(records, v: Verdict, out_dir, stem: Optional[str] = None) -> Tuple[Path, Path]:
    """Write ``<stem>.csv`` and ``<stem>.verdict.json`` under ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = stem or v.experiment
    csv_path = out / f"{stem}.csv"
    json_path = out / f"{stem}.verdict.json"
    csv_path.write_text(records_to_csv(records))
    json_path.write_text(json.dumps(v.to_json(), indent=2, default=_json_default) + "\n")
    return csv_path, json_path


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))
