import json
import math

import numpy as np
import pytest

from morseweyl.asymptotics import AsymptoticModel, model_value
from morseweyl.errors import ParseError
from morseweyl.harness import (
    CSV_COLUMNS,
    ExperimentSpec,
    SweepRecord,
    log_grid,
    parse_grid,
    records_to_csv,
    run_sweep,
    sandwich_counts,
    sandwich_ordered,
    verdict,
    write_report,
)
from morseweyl.oscillation import CountOptions
from morseweyl.potentials import Morse, Tabulated


def synthetic(grid, offset):
    m = AsymptoticModel.lagarias()
    out = []
    for T in grid:
        model = model_value(m, T)
        n = model + offset(T)
        out.append(SweepRecord(T, None, n, model, None, n - model))
    return out


def test_log_grid_hits_decades():
    g = log_grid(1e2, 1e5, 5)
    assert len(g) == 16
    assert g[0] == 100.0
    assert g[5] == pytest.approx(1e3, rel=1e-15)
    assert g[-1] == pytest.approx(1e5, rel=1e-15)


def test_parse_grid():
    assert parse_grid("log:1e2:1e4:5") == log_grid(1e2, 1e4, 5)
    for bad in ("lin:1:2:3", "log:1e2:1e4", "log:a:b:c", "log:1e4:1e2:5"):
        with pytest.raises(ParseError):
            parse_grid(bad)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec("nope")
    with pytest.raises(ValueError):
        ExperimentSpec("lagarias_O1", log_grid(1e2, 1e4, 2))
    with pytest.raises(ValueError):
        ExperimentSpec("lagarias_O1", (1e3, 1e2))
    spec = ExperimentSpec("lagarias_O1")
    assert spec.potential == Morse(1.0)


def test_empty_grid_gives_no_records():
    assert run_sweep(ExperimentSpec("lagarias_O1", ())) == []


def test_record_invariants():
    spec = ExperimentSpec("lagarias_O1", log_grid(1e2, 1e3, 5))
    for r in run_sweep(spec):
        assert r.residual_weyl == r.n_weyl - r.model
        assert r.residual_osc == r.n_osc - r.model
        assert abs(r.n_osc - r.n_weyl) <= 2
        assert r.error is None


def test_cost_guard_leaves_osc_empty():
    spec = ExperimentSpec("lagarias_O1", log_grid(1e2, 1e4, 5))
    recs = run_sweep(spec, CountOptions(max_count=50))
    assert recs[0].n_osc is not None
    assert recs[-1].n_osc is None and recs[-1].residual_osc is None
    line = records_to_csv(recs).splitlines()[-1]
    assert line.split(",")[1] == "" and line.split(",")[4] == ""


def test_errors_are_captured_per_record():
    # never reaches T = 1e4 within the span cap
    p = Tabulated(((0.0, 1.0), (1.0, 2.0), (2.0, 2.5)))
    spec = ExperimentSpec("lagarias_O1", log_grid(1e2, 1e4, 5), p)
    recs = run_sweep(spec, CountOptions(max_span=5.0))
    assert len(recs) == len(spec.grid)
    assert all(r.error for r in recs)


def test_sweep_reproducible_and_order_independent():
    spec = ExperimentSpec("lagarias_O1", log_grid(1e2, 1e3, 5))
    a = records_to_csv(run_sweep(spec))
    b = records_to_csv(run_sweep(spec))
    c = records_to_csv(run_sweep(spec, workers=2))
    assert a == b == c
    assert a.splitlines()[0] == ",".join(CSV_COLUMNS)
    shuffled = run_sweep(spec)[::-1]
    assert records_to_csv(shuffled) == a


def test_csv_round_trip():
    spec = ExperimentSpec("lagarias_O1", log_grid(1e2, 1e3, 5))
    recs = run_sweep(spec)
    rows = [line.split(",") for line in records_to_csv(recs).splitlines()[1:]]
    for r, row in zip(recs, rows):
        assert float(row[0]) == r.T
        assert float(row[2]) == r.n_weyl
        assert float(row[5]) == r.residual_weyl


GRID = log_grid(1e2, 1e6, 5)


def test_o1_verdict_on_constant_offset():
    spec = ExperimentSpec("lagarias_O1", GRID)
    v = verdict(synthetic(GRID, lambda T: 5.0), spec)
    assert v.status == "pass" and v.passed


def test_o1_verdict_on_sqrt_growth():
    spec = ExperimentSpec("lagarias_O1", GRID)
    v = verdict(synthetic(GRID, math.sqrt), spec)
    assert v.status == "fail"
    assert v.slope == pytest.approx(0.5, abs=0.05)


def test_o1_verdict_range_rule():
    # flat slope, but a residual swing of 4 over the top two decades
    spec = ExperimentSpec("lagarias_O1", GRID)
    v = verdict(synthetic(GRID, lambda T: 5.0 + 2.0 * math.sin(T)), spec)
    assert v.details["residual_range_top2"] > 3
    assert v.status == "fail"


def test_inconclusive():
    spec = ExperimentSpec("lagarias_O1", log_grid(1e2, 1e3, 5))
    v = verdict(synthetic(spec.grid, lambda T: 5.0), spec)
    assert v.status == "inconclusive"
    assert v.passed is None
    assert verdict([], spec).status == "inconclusive"


def test_growth_verdict_real_sweep():
    spec = ExperimentSpec("perturbation_growth", log_grid(1e3, 1e7, 5), oscillation=False)
    v = verdict(run_sweep(spec), spec)
    assert v.status == "pass"
    assert v.slope >= 0.10


def test_subexp_sweep_ratio_increases():
    spec = ExperimentSpec("subexp_divergence", GRID, oscillation=False)
    v = verdict(run_sweep(spec), spec)
    ratios = v.details["ratios"]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert v.status == "pass"


def test_write_report(tmp_path):
    spec = ExperimentSpec("lagarias_O1", GRID, oscillation=False)
    recs = run_sweep(spec)
    v = verdict(recs, spec)
    csv_path, json_path = write_report(recs, v, tmp_path / "out")
    data = json.loads(json_path.read_text())
    assert {"experiment", "pass", "slope", "slope_ci", "max_residual", "grid"} <= set(data)
    assert data["pass"] is True
    assert data["grid"] == list(GRID)
    assert csv_path.read_text() == records_to_csv(recs)


def test_sandwich_rows():
    rows = sandwich_counts(1.0, log_grid(1e2, 1e3, 5))
    assert sandwich_ordered(rows)
    for _, hi, mid, lo in rows:
        assert all(isinstance(n, int) for n in (hi, mid, lo))
    assert not sandwich_ordered([(1.0, 5, 3, 1)])


def test_zeta_rows(zeros):
    from morseweyl.harness import zeta_comparison

    rows = zeta_comparison(zeros, [50.0, 100.0], AsymptoticModel.zeta_classical())
    assert rows[0][1] == 20
    assert rows[0][4] == pytest.approx(3 + math.log(50.0))
    assert np.isclose(rows[1][3], rows[1][1] - rows[1][2])
