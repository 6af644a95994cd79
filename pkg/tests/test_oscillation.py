import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp
from scipy.special import ai_zeros

from morseweyl.errors import CostGuardError, OrderingError, TruncationError
from morseweyl.oscillation import CountOptions, comparison_check, count_below, eigenvalue
from morseweyl.potentials import (
    BoundedPerturbedMorse,
    DomainSpec,
    Exponential,
    Linear,
    Morse,
    PerturbedMorse,
    Tabulated,
)
from oracles import dirichlet_fd_eigenvalues

AIRY = -ai_zeros(3)[0]


def test_linear_count_against_dense_shooting():
    fd = dirichlet_fd_eigenvalues(lambda t: t, 0.0, 25.0, 4)
    assert int(np.sum(fd < 5)) == 2
    assert count_below(Linear(), 5.0, DomainSpec(0.0)).count == 2


def test_morse_below_floor_has_no_eigenvalues():
    res = count_below(Morse(0), 0.25, DomainSpec(0.0))
    assert res.count == 0
    assert res.final_phase < math.pi


def test_morse_large_T_matches_weyl_band():
    assert count_below(Morse(0), 1e4).count in {158, 159, 160}


@pytest.mark.parametrize("p, T", [(Linear(), 5.0), (Morse(0), 1e3), (Morse(1), 300.0), (Exponential(1, 1), 50.0)])
def test_count_result_invariants(p, T):
    opts = CountOptions()
    res = count_below(p, T, DomainSpec(0.0), opts)
    assert res.count == math.floor(res.final_phase / math.pi)
    assert 0 <= res.tail_bound <= opts.tail_phase_budget
    assert p(res.t_stop) > T


def test_final_phase_against_scipy_dop853():
    p, T = Morse(0), 1e3
    res = count_below(p, T)

    def rhs(t, y):
        s, c = math.sin(y[0]), math.cos(y[0])
        return [c * c + (T - p(t)) * s * s]

    ref = solve_ivp(rhs, (0.0, res.t_stop), [0.0], method="DOP853", rtol=1e-11, atol=1e-12)
    assert res.final_phase == pytest.approx(ref.y[0, -1], abs=1e-4)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_airy_eigenvalues(n):
    lam = eigenvalue(Linear(), n)
    assert lam == pytest.approx(AIRY[n], abs=1e-4)
    delta = 1e-8 * max(1.0, lam)
    assert count_below(Linear(), lam - 10 * delta).count == n
    assert count_below(Linear(), lam + 10 * delta).count >= n + 1


def test_morse_ground_state_above_floor():
    assert eigenvalue(Morse(0), 0) > 0.25


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        eigenvalue(Linear(), -1)


def test_comparison_examples():
    n1, n2 = comparison_check(Morse(0), PerturbedMorse(0.5, 1), 1e4)
    assert n1 >= n2
    a, b = comparison_check(Morse(1), Morse(1), 777.0)
    assert a == b
    n1, n2 = comparison_check(BoundedPerturbedMorse(-1), BoundedPerturbedMorse(1), 1e3)
    assert n1 >= n2


def test_comparison_rejects_unordered_pair():
    with pytest.raises(OrderingError):
        comparison_check(Morse(1), Morse(0), 100.0)


def test_non_confining_potential_truncates():
    p = Tabulated(((0.0, 5.0), (1.0, 4.0), (2.0, 3.0)))
    with pytest.raises(TruncationError) as info:
        count_below(p, 10.0, DomainSpec(0.0), CountOptions(max_span=20.0))
    assert info.value.partial.count >= 0


def test_cost_guard():
    with pytest.raises(CostGuardError):
        count_below(Morse(0), 1e4, opts=CountOptions(max_count=50))
    assert count_below(Morse(0), 1e4, opts=CountOptions(max_count=None)).count == 159


def test_phase_crossings_never_reverse():
    """Counts reached by truncated runs grow with the span: multiples of pi are crossed upward only."""
    p, T = Morse(-3.0), 400.0
    full = count_below(p, T).count
    partial = []
    for span in np.linspace(0.5, 3.5, 13):
        try:
            partial.append(count_below(p, T, opts=CountOptions(max_span=span)).count)
        except TruncationError as exc:
            partial.append(exc.partial.count)
    assert partial == sorted(partial)
    assert partial[-1] <= full


CASES = [
    (Linear(), 5.0, 0.0),
    (Linear(), 12.0, 0.0),
    (Morse(0), 100.0, 0.0),
    (Morse(0), 1e3, 0.0),
    (Morse(1), 2000.0, -1.0),
    (PerturbedMorse(0.5, -1), 800.0, 0.0),
    (Exponential(1.0, 1.0), 300.0, 0.0),
]


@pytest.mark.parametrize("p, T, x0", CASES, ids=lambda v: getattr(v, "spec", str(v)))
def test_truncation_stability(p, T, x0):
    base = count_below(p, T, DomainSpec(x0))
    longer = count_below(p, T, DomainSpec(x0), CountOptions(tail_extension=2.0))
    assert longer.count == base.count
    assert longer.t_stop > base.t_stop


@pytest.mark.parametrize("p, T, x0", CASES, ids=lambda v: getattr(v, "spec", str(v)))
def test_tolerance_stability(p, T, x0):
    a = count_below(p, T, DomainSpec(x0), CountOptions(rel_tol=1e-8))
    b = count_below(p, T, DomainSpec(x0), CountOptions(rel_tol=5e-9))
    assert a.count == b.count


@given(T1=st.floats(1.0, 2000.0), T2=st.floats(1.0, 2000.0))
@settings(max_examples=25, deadline=None)
def test_monotone_in_T(T1, T2):
    lo, hi = sorted((T1, T2))
    assert count_below(Morse(0), lo).count <= count_below(Morse(0), hi).count


@given(a=st.floats(-2.0, 2.0), b=st.floats(-2.0, 2.0))
@settings(max_examples=25, deadline=None)
def test_monotone_in_x0(a, b):
    lo, hi = sorted((a, b))
    T = 1500.0
    assert count_below(Morse(1), T, DomainSpec(hi)).count <= count_below(Morse(1), T, DomainSpec(lo)).count
