import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from morseweyl.asymptotics import AsymptoticModel, model_value
from morseweyl.errors import ParseError
from morseweyl.zeta import (
    ZeroTable,
    count_zeros_below,
    count_zeros_magnitude_below,
    load_zeros,
    squared_spectrum_count,
)

# first ten ordinates, 20 significant digits
PUBLISHED = [
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159727,
    49.773832477672302182,
]


def test_fixture_shape(zeros):
    assert len(zeros) == 100
    assert zeros.standard
    assert "source" in zeros.source
    assert zeros.ordinates[:10] == pytest.approx(PUBLISHED, rel=1e-15)
    assert zeros.ordinates[-1] == pytest.approx(236.524229665816206, rel=1e-15)


def test_load_small_file(tmp_path):
    f = tmp_path / "z.txt"
    f.write_text("# source: hand typed\n14.134725\n21.022040\n25.010858\n")
    z = load_zeros(f)
    assert len(z) == 3
    assert z.source == "source: hand typed"


def test_empty_file(tmp_path):
    f = tmp_path / "z.txt"
    f.write_text("")
    z = load_zeros(f)
    assert z.empty
    assert not z.standard
    assert count_zeros_below(z, 100.0) == 0


def test_non_monotone_file(tmp_path):
    f = tmp_path / "z.txt"
    f.write_text("21.0\n14.1\n")
    with pytest.raises(ParseError, match=":2:"):
        load_zeros(f)


def test_non_numeric_file(tmp_path):
    f = tmp_path / "z.txt"
    f.write_text("# header\n14.1\nabc\n")
    with pytest.raises(ParseError, match=":3:"):
        load_zeros(f)


def test_table_validation():
    with pytest.raises(ValueError):
        ZeroTable((2.0, 1.0))


def test_count_examples(zeros):
    assert count_zeros_below(zeros, 14.0) == 0
    assert count_zeros_below(zeros, 15.0) == 1
    assert count_zeros_below(zeros, 50.0) == 10
    # strict: an ordinate is not below itself
    assert count_zeros_below(zeros, zeros.ordinates[4]) == 4
    assert count_zeros_magnitude_below(zeros, 50.0) == 20


def test_squared_spectrum(zeros):
    assert squared_spectrum_count(zeros, 0.0) == 0
    assert squared_spectrum_count(zeros, 199.0) == 0
    assert squared_spectrum_count(zeros, 200.0) == 1
    g2 = zeros.ordinates[0] ** 2
    assert g2 == pytest.approx(199.79, abs=0.01)
    assert squared_spectrum_count(zeros, g2 * (1 - 1e-12)) == 0
    assert squared_spectrum_count(zeros, g2 * (1 + 1e-12)) == 1


@given(T=st.floats(0.0, 6e4))
def test_squared_spectrum_identity(zeros, T):
    assert squared_spectrum_count(zeros, T) == count_zeros_below(zeros, math.sqrt(T))


def test_step_function_unit_jumps(zeros):
    for n, g in enumerate(zeros.ordinates):
        assert count_zeros_below(zeros, g) == n
        assert count_zeros_below(zeros, math.nextafter(g, math.inf)) == n + 1


@given(a=st.floats(0.0, 300.0), b=st.floats(0.0, 300.0))
def test_nondecreasing(zeros, a, b):
    lo, hi = sorted((a, b))
    assert count_zeros_below(zeros, lo) <= count_zeros_below(zeros, hi)


def test_classical_band_on_fixture(zeros):
    m = AsymptoticModel.zeta_classical()
    T = 2.0
    while T < zeros.ordinates[-1]:
        dev = count_zeros_magnitude_below(zeros, T) - model_value(m, T)
        assert abs(dev) <= 3 + math.log(T), T
        T += 0.25
