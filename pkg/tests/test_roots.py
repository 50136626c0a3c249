import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from absppt.roots import RootSelectionFailure, nth_root, real_roots, residual


def test_simple_cubic():
    assert real_roots([1, -6, 11, -6]) == pytest.approx([1, 2, 3], abs=1e-14)
    assert nth_root([1, -6, 11, -6], 2) == pytest.approx(2, abs=1e-14)


def test_missing_root():
    with pytest.raises(RootSelectionFailure):
        nth_root([1, 0, 1, 0], 2)  # x^3 + x has one real root


def test_double_root():
    r = real_roots([1, -3, 0, 4])  # (x-2)^2 (x+1)
    assert r[0] == pytest.approx(-1, abs=1e-12)
    assert r[-1] == pytest.approx(2, abs=1e-7)


def test_y_constant_matches_sympy():
    y = sp.Symbol("y")
    exact = sorted(sp.real_roots(481 * y**3 - 37 * y**2 - 17 * y + 1))
    assert nth_root([481, -37, -17, 1], 2) == pytest.approx(float(exact[1]), abs=1e-16)


def test_quadratic_and_linear():
    assert real_roots([1, 0, -4]) == pytest.approx([-2, 2])
    assert real_roots([2, -1]) == [0.5]
    assert real_roots([0, 0, 3]) == []


@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.floats(0.5, 3))
def test_against_companion(rs, lead):
    rs = sorted(rs)
    if min(np.diff(rs)) < 1e-3:
        return
    coeffs = lead * np.poly(rs)
    got = real_roots(coeffs)
    companion = np.sort(np.roots(coeffs).real)
    assert len(got) == 3
    assert got == pytest.approx(list(companion), abs=1e-8)
    assert max(residual(coeffs, x) for x in got) < 1e-13


def test_high_degree_falls_back():
    coeffs = np.poly([1, 2, 3, 4, 5])
    assert real_roots(coeffs) == pytest.approx([1, 2, 3, 4, 5], abs=1e-8)
