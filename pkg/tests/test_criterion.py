import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from absppt.criterion import Active, Kind, build_L1, build_L2, classify, corner_inequality, det3, min_eigenvalue
from absppt.families import special_point, zeta
from absppt.spectrum import make_spectrum, uniform


def test_L1_zeta1():
    expected = np.array([[2, -2, 0], [-2, 2, 0], [0, 0, 2]]) / 11
    assert np.allclose(build_L1(zeta(1).lam), expected, atol=1e-15)


def test_L2_nu621():
    s = special_point("nu621_3").spectrum
    expected = np.array([[2, -4, -4], [-4, 16, 0], [-4, 0, 16]]) / 57
    assert np.allclose(build_L2(s.lam), expected, atol=1e-15)


def test_uniform_is_interior():
    v = classify(uniform())
    # L = (2/9) I, so l = 8/729
    assert v.kind is Kind.INTERIOR and v.active is Active.NONE
    assert v.l1 == pytest.approx(8 / 729, abs=1e-15)
    assert v.l2 == pytest.approx(8 / 729, abs=1e-15)


def test_spike_not_ap():
    v = classify(make_spectrum([0.5] + [0.0625] * 8))
    assert v.kind is Kind.NOT_AP
    assert min(v.min_eig_L1, v.min_eig_L2) < 0


def test_zeta6_has_only_L1_active():
    v = classify(zeta(6))
    assert v.kind is Kind.BOUNDARY and v.active is Active.L1


@pytest.mark.parametrize("i", range(1, 9))
def test_zeta_boundary(i):
    assert classify(zeta(i)).kind is Kind.BOUNDARY


def test_det3_matches_numpy(rng):
    for _ in range(50):
        m = rng.normal(size=(3, 3))
        assert det3(m) == pytest.approx(np.linalg.det(m), rel=1e-12, abs=1e-14)


def test_corner_is_L1_minor():
    lam = np.linspace(0.2, 0.02, 9)
    lam /= lam.sum()
    L = build_L1(lam)
    assert corner_inequality(lam) == pytest.approx(L[0, 0] * L[1, 1] - L[0, 1] ** 2, abs=1e-16)


@given(st.lists(st.floats(0.0, 1.0), min_size=9, max_size=9).filter(lambda v: sum(v) > 0.1))
def test_verdict_agrees_with_psd(v):
    s = make_spectrum(np.array(v) / np.sum(v), renormalize=True)
    out = classify(s)
    psd = min_eigenvalue(build_L1(s.lam)) >= -1e-10 and min_eigenvalue(build_L2(s.lam)) >= -1e-10
    assert out.is_ap == psd
    # depends only on the multiset of eigenvalues
    perm = np.random.default_rng(0).permutation(s.lam)
    assert classify(make_spectrum(perm)).kind is out.kind


@given(st.floats(0.0, 1.0), st.integers(1, 8))
def test_mixture_with_uniform_is_ap(t, i):
    s = make_spectrum((1 - t) * zeta(i).lam + t / 9, renormalize=True)
    assert classify(s).is_ap
    if t > 1e-3:
        assert classify(s).kind is Kind.INTERIOR


def test_verdict_dict_is_plain():
    d = classify(zeta(1)).to_dict()
    assert d["kind"] == "Boundary" and d["active"] == "Both"
    assert isinstance(d["l1"], float)
