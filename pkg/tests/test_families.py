"""Family formulas checked against determinants computed symbolically from scratch."""

import math

import numpy as np
import pytest
import sympy as sp

from absppt import families as fam
from absppt.criterion import Active, Kind, classify
from absppt.roots import RootSelectionFailure
from absppt.spectrum import pattern

B, C = sp.symbols("b c")


def _sym_L(lam):
    x = [None] + list(lam)
    L1 = sp.Matrix([[2 * x[9], x[8] - x[1], x[6] - x[2]],
                    [x[8] - x[1], 2 * x[7], x[5] - x[3]],
                    [x[6] - x[2], x[5] - x[3], 2 * x[4]]])
    L2 = sp.Matrix([[2 * x[9], x[8] - x[1], x[7] - x[2]],
                    [x[8] - x[1], 2 * x[6], x[5] - x[3]],
                    [x[7] - x[2], x[5] - x[3], 2 * x[4]]])
    return L1, L2


def _sym_dets(mu):
    ma, mb, mc = mu
    a = (1 - mb * B - mc * C) / ma
    L1, L2 = _sym_L([a] * ma + [B] * mb + [C] * mc)
    return sp.expand(L1.det()), sp.expand(L2.det())


CUBICS = [f for f in fam.list_families() if f.kind == "cubic"]
CLOSED = [f for f in fam.list_families() if f.kind == "closed"]


@pytest.mark.parametrize("f", CUBICS, ids=lambda f: f.name)
def test_cubic_divides_active_determinant(f):
    l1, l2 = _sym_dets(f.mu)
    expr = sum(k * B ** (3 - i) for i, k in enumerate(f.cubic(C)))
    cubic = sp.Poly(sp.nsimplify(sp.expand(expr), rational=True), B)
    dets = {Active.L1: [l1], Active.L2: [l2], Active.BOTH: [l1, l2]}[f.active]
    assert any(sp.div(sp.Poly(d, B), cubic)[1].is_zero for d in dets)


@pytest.mark.parametrize("f", CLOSED, ids=lambda f: f.name)
def test_closed_form_is_a_root(f):
    l1, l2 = _sym_dets(f.mu)
    dets = {Active.L1: [l1], Active.L2: [l2], Active.BOTH: [l1, l2]}[f.active]
    for c in fam.sample_c(f, 3):
        b = f.b_of_c(c)
        vals = [abs(float(d.subs({B: sp.Float(b, 30), C: sp.Float(c, 30)}))) for d in dets]
        assert min(vals) < 1e-14


def test_count_and_names():
    fs = fam.list_families()
    assert len(fs) == 32
    assert len({f.name for f in fs}) == 32
    assert sum(f.kind == "point" for f in fs) == 2
    assert [f.name for f in fs if not f.extreme] == ["nu{1,5,3}"]


def test_selectors():
    assert len(fam.select_families("nu1")) == 6
    assert len(fam.select_families("nu{2,4,3}")) == 3
    assert len(fam.select_families("all")) == 31
    with pytest.raises(KeyError):
        fam.select_families("nu{9,0,0}")


@pytest.mark.parametrize("f", [f for f in fam.list_families() if f.kind != "point"], ids=lambda f: f.name)
def test_samples_are_boundary(f):
    for c in fam.sample_c(f, 5):
        s = fam.eval_family(f, float(c))
        assert pattern(s).counts == f.mu
        v = classify(s)
        assert v.kind is Kind.BOUNDARY
        assert v.active in (f.active, Active.BOTH)


def test_out_of_range():
    f = fam.get_family("nu{1,1,7}")
    with pytest.raises(fam.OutOfRange):
        fam.eval_family(f, 0.5)
    with pytest.raises(fam.OutOfRange):
        fam.eval_family(f, f.c_interval[1])  # open end


def test_closed_splice_is_the_special_point():
    for name, pid in (("nu{2,4,3}^(1)", "nu243_3"), ("nu{6,2,1}^(1)", "nu621_3"), ("nu{6,2,1}^(2)", "nu621_3")):
        assert fam.verify_limit(fam.get_family(name), "hi" if name != "nu{6,2,1}^(1)" else "lo") < 1e-12


def test_special_points_both_dets_vanish():
    for pid in ("nu243_3", "nu621_3"):
        sp_ = fam.special_point(pid)
        assert abs(sp_.l1) < 1e-15 and abs(sp_.l2) < 1e-15
        assert classify(sp_.spectrum).active is Active.BOTH


def test_nu243_point_value():
    assert fam.special_point("nu243_3").spectrum[0] == pytest.approx(0.189421, abs=1e-6)


def test_endpoint_constants():
    assert fam.endpoint_value("y") == pytest.approx(0.0569918, abs=1e-7)
    assert fam.endpoint_value("(85-14*sqrt10)/585") == pytest.approx(0.069620, abs=1e-6)
    x = fam.zeta5_x()
    assert x**3 - x**2 - 5 * x + 1 == pytest.approx(0, abs=1e-13) and 2 < x < 3


@pytest.mark.parametrize("i", range(1, 9))
def test_zeta_normalized(i):
    z = fam.zeta(i)
    assert abs(sum(z) - 1) <= 1e-14
    assert len(pattern(z).counts) == 2


def test_nu153_decompose():
    f = fam.get_family("nu{1,5,3}")
    for c in fam.sample_c(f, 4):
        x, res = fam.nu153_decompose(fam.eval_family(f, float(c)))
        assert x == pytest.approx(11 * (21 * c - 1) / 10)
        assert res < 1e-15
    with pytest.raises(fam.PatternMismatch):
        fam.nu153_decompose(fam.zeta(1))


def test_cubic_outside_window_raises():
    f = fam.get_family("nu{1,4,4}")
    lo, _ = f.c_interval
    with pytest.raises((RootSelectionFailure, fam.OutOfRange)):
        fam.eval_family(f, lo - 0.01)


def test_limits_tighten_with_eps():
    f = fam.get_family("nu{1,1,7}")
    d1, d2 = fam.verify_limit(f, "hi", 1e-4), fam.verify_limit(f, "hi", 1e-8)
    assert d2 < d1
    # square-root branches close in like sqrt(eps)
    assert d2 < 10 * math.sqrt(1e-8)
