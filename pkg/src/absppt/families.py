"""Extreme points of the two-qutrit absolutely-PPT set.

Two-level extreme points are the eight anchor spectra ``zeta(1) .. zeta(8)``.
Three-level extreme points ``nu{ma,mb,mc}`` come in one-parameter families
indexed by the smallest eigenvalue ``c``; each family is either a closed form
in ``c`` or picks ``b`` as a fixed root of a cubic whose coefficients depend
on ``c``, with ``a`` then fixed by the trace. At each end of its ``c`` range a
family collapses onto a zeta anchor or onto one of two special points where
both determinants vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cache
from typing import Callable

import numpy as np

from .criterion import Active, build_L1, build_L2, det3
from .roots import RootSelectionFailure, nth_root, real_roots
from .spectrum import Spectrum, make_spectrum, pattern

SQRT2 = math.sqrt(2.0)
SQRT10 = math.sqrt(10.0)
SQRT17 = math.sqrt(17.0)


class OutOfRange(ValueError):
    pass


class PatternMismatch(ValueError):
    pass


@cache
def zeta5_x() -> float:
    """Root of ``x^3 - x^2 - 5x + 1`` in (2, 3)."""
    (x,) = [r for r in real_roots([1.0, -1.0, -5.0, 1.0]) if 2.0 < r < 3.0]
    return x


@cache
def y_const() -> float:
    """Second real root of ``481y^3 - 37y^2 - 17y + 1``; the left end of the zeta5 families."""
    y = nth_root([481.0, -37.0, -17.0, 1.0], 2)
    assert 0.05 < y < 0.06
    return y


ENDPOINTS: dict[str, Callable[[], float]] = {
    "0": lambda: 0.0,
    "1/57": lambda: 1.0 / 57.0,
    "(23-14*sqrt2)/137": lambda: (23.0 - 14.0 * SQRT2) / 137.0,
    "1/21": lambda: 1.0 / 21.0,
    "y": y_const,
    "(85-14*sqrt10)/585": lambda: (85.0 - 14.0 * SQRT10) / 585.0,
    "(10-sqrt17)/83": lambda: (10.0 - SQRT17) / 83.0,
    "1/12": lambda: 1.0 / 12.0,
    "(9-2*sqrt2)/73": lambda: (9.0 - 2.0 * SQRT2) / 73.0,
    "1/11": lambda: 1.0 / 11.0,
}

# each anchor's smallest eigenvalue is one of the endpoints above
ZETA_AT = {
    "1/11": 1, "(9-2*sqrt2)/73": 2, "1/12": 3, "(10-sqrt17)/83": 4,
    "y": 5, "1/21": 6, "(23-14*sqrt2)/137": 7, "0": 8,
}


def endpoint_value(name: str) -> float:
    return ENDPOINTS[name]()


def zeta(i: int) -> Spectrum:
    if i == 1:
        v = np.array([3] + [1] * 8) / 11.0
    elif i == 2:
        v = np.array([SQRT2 + 1] * 2 + [1.0] * 7) / (9.0 + 2.0 * SQRT2)
    elif i == 3:
        v = np.array([2] * 3 + [1] * 6) / 12.0
    elif i == 4:
        v = np.array([(5.0 + SQRT17) / 4.0] * 4 + [1.0] * 5) / (10.0 + SQRT17)
    elif i == 5:
        x = zeta5_x()
        v = np.array([x] * 5 + [1.0] * 4) / (5.0 * x + 4.0)
    elif i == 6:
        v = np.array([3] * 6 + [1] * 3) / 21.0
    elif i == 7:
        v = np.array([3.0 + 2.0 * SQRT2] * 7 + [1.0] * 2) / (23.0 + 14.0 * SQRT2)
    elif i == 8:
        v = np.array([1] * 8 + [0]) / 8.0
    else:
        raise ValueError(f"zeta index must be in 1..8, got {i}")
    return make_spectrum(v / v.sum())


def _sqrt(v: float) -> float:
    # closed endpoints sit exactly on a branch point; absorb rounding there
    if v < 0.0:
        if v > -1e-13:
            return 0.0
        raise OutOfRange(f"negative discriminant {v:.3e}")
    return math.sqrt(v)


@dataclass(frozen=True)
class FamilySpec:
    mu: tuple[int, int, int]
    variant: int | None
    kind: str  # "closed", "cubic" or "point"
    lo: str
    hi: str
    lo_open: bool
    hi_open: bool
    limit_lo: str | None
    limit_hi: str | None
    active: Active
    extreme: bool = True
    a_of_c: Callable[[float], float] | None = field(default=None, compare=False, repr=False)
    b_of_c: Callable[[float], float] | None = field(default=None, compare=False, repr=False)
    cubic: Callable[[float], list[float]] | None = field(default=None, compare=False, repr=False)
    root_index: int | None = None
    point: str | None = None

    @property
    def name(self) -> str:
        base = "nu{%d,%d,%d}" % self.mu
        return base if self.variant is None else f"{base}^({self.variant})"

    @property
    def c_interval(self) -> tuple[float, float]:
        return endpoint_value(self.lo), endpoint_value(self.hi)

    def a_from_trace(self, b: float, c: float) -> float:
        ma, mb, mc = self.mu
        return (1.0 - mb * b - mc * c) / ma


def _closed(mu, lo, hi, a, b, *, variant=None, lo_open=True, hi_open=True,
            limit_lo="zeta", limit_hi="zeta", active=Active.BOTH, extreme=True):
    return FamilySpec(mu, variant, "closed", lo, hi, lo_open, hi_open,
                      _lim(lo, limit_lo), _lim(hi, limit_hi), active, extreme,
                      a_of_c=a, b_of_c=b)


def _cubic(mu, lo, hi, coeffs, index, *, variant=None, lo_open=True, hi_open=True,
           limit_lo="zeta", limit_hi="zeta", active=Active.BOTH):
    return FamilySpec(mu, variant, "cubic", lo, hi, lo_open, hi_open,
                      _lim(lo, limit_lo), _lim(hi, limit_hi), active,
                      cubic=coeffs, root_index=index)


def _lim(end, target):
    return f"zeta{ZETA_AT[end]}" if target == "zeta" else target


C2 = "(9-2*sqrt2)/73"
C4 = "(10-sqrt17)/83"
C7 = "(23-14*sqrt2)/137"
CS = "(85-14*sqrt10)/585"

_FAMILIES: tuple[FamilySpec, ...] = (
    # mu(a) = 1
    _closed((1, 1, 7), C2, "1/11",
            lambda c: (1 - 7 * c + _sqrt(-73 * c * c + 18 * c - 1)) / 2,
            lambda c: (1 - 7 * c - _sqrt(-73 * c * c + 18 * c - 1)) / 2),
    _closed((1, 2, 6), "1/12", "1/11",
            lambda c: 1 - 10 * c + 2 * _sqrt(12 * c * c - c),
            lambda c: 2 * c - _sqrt(12 * c * c - c)),
    _closed((1, 3, 5), C4, "1/11",
            lambda c: (1 + 10 * c - 3 * _sqrt(108 * c * c - 20 * c + 1)) / 4,
            lambda c: (1 - 10 * c + _sqrt(108 * c * c - 20 * c + 1)) / 4),
    _cubic((1, 4, 4), "y", "1/11",
           lambda c: [16.0, 41 * c - 8, 19 * c * c - 10 * c + 1, c ** 3], 2),
    _closed((1, 5, 3), "1/21", "1/11",
            lambda c: 3 * c,
            lambda c: (1 - 6 * c) / 5, active=Active.L1, extreme=False),
    _closed((1, 6, 2), C7, "1/11",
            lambda c: (2 * c + _sqrt(6 * c - 17 * c * c)) / 3,
            lambda c: (3 - 8 * c - _sqrt(6 * c - 17 * c * c)) / 18),
    _closed((1, 7, 1), "0", "1/11",
            lambda c: (4 - 11 * c + 7 * _sqrt(8 * c - 7 * c * c)) / 32,
            lambda c: (4 - 3 * c - _sqrt(8 * c - 7 * c * c)) / 32),
    # mu(a) = 2
    _closed((2, 1, 6), "1/12", C2,
            lambda c: 2 * c + _sqrt(12 * c * c - c),
            lambda c: 1 - 10 * c - 2 * _sqrt(12 * c * c - c)),
    _cubic((2, 2, 5), C4, C2,
           lambda c: [-4.0, 4 - 30 * c, -37 * c * c + 14 * c - 1, -2 * c ** 3], 2),
    _cubic((2, 3, 4), "y", C2,
           lambda c: [-9.0, 6 - 45 * c, -56 * c * c + 18 * c - 1, -c * (1 - 6 * c) ** 2], 2),
    _cubic((2, 4, 3), "1/21", CS,
           lambda c: [-16.0, 8 - 76 * c, -45 * c * c + 22 * c - 1, -c * (1 - 3 * c) ** 2], 2,
           variant=1, hi_open=False, limit_hi="nu243_3", active=Active.L1),
    _closed((2, 4, 3), CS, C2,
            lambda c: (c + _sqrt(2 * c - 9 * c * c)) / 2,
            lambda c: (1 - 4 * c - _sqrt(2 * c - 9 * c * c)) / 4,
            variant=2, lo_open=False, limit_lo="nu243_3", active=Active.L2),
    FamilySpec((2, 4, 3), 3, "point", CS, CS, False, False, None, None, Active.BOTH,
               point="nu243_3"),
    _closed((2, 5, 2), C7, C2,
            lambda c: (7 - 9 * c + 5 * _sqrt(-201 * c * c + 66 * c - 1)) / 74,
            lambda c: (6 - 13 * c - _sqrt(-201 * c * c + 66 * c - 1)) / 37),
    _closed((2, 6, 1), "0", C2,
            lambda c: (2 - 5 * c + 3 * _sqrt(4 * c - 3 * c * c)) / 16,
            lambda c: (2 - c - _sqrt(4 * c - 3 * c * c)) / 16),
    # mu(a) = 3
    _closed((3, 1, 5), C4, "1/12",
            lambda c: (1 + 2 * c - _sqrt(1 - 20 * c + 132 * c * c)) / 4,
            lambda c: (1 - 26 * c + 3 * _sqrt(1 - 20 * c + 132 * c * c)) / 4),
    _cubic((3, 2, 4), "y", "1/12",
           lambda c: [8.0, -12 - 15 * c, 6 - 30 * c + 114 * c * c, -1 + 12 * c - 39 * c * c + c ** 3], 1),
    _closed((3, 3, 3), "1/21", "1/12",
            lambda c: (3 - 18 * c + _sqrt(3 * (-1 + 24 * c - 36 * c * c))) / 18,
            lambda c: (3 - _sqrt(3 * (-1 + 24 * c - 36 * c * c))) / 18,
            variant=1, active=Active.L1),
    _cubic((3, 4, 2), C7, "1/12",
           lambda c: [1.0, -39 + 114 * c, 12 - 30 * c - 15 * c * c, -1 + 6 * c - 12 * c * c + 8 * c ** 3], 1),
    _closed((3, 5, 1), "0", "1/12",
            lambda c: (8 - 43 * c + 5 * _sqrt(16 * c + 33 * c * c)) / 64,
            lambda c: (8 + 13 * c - 3 * _sqrt(16 * c + 33 * c * c)) / 64),
    # mu(a) = 4
    _cubic((4, 1, 4), "y", C4,
           lambda c: [3.0, -7.0, 5 - 48 * c + 112 * c * c, -1 + 16 * c - 48 * c * c - 32 * c ** 3], 1),
    _closed((4, 2, 3), "1/21", C4,
            lambda c: (3 - 6 * c + _sqrt(-1 + 24 * c - 54 * c * c)) / 20,
            lambda c: (2 - 9 * c - _sqrt(-1 + 24 * c - 54 * c * c)) / 10,
            variant=1, active=Active.L1),
    _cubic((4, 3, 2), C7, C4,
           lambda c: [11.0, 31 - 2 * c, -11 + 36 * c - 52 * c * c, 1 - 10 * c + 36 * c * c - 40 * c ** 3], 2),
    _cubic((4, 4, 1), "0", C4,
           lambda c: [256.0, -128 - 128 * c, 20 + 24 * c - 44 * c * c, -1 + c + c * c - c ** 3], 1),
    # mu(a) = 5
    _cubic((5, 1, 3), "1/21", "y",
           lambda c: [1.0, -3 - 161 * c, 3 + 22 * c - 168 * c * c, -1 + 14 * c + 18 * c * c - 153 * c ** 3], 1,
           variant=1, active=Active.L1),
    _cubic((5, 2, 2), C7, "y",
           lambda c: [237.0, -58 + 276 * c, -1 - 56 * c + 66 * c * c, 1 - 16 * c + 77 * c * c - 98 * c ** 3], 2),
    _cubic((5, 3, 1), "0", "y",
           lambda c: [128.0, 32 + 268 * c, -14 - 72 * c + 86 * c * c, 1 - 3 * c + 3 * c * c - c ** 3], 2),
    # mu(a) = 6
    _closed((6, 1, 2), C7, "1/21",
            lambda c: -11 * c + 2 * _sqrt(c + 28 * c * c),
            lambda c: 1 + 64 * c - 12 * _sqrt(c + 28 * c * c),
            variant=1, active=Active.L1),
    _closed((6, 2, 1), "1/57", "1/21",
            lambda c: (1 - 4 * c + _sqrt(2 * c + 7 * c * c)) / 8,
            lambda c: (1 + 8 * c - 3 * _sqrt(2 * c + 7 * c * c)) / 8,
            variant=1, lo_open=False, limit_lo="nu621_3", active=Active.L1),
    _closed((6, 2, 1), "0", "1/57",
            lambda c: (2 - c + _sqrt(4 * c - 3 * c * c)) / 16,
            lambda c: (2 - 5 * c - 3 * _sqrt(4 * c - 3 * c * c)) / 16,
            variant=2, hi_open=False, limit_hi="nu621_3", active=Active.L2),
    FamilySpec((6, 2, 1), 3, "point", "1/57", "1/57", False, False, None, None, Active.BOTH,
               point="nu621_3"),
    # mu(a) = 7
    _closed((7, 1, 1), "0", C7,
            lambda c: (4 - 3 * c + _sqrt(8 * c - 7 * c * c)) / 32,
            lambda c: (4 - 11 * c - 7 * _sqrt(8 * c - 7 * c * c)) / 32),
)


def list_families() -> tuple[FamilySpec, ...]:
    return _FAMILIES


def get_family(name: str) -> FamilySpec:
    key = name.replace(" ", "")
    for f in _FAMILIES:
        if f.name == key:
            return f
    raise KeyError(f"unknown family {name!r}")


def select_families(selector: str) -> list[FamilySpec]:
    """Resolve ``all``, ``nuK`` (all rows with mu(a)=K) or a family name.

    A bare ``nu{ma,mb,mc}`` matches every variant with those multiplicities.
    ``all`` and ``nuK`` leave out the non-extreme branch; name it explicitly.
    """
    sel = selector.replace(" ", "")
    if sel == "all":
        return [f for f in _FAMILIES if f.extreme]
    if sel.startswith("nu") and sel[2:].isdigit():
        k = int(sel[2:])
        out = [f for f in _FAMILIES if f.mu[0] == k and f.extreme]
    elif "^" in sel:
        out = [get_family(sel)]
    else:
        out = [f for f in _FAMILIES if f.name.split("^")[0] == sel]
    if not out:
        raise KeyError(f"unknown family selector {selector!r}")
    return out


def family_endpoints(f: FamilySpec) -> tuple[float, float]:
    return f.c_interval


def _in_range(f: FamilySpec, c: float) -> bool:
    lo, hi = f.c_interval
    above = c > lo or (not f.lo_open and c == lo)
    below = c < hi or (not f.hi_open and c == hi)
    return above and below


def family_ab(f: FamilySpec, c: float) -> tuple[float, float]:
    """(a, b) for the family at ``c`` without building a spectrum."""
    if not _in_range(f, c):
        lo, hi = f.c_interval
        raise OutOfRange(f"c={c!r} outside {'(' if f.lo_open else '['}{lo!r}, {hi!r}{')' if f.hi_open else ']'} for {f.name}")
    if f.kind == "point":
        sp = special_point(f.point)
        return sp.spectrum[0], sp.spectrum[f.mu[0]]
    if f.kind == "closed":
        a, b = f.a_of_c(c), f.b_of_c(c)
        if abs(f.a_from_trace(b, c) - a) > 1e-12:
            raise ArithmeticError(f"{f.name}: closed form violates the trace at c={c!r}")
        return a, b
    b = nth_root(f.cubic(c), f.root_index)
    return f.a_from_trace(b, c), b


def eval_family(f: FamilySpec, c: float) -> Spectrum:
    a, b = family_ab(f, c)
    closed_end = (c == f.c_interval[0] and not f.lo_open) or (c == f.c_interval[1] and not f.hi_open)
    ordered = (a >= b >= c >= 0) if closed_end else (a > b > c > 0)
    if not ordered:
        err = RootSelectionFailure if f.kind == "cubic" else OutOfRange
        raise err(f"{f.name} at c={c!r}: need a > b > c > 0, got a={a!r}, b={b!r}")
    ma, mb, mc = f.mu
    return make_spectrum([a] * ma + [b] * mb + [c] * mc)


def sample_c(f: FamilySpec, n: int) -> np.ndarray:
    """``n`` evenly spaced interior parameters (the single parameter for point rows)."""
    lo, hi = f.c_interval
    if f.kind == "point":
        return np.array([lo])
    return lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)


def limit_target(target: str) -> Spectrum:
    if target.startswith("zeta"):
        return zeta(int(target[4:]))
    return special_point(target).spectrum


def verify_limit(f: FamilySpec, end: str, eps: float = 1e-8) -> float:
    """Sup-norm distance between the family near one end and its limiting spectrum.

    Open ends are approached to within ``eps``; closed ends are evaluated exactly.
    """
    if end not in ("lo", "hi"):
        raise ValueError("end must be 'lo' or 'hi'")
    target = f.limit_lo if end == "lo" else f.limit_hi
    if target is None:
        raise ValueError(f"{f.name} has no tabulated limit at its {end} end")
    lo, hi = f.c_interval
    if end == "lo":
        c = lo + eps if f.lo_open else lo
    else:
        c = hi - eps if f.hi_open else hi
    s = eval_family(f, c)
    return float(np.max(np.abs(s.lam - limit_target(target).lam)))


@dataclass(frozen=True)
class SpecialPoint:
    id: str
    spectrum: Spectrum
    c_value: float
    l1: float
    l2: float


@cache
def special_point(id: str) -> SpecialPoint:
    """Three-level points where both determinants vanish and two branches meet."""
    if id == "nu621_3":
        c = 1.0 / 57.0
        v = np.array([8] * 6 + [4] * 2 + [1]) / 57.0
    elif id == "nu243_3":
        k = 85.0 - 14.0 * SQRT10
        c = k / 585.0
        b = (36.0 - 19.0 / 117.0 * k) / (7.0 * k)
        a = (1.0 - 4.0 * b - 3.0 * c) / 2.0
        v = np.array([a] * 2 + [b] * 4 + [c] * 3)
    else:
        raise KeyError(f"unknown special point {id!r}")
    s = make_spectrum(v)
    l1, l2 = det3(build_L1(s.lam)), det3(build_L2(s.lam))
    if max(abs(l1), abs(l2)) > 1e-10:
        raise ArithmeticError(f"{id}: determinants {l1:.3e}, {l2:.3e} do not vanish")
    return SpecialPoint(id, s, c, l1, l2)


def nu153_decompose(s: Spectrum, tol: float = 1e-10) -> tuple[float, float]:
    """Write ``diag(3c, b x5, c x3)`` as ``x*zeta1 + (1-x)*zeta6``.

    Returns ``(x, residual)`` with ``x = 11(21c - 1)/10`` and the sup-norm residual.
    """
    p = pattern(s, tol)
    if p.counts != (1, 5, 3):
        raise PatternMismatch(f"multiplicities {p.counts} are not (1, 5, 3)")
    a, c = s[0], s[8]
    if abs(a - 3 * c) > tol:
        raise PatternMismatch(f"a={a!r} differs from 3c={3 * c!r}")
    x = 11.0 * (21.0 * c - 1.0) / 10.0
    recon = x * zeta(1).lam + (1.0 - x) * zeta(6).lam
    return x, float(np.max(np.abs(s.lam - recon)))
