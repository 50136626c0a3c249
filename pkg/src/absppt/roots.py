"""Real roots of cubics, ordered the way the extreme-point families index them.

Roots are listed real-first in ascending order, so "the second root" of a
cubic is its second-smallest real root. Real roots are isolated on the
monotone pieces between critical points and refined with Brent's method,
which stays reliable when two roots nearly coincide (where companion-matrix
eigenvalues tend to split into a spurious complex pair).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq


class RootSelectionFailure(ArithmeticError):
    pass


def _horner(coeffs, x):
    acc = 0.0
    for a in coeffs:
        acc = acc * x + a
    return acc


def _cauchy_bound(coeffs) -> float:
    lead = coeffs[0]
    return 1.0 + max(abs(a / lead) for a in coeffs[1:])


def _critical_points(coeffs) -> list[float]:
    # p(x) = c3 x^3 + c2 x^2 + c1 x + c0  ->  p'(x) = 3 c3 x^2 + 2 c2 x + c1
    c3, c2, c1, _ = coeffs
    qa, qb, qc = 3 * c3, 2 * c2, c1
    disc = qb * qb - 4 * qa * qc
    if disc <= 0:
        return []
    r = math.sqrt(disc)
    # numerically stable quadratic roots
    q = -0.5 * (qb + math.copysign(r, qb))
    pts = [q / qa]
    if q != 0:
        pts.append(qc / q)
    return sorted(pts)


def real_roots(coeffs, xtol: float = 1e-15) -> list[float]:
    """Ascending real roots of a polynomial given highest degree first.

    Degrees up to three; higher degrees fall back to companion-matrix
    eigenvalues followed by Newton polishing.
    """
    coeffs = [float(a) for a in coeffs]
    while len(coeffs) > 1 and coeffs[0] == 0.0:
        coeffs = coeffs[1:]
    deg = len(coeffs) - 1
    if deg < 1:
        return []
    if deg == 1:
        return [-coeffs[1] / coeffs[0]]
    if deg > 3:
        return _companion_roots(coeffs)
    if deg == 2:
        coeffs = [0.0] + coeffs
        crit = [-coeffs[2] / (2 * coeffs[1])]
        bound = 1.0 + max(abs(coeffs[2] / coeffs[1]), abs(coeffs[3] / coeffs[1]))
    else:
        crit = _critical_points(coeffs)
        bound = _cauchy_bound(coeffs)

    knots = [-bound] + [x for x in crit if -bound < x < bound] + [bound]
    scale = max(abs(a) for a in coeffs)
    roots: list[float] = []
    for lo, hi in zip(knots[:-1], knots[1:]):
        flo, fhi = _horner(coeffs, lo), _horner(coeffs, hi)
        if flo == 0.0:
            roots.append(lo)
            continue
        if flo * fhi < 0:
            roots.append(brentq(lambda x: _horner(coeffs, x), lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps,
                                 maxiter=500))
    # a critical point that touches zero is a double root
    for x in crit:
        if abs(_horner(coeffs, x)) <= 1e-15 * scale and all(abs(x - r) > 1e-9 for r in roots):
            roots.append(x)
    if _horner(coeffs, knots[-1]) == 0.0:
        roots.append(knots[-1])
    return sorted(roots)


def _companion_roots(coeffs) -> list[float]:
    r = np.roots(coeffs)
    out = []
    d = np.polyder(coeffs)
    for z in r[np.abs(r.imag) <= 1e-8 * max(1.0, np.abs(r).max())].real:
        for _ in range(4):
            dz = np.polyval(d, z)
            if dz == 0:
                break
            z = z - np.polyval(coeffs, z) / dz
        out.append(float(z))
    return sorted(out)


def nth_root(coeffs, index: int) -> float:
    """The ``index``-th (1-based) root in real-first ascending order.

    Raises :class:`RootSelectionFailure` if fewer than ``index`` real roots exist.
    """
    roots = real_roots(coeffs)
    if index < 1 or index > len(roots):
        raise RootSelectionFailure(f"root #{index} requested, polynomial has {len(roots)} real roots")
    return roots[index - 1]


def residual(coeffs, x) -> float:
    """|p(x)| relative to the largest coefficient."""
    return abs(_horner(coeffs, x)) / max(abs(float(a)) for a in coeffs)
