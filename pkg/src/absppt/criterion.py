"""Spectral test for absolutely PPT two-qutrit states.

A full-rank two-qutrit state is absolutely PPT exactly when the two 3x3
matrices ``L1`` and ``L2`` built from its ordered eigenvalues are positive
semidefinite. Boundary points have at least one vanishing determinant.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from .spectrum import Spectrum

DET_TOL = 1e-10


class InternalInconsistency(RuntimeError):
    """The corner inequality failed on a spectrum classified as interior."""


class Kind(str, enum.Enum):
    NOT_AP = "NotAP"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"


class Active(str, enum.Enum):
    L1 = "L1"
    L2 = "L2"
    BOTH = "Both"
    NONE = "None"


def _x(lam):
    # 1-based access keeps the templates readable
    return (None, *np.asarray(lam, dtype=float))


def build_L1(s) -> np.ndarray:
    x = _x(s)
    return np.array([
        [2 * x[9], x[8] - x[1], x[6] - x[2]],
        [x[8] - x[1], 2 * x[7], x[5] - x[3]],
        [x[6] - x[2], x[5] - x[3], 2 * x[4]],
    ])


def build_L2(s) -> np.ndarray:
    x = _x(s)
    return np.array([
        [2 * x[9], x[8] - x[1], x[7] - x[2]],
        [x[8] - x[1], 2 * x[6], x[5] - x[3]],
        [x[7] - x[2], x[5] - x[3], 2 * x[4]],
    ])


def det3(m) -> float:
    """Cofactor expansion along the first row."""
    m = np.asarray(m, dtype=float)
    return float(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def min_eigenvalue(m) -> float:
    return float(np.linalg.eigvalsh(np.asarray(m, dtype=float))[0])


def corner_inequality(s) -> float:
    """``4*lam7*lam9 - (lam1 - lam8)**2``; nonnegative for every AP spectrum."""
    x = _x(s)
    return float(4 * x[7] * x[9] - (x[1] - x[8]) ** 2)


@dataclass(frozen=True)
class MembershipVerdict:
    kind: Kind
    active: Active
    l1: float
    l2: float
    min_eig_L1: float
    min_eig_L2: float
    corner: float
    rank_deficient: bool = False

    @property
    def is_ap(self) -> bool:
        return self.kind is not Kind.NOT_AP

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["active"] = self.active.value
        return d


def classify(s: Spectrum, tol: float = DET_TOL, psd_tol: float | None = None) -> MembershipVerdict:
    """Decide NotAP / Boundary / Interior.

    ``psd_tol`` defaults to ``tol``. An L-matrix is *active* when its
    determinant is within ``tol * max(1, |L|^3)`` of zero or its smallest
    eigenvalue is within ``psd_tol`` of zero.
    """
    psd_tol = tol if psd_tol is None else psd_tol
    lam = s.lam if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    L1, L2 = build_L1(lam), build_L2(lam)
    l1, l2 = det3(L1), det3(L2)
    e1, e2 = min_eigenvalue(L1), min_eigenvalue(L2)
    corner = corner_inequality(lam)
    rank_def = bool(lam[8] == 0.0)

    def _verdict(kind, active):
        return MembershipVerdict(kind, active, l1, l2, e1, e2, corner, rank_def)

    if e1 < -psd_tol or e2 < -psd_tol:
        return _verdict(Kind.NOT_AP, Active.NONE)

    on1 = abs(l1) <= tol * max(1.0, np.linalg.norm(L1, 2) ** 3) or e1 <= psd_tol
    on2 = abs(l2) <= tol * max(1.0, np.linalg.norm(L2, 2) ** 3) or e2 <= psd_tol
    if on1 or on2:
        active = Active.BOTH if on1 and on2 else (Active.L1 if on1 else Active.L2)
        return _verdict(Kind.BOUNDARY, active)
    if corner < -tol:
        raise InternalInconsistency(f"corner inequality {corner:.3e} < 0 at an interior point")
    return _verdict(Kind.INTERIOR, Active.NONE)


def is_ap(s, tol: float = DET_TOL) -> bool:
    return classify(s, tol).is_ap
