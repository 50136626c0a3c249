"""Rank test for extreme points of the absolutely-PPT set.

A boundary spectrum is extreme exactly when the only perturbation ``t`` that
keeps the trace, respects equal eigenvalues and keeps every zero eigenvector
of the active L-matrices in the kernel is ``t = 0``. The perturbation enters
the L-matrices linearly, so the conditions form a homogeneous linear system
in ``t_1 .. t_9`` whose numeric rank decides extremality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .criterion import DET_TOL, Active, Kind, build_L1, build_L2, classify
from .spectrum import GROUP_TOL, Spectrum, SpectrumError, group_labels, make_spectrum

RANK_TOL = 1e-9
NULL_TOL = 1e-9


class NotPSD(ValueError):
    pass


class NotBoundary(ValueError):
    pass


class ExtremalityKind(str, enum.Enum):
    EXTREME = "Extreme"
    NOT_EXTREME = "NotExtreme"
    NOT_APPLICABLE = "NotApplicable"


def _orient(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    nz = np.flatnonzero(np.abs(v) > tol)
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def null_space(m, tol: float = NULL_TOL) -> list[np.ndarray]:
    """Orthonormal eigenvectors of a symmetric PSD matrix with eigenvalue in ``[-tol, tol]``.

    Each vector has its first nonzero coordinate positive.
    """
    w, V = np.linalg.eigh(np.asarray(m, dtype=float))
    if w[0] < -tol:
        raise NotPSD(f"eigenvalue {w[0]:.3e} < -{tol:g}")
    return [_orient(V[:, i]) for i in range(len(w)) if abs(w[i]) <= tol]


def _kernel_vectors(m, tol: float) -> list[np.ndarray]:
    # an active L-matrix may have its smallest eigenvalue just above tol
    vecs = null_space(m, tol)
    if vecs:
        return vecs
    w, V = np.linalg.eigh(m)
    return [_orient(V[:, 0])]


_UNIT = np.eye(9)


def _linear_rows(builder, w: np.ndarray) -> np.ndarray:
    """3x9 coefficients of ``builder(t) @ w`` as linear forms in ``t``."""
    return np.stack([builder(_UNIT[k]) @ w for k in range(9)], axis=1)


@dataclass(frozen=True)
class TSystem:
    matrix: np.ndarray
    provenance: tuple
    null_vectors: dict = field(default_factory=dict)

    def residual(self, t) -> float:
        return float(np.linalg.norm(self.matrix @ np.asarray(t, dtype=float)))


def build_t_system(s: Spectrum, tol: float = NULL_TOL, group_tol: float = GROUP_TOL,
                   det_tol: float = DET_TOL) -> TSystem:
    """Stack the trace, equal-eigenvalue and kernel conditions on ``t``.

    For a degenerate kernel every orthonormal kernel vector contributes three rows.
    """
    verdict = classify(s, det_tol)
    if verdict.kind is not Kind.BOUNDARY:
        raise NotBoundary(f"spectrum is {verdict.kind.value}, not Boundary")
    lam = s.lam
    rows = [np.ones(9)]
    prov: list = [("SumZero",)]
    labels = group_labels(s, group_tol)
    for k in range(8):
        if labels[k] == labels[k + 1]:
            rows.append(_UNIT[k] - _UNIT[k + 1])
            prov.append(("Equality", k + 1))
    kernels = {}
    for name, builder, flag in (("L1", build_L1, Active.L1), ("L2", build_L2, Active.L2)):
        if verdict.active not in (flag, Active.BOTH):
            continue
        vecs = _kernel_vectors(builder(lam), tol)
        kernels[name] = vecs
        for j, w in enumerate(vecs):
            block = _linear_rows(builder, w)
            for i in range(3):
                rows.append(block[i])
                prov.append((f"{name}Row", i + 1, j + 1))
    return TSystem(np.array(rows), tuple(prov), kernels)


@dataclass(frozen=True)
class ExtremalityVerdict:
    kind: ExtremalityKind
    null_basis: tuple = ()
    reason: str = ""
    rank: int | None = None
    singular_values: tuple = ()
    system: TSystem | None = field(default=None, repr=False)
    rank_deficient: bool = False

    @property
    def direction(self) -> np.ndarray | None:
        return self.null_basis[0] if self.null_basis else None

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind.value,
            "reason": self.reason,
            "rank": self.rank,
            "singular_values": [float(x) for x in self.singular_values],
            "null_basis": [[float(x) for x in v] for v in self.null_basis],
            "rank_deficient": self.rank_deficient,
        }
        if self.system is not None:
            d["rows"] = [list(p) for p in self.system.provenance]
            d["kernel_dims"] = {k: len(v) for k, v in self.system.null_vectors.items()}
            d["stacked_kernel"] = any(len(v) > 1 for v in self.system.null_vectors.values())
        return d


def extremality_test(s: Spectrum, tol: float = RANK_TOL, det_tol: float = DET_TOL,
                     group_tol: float = GROUP_TOL, null_tol: float = NULL_TOL) -> ExtremalityVerdict:
    """Extreme iff the stacked t-system has numeric rank 9.

    Singular values below ``tol * sigma_max`` count as zero.
    """
    rank_def = s.rank_deficient
    try:
        sysm = build_t_system(s, null_tol, group_tol, det_tol)
    except NotBoundary as exc:
        return ExtremalityVerdict(ExtremalityKind.NOT_APPLICABLE, reason=str(exc), rank_deficient=rank_def)
    _, sv, vt = np.linalg.svd(sysm.matrix)
    rank = int(np.sum(sv > tol * sv[0]))
    if rank == 9:
        return ExtremalityVerdict(ExtremalityKind.EXTREME, (), "t-system has only the trivial solution",
                                  rank, tuple(sv), sysm, rank_def)
    basis = tuple(_orient(v) for v in vt[rank:])
    return ExtremalityVerdict(ExtremalityKind.NOT_EXTREME, basis,
                              f"{9 - rank}-dimensional escape direction", rank, tuple(sv), sysm, rank_def)


def _shift(s: Spectrum, d: np.ndarray, scale: float = 1.0) -> Spectrum | None:
    try:
        return make_spectrum((s.lam + d) / scale)
    except SpectrumError:
        return None


def direction_test(s: Spectrum, t, eps: float, tol: float = DET_TOL) -> bool:
    """True iff both ``s + eps*t`` and ``s - eps*t`` (re-sorted) are absolutely PPT."""
    t = np.asarray(t, dtype=float)
    for sign in (1.0, -1.0):
        p = _shift(s, sign * eps * t)
        if p is None or not classify(p, tol).is_ap:
            return False
    return True


def interior_line_test(s: Spectrum, probe: Spectrum, eps: float = 1e-3, tol: float = DET_TOL) -> bool:
    """Two-sided segment check through ``s`` towards and away from ``probe``.

    True iff ``(s + eps*probe)/(1 + eps)`` and ``(s - eps*probe)/(1 - eps)`` are
    both absolutely PPT.
    """
    if not 0 < eps < 0.1:
        raise ValueError("eps must lie in (0, 0.1)")
    p = np.asarray(probe.lam if isinstance(probe, Spectrum) else probe, dtype=float)
    for sign in (1.0, -1.0):
        q = _shift(s, sign * eps * p, 1.0 + sign * eps)
        if q is None or not classify(q, tol).is_ap:
            return False
    return True


def admissible_directions(s: Spectrum, group_tol: float = GROUP_TOL, det_tol: float = DET_TOL) -> list[np.ndarray]:
    """Orthonormal basis of trace-zero directions that keep equal eigenvalues equal.

    Sorted so the first vector comes closest to solving the t-system, which
    makes it the natural probe for a non-extremality witness.
    """
    labels = group_labels(s, group_tol)
    g = np.zeros((9, max(labels) + 1))
    g[np.arange(9), labels] = 1.0
    counts = g.sum(axis=0)
    # trace-zero combinations of group indicators
    _, _, vt = np.linalg.svd(counts[None, :])
    basis = g @ vt[1:].T
    basis /= np.linalg.norm(basis, axis=0)
    if basis.shape[1] == 0:
        return []
    try:
        m = build_t_system(s, det_tol=det_tol, group_tol=group_tol).matrix
    except NotBoundary:
        return [_orient(v) for v in basis.T]
    _, _, vt2 = np.linalg.svd(m @ basis)
    dirs = basis @ vt2[::-1].T
    return [_orient(v / np.linalg.norm(v)) for v in dirs.T]
