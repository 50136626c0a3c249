"""Randomized checks that do not go through the L-matrix criterion.

``mc_ppt_scan`` conjugates ``diag(s)`` by Haar-random unitaries and records
the most negative eigenvalue of the partial transpose. A negative value
proves the spectrum is not absolutely PPT; a nonnegative one proves nothing.
``perturbation_decompose`` builds an explicit pair of AP spectra whose
midpoint is the input, which certifies that the input is not extreme.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .criterion import Kind, classify
from .spectrum import GROUP_TOL, Spectrum, SpectrumError, group_labels, make_spectrum

DIM = 9
WITNESS_TOL = 1e-14
MIN_WITNESS_EPS = 1e-6


class InvalidDirection(ValueError):
    pass


def _rng(seed: int, index: int) -> np.random.Generator:
    # one independent stream per sample index
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def haar_unitary(seed: int, index: int = 0, dim: int = DIM) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with R's phases divided out."""
    rng = _rng(seed, index)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


@lru_cache(maxsize=8)
def _unitary_batch(seed: int, n: int) -> np.ndarray:
    out = np.stack([haar_unitary(seed, i) for i in range(n)])
    out.flags.writeable = False
    return out


def partial_transpose(m: np.ndarray) -> np.ndarray:
    """Transpose on the second qutrit. Accepts a 9x9 matrix or a stack of them."""
    m = np.asarray(m)
    lead = m.shape[:-2]
    t = m.reshape(*lead, 3, 3, 3, 3)
    return np.swapaxes(t, -3, -1).reshape(*lead, 9, 9)


def min_pt_eigenvalue(rho: np.ndarray) -> np.ndarray:
    pt = partial_transpose(rho)
    pt = 0.5 * (pt + np.conj(np.swapaxes(pt, -1, -2)))
    return np.linalg.eigvalsh(pt)[..., 0]


@dataclass(frozen=True)
class McReport:
    n_samples: int
    min_pt_eigenvalue: float
    argmin_seed: int
    elapsed: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def mc_ppt_scan(s: Spectrum, n: int = 2000, seed: int = 0, batch: int = 500) -> McReport:
    """Smallest partial-transpose eigenvalue over ``n`` Haar conjugates of ``diag(s)``.

    ``argmin_seed`` is the sample index; ``haar_unitary(seed, argmin_seed)``
    reproduces the worst unitary.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t0 = time.perf_counter()
    lam = np.asarray(s.lam if isinstance(s, Spectrum) else s, dtype=float)
    us = _unitary_batch(seed, n)
    best, arg = np.inf, -1
    for start in range(0, n, batch):
        u = us[start:start + batch]
        rho = (u * lam[None, None, :]) @ np.conj(np.swapaxes(u, -1, -2))
        vals = min_pt_eigenvalue(rho)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best, arg = float(vals[i]), start + i
    return McReport(n, best, arg, time.perf_counter() - t0, seed)


def _check_direction(s: Spectrum, t: np.ndarray, group_tol: float) -> None:
    scale = max(1.0, float(np.abs(t).max()))
    if abs(t.sum()) > 1e-10 * scale:
        raise InvalidDirection(f"direction has nonzero trace {t.sum():.3e}")
    labels = group_labels(s, group_tol)
    for k in range(8):
        if labels[k] == labels[k + 1] and abs(t[k] - t[k + 1]) > 1e-10 * scale:
            raise InvalidDirection(f"t_{k + 1} != t_{k + 2} although the eigenvalues are equal")


def _ap_strict(v: np.ndarray, tol: float) -> bool:
    try:
        p = make_spectrum(v)
    except SpectrumError:
        return False
    return classify(p, tol).is_ap


def perturbation_decompose(s: Spectrum, t, eps_max: float = 1e-2, *, tol: float = WITNESS_TOL,
                           min_eps: float = MIN_WITNESS_EPS, group_tol: float = GROUP_TOL,
                           iterations: int = 40):
    """Largest ``eps <= eps_max`` with ``s +- eps*t`` both absolutely PPT.

    Feasibility uses the strict PSD tolerance ``tol`` so that rounding slack
    cannot pass for a segment. Returns ``(alpha, beta, eps)`` with
    ``s = (alpha + beta)/2`` up to ordering, or ``None`` when the best ``eps``
    is below ``min_eps``.
    """
    if classify(s).kind is not Kind.BOUNDARY:
        raise ValueError("perturbation_decompose needs a boundary spectrum")
    t = np.asarray(t, dtype=float)
    _check_direction(s, t, group_tol)
    t = t / np.linalg.norm(t)
    lam = s.lam

    def feasible(e):
        # keep the ordering so that alpha and beta average back to s entrywise
        return all(np.all(np.diff(v) <= 0) and _ap_strict(v, tol) for v in (lam + e * t, lam - e * t))

    if feasible(eps_max):
        eps = eps_max
    else:
        lo, hi = 0.0, eps_max
        for _ in range(iterations):
            if hi - lo <= 1e-12:
                break
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                lo = mid
            else:
                hi = mid
        eps = lo
    if eps < min_eps:
        return None
    return make_spectrum(lam + eps * t), make_spectrum(lam - eps * t), eps
