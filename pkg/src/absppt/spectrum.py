"""Two-qutrit spectra: validation, multiplicity grouping and three-level construction."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NEG_CLAMP = 1e-12
SUM_TOL = 1e-14
RENORM_TOL = 1e-9
GROUP_TOL = 1e-10


class SpectrumError(ValueError):
    pass


class NegativeEigenvalue(SpectrumError):
    pass


class NotNormalized(SpectrumError):
    pass


class OrderViolation(SpectrumError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Nine eigenvalues sorted nonincreasing, summing to one.

    Build instances with :func:`make_spectrum`; the constructor does not validate.
    """

    values: tuple[float, ...]

    @property
    def lam(self) -> np.ndarray:
        out = np.array(self.values, dtype=float)
        out.flags.writeable = False
        return out

    @property
    def rank_deficient(self) -> bool:
        return self.values[8] == 0.0

    def __len__(self):
        return 9

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def make_spectrum(values, renormalize: bool = False) -> Spectrum:
    """Validate, clamp and sort nine eigenvalues.

    Values in ``[-1e-12, 0)`` are clamped to zero. The trace must be one to
    ``1e-14``; with ``renormalize=True`` traces within ``1e-9`` of one are
    divided out instead of rejected.
    """
    v = np.asarray(values, dtype=float).ravel()
    if v.shape != (9,):
        raise SpectrumError(f"expected 9 eigenvalues, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise SpectrumError("eigenvalues must be finite")
    if v.min() < -NEG_CLAMP:
        raise NegativeEigenvalue(f"eigenvalue {v.min():.3e} < 0")
    v = np.where(v < 0, 0.0, v)
    total = v.sum()
    if abs(total - 1.0) > SUM_TOL:
        if renormalize and abs(total - 1.0) <= RENORM_TOL:
            v = v / total
        else:
            raise NotNormalized(f"trace {total!r} differs from 1 by {abs(total - 1.0):.3e}")
    v = np.sort(v)[::-1]
    return Spectrum(tuple(float(x) for x in v))


@dataclass(frozen=True)
class MultiplicityPattern:
    groups: tuple[tuple[float, int], ...]
    tol: float

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.groups)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for v, _ in self.groups)


def pattern(s: Spectrum, tol: float = GROUP_TOL) -> MultiplicityPattern:
    """Group equal eigenvalues.

    A new group starts whenever an eigenvalue is more than ``tol`` below the
    first (largest) member of the current group, so within-group spread never
    exceeds ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    groups: list[list[float]] = []
    for x in s.values:
        if groups and groups[-1][0] - x <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    return MultiplicityPattern(tuple((float(np.mean(g)), len(g)) for g in groups), tol)


def group_labels(s: Spectrum, tol: float = GROUP_TOL) -> list[int]:
    """Group index of each of the nine positions."""
    labels = []
    for k, (_, n) in enumerate(pattern(s, tol).groups):
        labels.extend([k] * n)
    return labels


@dataclass(frozen=True)
class ThreeLevel:
    a: float
    b: float
    c: float
    mu_a: int
    mu_b: int
    mu_c: int = field(default=0)

    def __post_init__(self):
        if self.mu_c == 0:
            object.__setattr__(self, "mu_c", 9 - self.mu_a - self.mu_b)
        if min(self.mu_a, self.mu_b, self.mu_c) < 1 or self.mu_a + self.mu_b + self.mu_c != 9:
            raise ValueError(f"bad multiplicities {(self.mu_a, self.mu_b, self.mu_c)}")

    @property
    def mu(self) -> tuple[int, int, int]:
        return (self.mu_a, self.mu_b, self.mu_c)


def from_three_level(t: ThreeLevel) -> Spectrum:
    if not (t.a > t.b > t.c):
        raise OrderViolation(f"need a > b > c, got {(t.a, t.b, t.c)}")
    return make_spectrum([t.a] * t.mu_a + [t.b] * t.mu_b + [t.c] * t.mu_c)


def uniform() -> Spectrum:
    return make_spectrum(np.full(9, 1.0 / 9.0))
