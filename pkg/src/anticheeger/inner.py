"""Closed-form minimizer of r ||x||_inf - (x, v) on the unit p-sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# r within this relative distance of ||v||_1 is treated as equal to it
REL_TOL = 1e-12


def _parse_p(p) -> float:
    if p in (1, 2):
        return float(p)
    if p in ("inf", "Inf", "infinity") or (isinstance(p, float) and math.isinf(p)):
        return math.inf
    raise ValueError(f"p must be 1, 2 or inf, got {p!r}")


def sign(v: np.ndarray) -> np.ndarray:
    """Elementwise sign with sign(0) = 1."""
    return np.where(v >= 0, 1.0, -1.0)


def pnorm(x: np.ndarray, p) -> float:
    p = _parse_p(p)
    if math.isinf(p):
        return float(np.abs(x).max())
    if p == 1:
        return float(np.abs(x).sum())
    return float(np.sqrt(np.dot(x, x)))


@dataclass(frozen=True)
class Thresholds:
    order: np.ndarray  # indices sorting |v| descending, stable
    A: np.ndarray  # A[m] for m = 0..n
    prefix: np.ndarray  # prefix[m] = sum of the m largest |v_i|
    m0: int | None
    m1: int


@dataclass(frozen=True)
class InnerSolution:
    x_star: np.ndarray
    x_unit: np.ndarray  # x_star / ||x_star||_inf, exact for p = 1
    scenario: int
    m0: int | None
    m1: int | None
    support_m: int
    L: float
    free_indices: np.ndarray


def thresholds(v, r: float) -> Thresholds:
    """m0 = min{m: A(m) > r}, m1 = max{m: A(m-1) < r} for 0 < r <= ||v||_1.

    ``A(m) = sum_{j<=m} (|v_j| - |v_{m+1}|)`` over |v| sorted descending with
    |v_{n+1}| = 0. ``m0`` is None when r equals ||v||_1.
    """
    v = np.asarray(v, dtype=np.float64)
    absv = np.abs(v)
    norm1 = float(absv.sum())
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if r > norm1 * (1.0 + REL_TOL):
        raise ValueError(f"r = {r} exceeds ||v||_1 = {norm1}")
    n = v.size
    order = np.argsort(-absv, kind="stable")
    a = absv[order]
    prefix = np.zeros(n + 1)
    np.cumsum(a, out=prefix[1:])
    nxt = np.zeros(n)
    nxt[:-1] = a[1:]
    A = np.zeros(n + 1)
    A[1:] = prefix[1:] - np.arange(1, n + 1) * nxt
    above = np.flatnonzero(A[1:] > r)
    m0 = int(above[0]) + 1 if above.size else None
    below = np.flatnonzero(A[:n] < r)
    m1 = int(below[-1]) + 1
    return Thresholds(order=order, A=A, prefix=prefix, m0=m0, m1=m1)


def _is_boundary(r: float, norm1: float) -> bool:
    return norm1 - r <= REL_TOL * norm1


def _check(r: float, v: np.ndarray) -> float:
    norm1 = float(np.abs(v).sum())
    if norm1 == 0.0:
        raise ValueError("v must be nonzero")
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if r > norm1 * (1.0 + REL_TOL):
        raise ValueError(f"r = {r} exceeds ||v||_1 = {norm1}")
    return norm1


def solve_inner(r: float, v, p=1, rng: np.random.Generator | None = None) -> InnerSolution:
    """Minimize r ||x||_inf - (x, v) subject to ||x||_p = 1.

    For p = 1 the solution set is a face of the l1 sphere; indices strictly
    between m1 and m0 are set to 0 or 1 by independent coin flips from
    ``rng`` so the result is an extreme point (all zeros without an rng).
    """
    v = np.asarray(v, dtype=np.float64)
    pp = _parse_p(p)
    norm1 = _check(r, v)
    n = v.size
    sg = sign(v)
    empty = np.empty(0, dtype=np.int64)

    if math.isinf(pp) or _is_boundary(r, norm1):
        unit = sg
        x = unit / pnorm(unit, pp)
        L = 0.0 if _is_boundary(r, norm1) else r - norm1
        return InnerSolution(x, unit, 3, None, None, n, L, empty)

    th = thresholds(v, r)
    m0, m1, order = th.m0, th.m1, th.order
    if m0 is None:  # r and ||v||_1 differ only by summation order
        return InnerSolution(sg / pnorm(sg, pp), sg, 3, None, None, n, 0.0, empty)
    absv = np.abs(v)
    if pp == 1:
        z = np.zeros(n)
        z[order[:m1]] = 1.0
        free = np.sort(order[m1 : m0 - 1]) if m0 - 1 > m1 else empty
        if free.size and rng is not None:
            z[free] = rng.integers(0, 2, size=free.size).astype(np.float64)
        unit = sg * z
        k = float(z.sum())
        x = unit / k
        L = (r - float(np.dot(z, absv))) / k
        return InnerSolution(x, unit, 2, m0, m1, m1, L, free)

    scale = m0 / (th.prefix[m0] - r)
    z = np.minimum(1.0, (scale * absv) ** (1.0 / (pp - 1.0)))
    unit = sg * z
    nz = pnorm(z, pp)
    x = unit / nz
    L = (r - float(np.dot(z, absv))) / nz
    return InnerSolution(x, unit, 1, m0, m1, m0, L, empty)


def min_value_L(r: float, v, p=1) -> float:
    """Minimal value of r ||x||_inf - (x, v) on the unit p-sphere."""
    v = np.asarray(v, dtype=np.float64)
    pp = _parse_p(p)
    norm1 = _check(r, v)
    if _is_boundary(r, norm1):
        return 0.0
    if math.isinf(pp):
        return r - norm1
    th = thresholds(v, r)
    if th.m0 is None:
        return 0.0
    if pp == 1:
        return (r - th.prefix[th.m0]) / th.m0
    absv = np.abs(v)
    scale = th.m0 / (th.prefix[th.m0] - r)
    z = np.minimum(1.0, (scale * absv) ** (1.0 / (pp - 1.0)))
    return (r - float(np.dot(z, absv))) / pnorm(z, pp)
