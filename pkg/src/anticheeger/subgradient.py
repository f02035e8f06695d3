"""Subgradient selection for I, N and Q_r = (I + r N) / (2 vol).

Three schemes are provided:

* ``maxcut``: u from the boundary indicator of dI, v = 0, s = u / vol.
* ``cia0``: u as for maxcut and v chosen independently from dN.
* ``cia1``: u and v chosen jointly through an indicator on the boundary of
  dQ_r so that ||s||_1 > r whenever some subgradient of Q_r allows it.

The order-based u needs a permutation sorting (x_i, b_i) lexicographically;
exact ties are broken uniformly at random from the caller's rng.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .functionals import MedianInfo, StateVector, weighted_median
from .graph import Graph


@dataclass(frozen=True)
class IndicatorVector:
    b: np.ndarray
    p: np.ndarray
    q: np.ndarray


@dataclass(frozen=True)
class PermutationContext:
    sigma: np.ndarray  # sigma[k] = vertex at sorted position k
    inverse: np.ndarray  # inverse[i] = sorted position of vertex i


@dataclass(frozen=True)
class SubgradientBundle:
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray
    r: float
    alpha_used: float | None
    indicator: IndicatorVector
    ctx: PermutationContext


def _norm_inf(x: np.ndarray) -> float:
    m = float(np.abs(x).max()) if x.size else 0.0
    if m == 0.0:
        raise ValueError("state vector must be nonzero")
    return m


def _as_state(x) -> np.ndarray:
    if isinstance(x, StateVector):
        return x.x
    return np.ascontiguousarray(x, dtype=np.float64)


def build_indicator_maxcut(g: Graph, x) -> IndicatorVector:
    """Boundary indicator of dI(x) used by the maxcut and CIA0 schemes."""
    xv = _as_state(x)
    p, q = kernels.tie_split(g.ei, g.ej, g.w, xv, g.n)
    _, b = kernels.boundary_indicator(xv, p, q, g.d, _norm_inf(xv), np.nan, 0.0, 0.0, 0.0, 0)
    return IndicatorVector(b=b, p=p, q=q)


def sort_context(x: np.ndarray, b: np.ndarray, rng: np.random.Generator | None) -> PermutationContext:
    """Permutation ordering (x_i, b_i) lexicographically, random among exact ties."""
    n = x.size
    tiebreak = rng.permutation(n) if rng is not None else np.arange(n)
    sigma = np.lexsort((tiebreak, b, x))
    inverse = np.empty(n, dtype=np.int64)
    inverse[sigma] = np.arange(n)
    return PermutationContext(sigma=sigma, inverse=inverse)


def select_u(g: Graph, x, ctx: PermutationContext) -> np.ndarray:
    """u_i = sum_j w_ij sign(rank_i - rank_j), an element of dI(x)."""
    return kernels.order_sums(g.ei, g.ej, g.w, ctx.inverse, g.n)


def select_maxcut(g: Graph, x, rng: np.random.Generator | None = None) -> SubgradientBundle:
    xv = _as_state(x)
    ind = build_indicator_maxcut(g, xv)
    ctx = sort_context(xv, ind.b, rng)
    u = select_u(g, xv, ctx)
    v = np.zeros(g.n)
    return SubgradientBundle(u=u, v=v, s=u / g.vol, r=0.0, alpha_used=None, indicator=ind, ctx=ctx)


def _check_r(r: float) -> None:
    if r < 0:
        raise ValueError("r must be nonnegative")


def select_cia0(
    g: Graph, x, r: float, rng: np.random.Generator | None = None, med: MedianInfo | None = None
) -> SubgradientBundle:
    """u from the dI indicator, v from dN at the median, independently.

    ``med`` may carry a precomputed lower weighted median of ``x``.
    """
    _check_r(r)
    xv = _as_state(x)
    m = _norm_inf(xv)
    med = weighted_median(g, xv) if med is None else med
    p, q = kernels.tie_split(g.ei, g.ej, g.w, xv, g.n)
    # v on its own; the indicator for u carries no shift
    v, _ = kernels.boundary_indicator(xv, p, q, g.d, m, med.alpha, med.A, med.B, 0.0, 0)
    _, b = kernels.boundary_indicator(xv, p, q, g.d, m, np.nan, 0.0, 0.0, 0.0, 0)
    ctx = sort_context(xv, b, rng)
    u = select_u(g, xv, ctx)
    s = (u + r * v) / (2.0 * g.vol)
    return SubgradientBundle(
        u=u, v=v, s=s, r=r, alpha_used=med.alpha, indicator=IndicatorVector(b=b, p=p, q=q), ctx=ctx
    )


def select_cia1(
    g: Graph, x, r: float, rng: np.random.Generator | None = None, med: MedianInfo | None = None
) -> SubgradientBundle:
    """Joint boundary selection of u in dI(x) and v in dN(x)."""
    _check_r(r)
    xv = _as_state(x)
    m = _norm_inf(xv)
    med = weighted_median(g, xv) if med is None else med
    p, q = kernels.tie_split(g.ei, g.ej, g.w, xv, g.n)
    a, b = kernels.boundary_indicator(xv, p, q, g.d, m, med.alpha, med.A, med.B, r, 1)
    ctx = sort_context(xv, b, rng)
    u = select_u(g, xv, ctx)

    members = np.flatnonzero(med.S_alpha)
    if members.size <= 1:
        v = a
    else:
        # the alpha class is contiguous in sigma; one special vertex keeps its
        # endpoint value and the rest share what is left of A
        ranks = ctx.inverse[members]
        first = int(members[np.argmin(ranks)])
        last = int(members[np.argmax(ranks)])
        if med.alpha == m:
            k = first
        elif med.alpha == -m:
            k = last
        else:
            k = last if abs(b[last]) > abs(b[first]) else first
        rest = med.B - g.d[k]
        scale = (med.A - a[k]) / rest if rest != 0.0 else 0.0
        v = a.copy()
        v[members] = scale * g.d[members]
        v[k] = a[k]

    s = (u + r * v) / (2.0 * g.vol)
    return SubgradientBundle(
        u=u, v=v, s=s, r=r, alpha_used=med.alpha,
        indicator=IndicatorVector(b=b, p=p, q=q), ctx=ctx,
    )


SCHEMES = {"cia0": select_cia0, "cia1": select_cia1}


def select(
    scheme: str, g: Graph, x, r: float, rng: np.random.Generator | None = None, med: MedianInfo | None = None
) -> SubgradientBundle:
    """Dispatch on scheme name: 'cia0', 'cia1' or 'max'."""
    if scheme == "max":
        return select_maxcut(g, x, rng)
    try:
        fn = SCHEMES[scheme]
    except KeyError:
        raise ValueError(f"unknown subgradient scheme {scheme!r}") from None
    return fn(g, x, r, rng, med)
