"""Continuous objectives on R^n and rounding back to cuts.

All functionals are 1-homogeneous in ``x`` except the ratios, which are
0-homogeneous, so callers may keep iterates at any positive scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph, as_vertex_set, discrete_objectives


@dataclass(frozen=True)
class StateVector:
    """An iterate together with its extreme-value index classes."""

    x: np.ndarray
    norm_inf: float
    plus: np.ndarray
    minus: np.ndarray
    inner: np.ndarray

    @classmethod
    def of(cls, x) -> "StateVector":
        x = np.asarray(x, dtype=np.float64)
        m = float(np.abs(x).max()) if x.size else 0.0
        if m == 0.0:
            raise ValueError("state vector must be nonzero")
        plus = x == m
        minus = x == -m
        return cls(x=x, norm_inf=m, plus=plus, minus=minus, inner=~(plus | minus))


@dataclass(frozen=True)
class MedianInfo:
    alpha_lo: float
    alpha_hi: float
    alpha: float
    S_alpha: np.ndarray
    A: float
    B: float
    N: float  # the minimal value, the same for every alpha in the interval


def _as_array(x) -> np.ndarray:
    if isinstance(x, StateVector):
        return x.x
    return np.asarray(x, dtype=np.float64)


def _nonzero_inf_norm(x: np.ndarray) -> float:
    m = float(np.abs(x).max()) if x.size else 0.0
    if m == 0.0:
        raise ValueError("objective undefined at x = 0")
    return m


def eval_I(g: Graph, x) -> float:
    """sum over edges of w_ij |x_i - x_j|."""
    x = _as_array(x)
    return float(np.dot(g.w, np.abs(x[g.ei] - x[g.ej])))


def median_interval(d: np.ndarray, x: np.ndarray) -> tuple[float, float]:
    """Endpoints of the set of minimizers of c -> sum d_i |x_i - c|.

    The minimizers are the c with at most half the mass strictly on either
    side, so both endpoints are data values.
    """
    lo, hi, _, _, _ = kernels.median_stats(np.ascontiguousarray(x, dtype=np.float64), d)
    return lo, hi


def weighted_median(g: Graph, x, endpoint: str = "lo") -> MedianInfo:
    """Weighted median of ``x`` under vertex degrees.

    ``S_alpha``, ``A`` and ``B`` refer to the representative ``alpha``, which
    is the lower end of the median interval unless ``endpoint='hi'``.
    """
    x = np.ascontiguousarray(_as_array(x), dtype=np.float64)
    lo, hi, A, B, N = kernels.median_stats(x, g.d)
    if endpoint == "lo":
        alpha = lo
    elif endpoint == "hi":
        alpha = hi
        A = float(g.d[x < alpha].sum() - g.d[x > alpha].sum())
        B = float(g.d[x == alpha].sum())
    else:
        raise ValueError(f"endpoint must be 'lo' or 'hi', got {endpoint!r}")
    return MedianInfo(alpha_lo=lo, alpha_hi=hi, alpha=alpha, S_alpha=x == alpha, A=A, B=B, N=N)


def eval_N(g: Graph, x, median: MedianInfo | None = None) -> float:
    """min over c of sum d_i |x_i - c|, attained at any weighted median."""
    if median is not None:
        return median.N
    x = np.ascontiguousarray(_as_array(x), dtype=np.float64)
    return kernels.median_stats(x, g.d)[4]


def eval_F_anti(g: Graph, x) -> float:
    """I(x) / (2 vol ||x||_inf - N(x))."""
    x = _as_array(x)
    m = _nonzero_inf_norm(x)
    return eval_I(g, x) / (2.0 * g.vol * m - eval_N(g, x))


def eval_F_max(g: Graph, x) -> float:
    """I(x) / (vol ||x||_inf)."""
    x = _as_array(x)
    m = _nonzero_inf_norm(x)
    return eval_I(g, x) / (g.vol * m)


def eval_Q(g: Graph, x, r: float) -> float:
    """(I(x) + r N(x)) / (2 vol)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    x = _as_array(x)
    _nonzero_inf_norm(x)
    return (eval_I(g, x) + r * eval_N(g, x)) / (2.0 * g.vol)


def objective(g: Graph, x, mode: str) -> float:
    if mode == "anti":
        return eval_F_anti(g, x)
    if mode == "max":
        return eval_F_max(g, x)
    raise ValueError(f"unknown objective {mode!r}")


def cut_vector(g: Graph, s) -> np.ndarray:
    """1_S - 1_{S^c} as floats."""
    mask = as_vertex_set(g, s)
    return np.where(mask, 1.0, -1.0)


def threshold_round(g: Graph, x, mode: str = "anti") -> tuple[np.ndarray, float]:
    """Best level set {x_i > theta} over all distinct values theta of x.

    Returns the vertex mask and its discrete ratio for ``mode`` ('anti' or
    'max'). Ties go to the largest theta.
    """
    x = _as_array(x)
    n = g.n
    order = np.argsort(-x, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    a = np.minimum(rank[g.ei], rank[g.ej])
    b = np.maximum(rank[g.ei], rank[g.ej])
    # prefix of size k cuts edge (a, b) iff a < k <= b
    diff = np.zeros(n + 2)
    np.add.at(diff, a + 1, g.w)
    np.add.at(diff, b + 1, -g.w)
    cut = np.cumsum(diff)[1 : n + 1]
    vol_in = np.cumsum(g.d[order])
    xs = x[order]
    last = np.ones(n, dtype=bool)
    last[:-1] = xs[:-1] > xs[1:]
    ks = np.flatnonzero(last) + 1
    c = cut[ks - 1]
    vin = vol_in[ks - 1]
    if mode == "anti":
        den = np.maximum(vin, g.vol - vin)
    elif mode == "max":
        den = np.full(ks.size, 0.5 * g.vol)
    else:
        raise ValueError(f"unknown objective {mode!r}")
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(c > 0, c / den, 0.0)
    best = int(np.argmax(ratio))
    mask = np.zeros(n, dtype=bool)
    mask[order[: ks[best]]] = True
    anti, mx = discrete_objectives(g, mask)
    return mask, anti if mode == "anti" else mx
