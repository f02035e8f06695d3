"""Independent ground truth for small instances.

* :func:`exhaustive_best` enumerates every cut of a graph with n <= 24.
* :func:`verify_inner` and the two ``inner_oracle_*`` functions check the
  closed-form inner solver against sampling and against solutions built by
  a different route (support enumeration for p = 1, a per-support
  one-dimensional minimization for p = 2).
* :func:`verify_membership` certifies subgradients through the Euler
  identity and the defining inequality f(y) >= (s, y) on sampled y.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .functionals import eval_I, eval_N
from .graph import Graph, GraphError
from .inner import InnerSolution, _parse_p, pnorm

MAX_ORACLE_N = 24
INNER_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9
# all ternary directions are probed up to this dimension (3^8 = 6561)
TERNARY_PROBE_N = 8

_OBJECTIVES = {"anti": 0, "max": 1}


@dataclass(frozen=True)
class OracleResult:
    best_value: float
    best_set: np.ndarray
    evaluated: int
    exact: Fraction | None = None  # set for integer weights


def exhaustive_best(g: Graph, objective: str = "anti") -> OracleResult:
    """Best cut ratio over all 2^(n-1) sets S containing vertex 0.

    Ties go to the set with the smallest bitmask over vertices 1..n-1.
    """
    if objective not in _OBJECTIVES:
        raise ValueError(f"objective must be 'anti' or 'max', got {objective!r}")
    if g.n > MAX_ORACLE_N:
        raise GraphError(
            f"exhaustive search is capped at n = {MAX_ORACLE_N} (got n = {g.n}); "
            "use the iterative solver for larger graphs"
        )
    if g.n < 2:
        raise GraphError("need at least two vertices")
    mask, cut, den = kernels.enumerate_cuts(g.ei, g.ej, g.w, g.d, g.n, _OBJECTIVES[objective])
    best = np.zeros(g.n, dtype=bool)
    best[0] = True
    best[1:] = (mask >> np.arange(g.n - 1)) & 1
    value = cut / den if cut > 0 else 0.0
    exact = None
    if g.integral:
        # den is an integer volume, or vol / 2 for maxcut
        exact = Fraction(int(round(2 * cut)), int(round(2 * den))) if cut > 0 else Fraction(0)
    return OracleResult(best_value=value, best_set=best, evaluated=1 << (g.n - 1), exact=exact)


def inner_objective(r: float, v: np.ndarray, x: np.ndarray) -> float:
    return float(r * np.abs(x).max() - np.dot(x, v))


def inner_oracle_p1(r: float, v) -> float:
    """Minimum over the unit l1 sphere by enumerating support sizes.

    Extreme points of the minimizing face are sign(v_i)/k on the k largest
    |v_i|, so the minimum is min_k (r - top_k) / k.
    """
    a = np.sort(np.abs(np.asarray(v, dtype=np.float64)))[::-1]
    best = math.inf
    top = 0.0
    for k in range(1, a.size + 1):
        top += a[k - 1]
        best = min(best, (r - top) / k)
    return best


def inner_oracle_p2(r: float, v) -> tuple[float, np.ndarray]:
    """Minimum over the unit l2 sphere and a minimizer.

    A minimizer clips the k largest |v_i| to a common level t and keeps the
    rest proportional to |v_i|. For each k the objective
    (r - S_k) t - sqrt(R_k (1 - k t^2)) is convex in t with an explicit
    stationary point; each candidate is built as an actual unit vector and
    scored with the true objective.
    """
    v = np.asarray(v, dtype=np.float64)
    n = v.size
    order = np.argsort(-np.abs(v), kind="stable")
    a = np.abs(v)[order]
    sg = np.where(v[order] >= 0, 1.0, -1.0)
    best, best_x = math.inf, None
    for k in range(0, n + 1):
        S = float(a[:k].sum())
        R = float(np.dot(a[k:], a[k:]))
        if k == 0:
            ts = [None]
        elif R == 0.0:
            ts = [1.0 / math.sqrt(k)]
        else:
            ts = [1.0 / math.sqrt(k), 0.0]
            if S > r:
                c = (S - r) / (k * math.sqrt(R))
                ts.append(math.sqrt(c * c / (1.0 + k * c * c)))
        for t in ts:
            z = np.zeros(n)
            if t is None:
                z = a / math.sqrt(R)
            else:
                z[:k] = t
                if R > 0.0:
                    z[k:] = a[k:] * math.sqrt(max(0.0, 1.0 - k * t * t) / R)
            if not np.isclose(np.linalg.norm(z), 1.0, rtol=0, atol=1e-12):
                continue
            x = np.empty(n)
            x[order] = sg * z
            val = inner_objective(r, v, x)
            if val < best:
                best, best_x = val, x
    return best, best_x


def _sample_sphere(rng: np.random.Generator, n: int, p: float, samples: int) -> np.ndarray:
    y = rng.standard_normal((samples, n))
    if p == 1:
        # uniform directions concentrate away from the l1 vertices, so mix in
        # sparse directions as well
        keep = rng.random((samples, n)) < rng.random((samples, 1))
        keep[np.arange(samples), rng.integers(0, n, samples)] = True
        y = np.where(keep, y, 0.0)
        return y / np.abs(y).sum(axis=1, keepdims=True)
    if math.isinf(p):
        return y / np.abs(y).max(axis=1, keepdims=True)
    return y / np.linalg.norm(y, axis=1, keepdims=True)


def _ternary_directions(n: int, p: float) -> np.ndarray:
    z = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=n)))
    z = z[np.abs(z).sum(axis=1) > 0]
    if p == 1:
        return z / np.abs(z).sum(axis=1, keepdims=True)
    if math.isinf(p):
        return z
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def verify_inner(
    r: float, v, p, candidate: InnerSolution, samples: int = 1000, rng: np.random.Generator | None = None
) -> bool:
    """True iff ``candidate`` is a unit vector attaining its claimed L and no
    sampled unit vector does better by more than the tolerance."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    v = np.asarray(v, dtype=np.float64)
    pp = _parse_p(p)
    rng = np.random.default_rng(0) if rng is None else rng
    x = np.asarray(candidate.x_star, dtype=np.float64)
    if abs(pnorm(x, pp) - 1.0) > INNER_TOL:
        return False
    own = inner_objective(r, v, x)
    if abs(own - candidate.L) > INNER_TOL:
        return False
    ys = _sample_sphere(rng, v.size, pp, samples)
    if v.size <= TERNARY_PROBE_N:
        ys = np.vstack([ys, _ternary_directions(v.size, pp)])
    vals = r * np.abs(ys).max(axis=1) - ys @ v
    return bool(np.all(candidate.L <= vals + INNER_TOL))


def _I_rows(g: Graph, ys: np.ndarray) -> np.ndarray:
    return np.abs(ys[:, g.ei] - ys[:, g.ej]) @ g.w


def _N_rows(g: Graph, ys: np.ndarray) -> np.ndarray:
    # any c with half the mass on each side minimizes sum d_i |y_i - c|
    order = np.argsort(ys, axis=1)
    cum = np.cumsum(g.d[order], axis=1)
    k = np.argmax(2.0 * cum >= g.vol, axis=1)
    c = np.take_along_axis(ys, order, axis=1)[np.arange(ys.shape[0]), k]
    return np.abs(ys - c[:, None]) @ g.d


def verify_membership(g: Graph, x, bundle, samples: int = 200, rng: np.random.Generator | None = None) -> bool:
    """Certificate that bundle.u is in dI(x) and bundle.v in dN(x).

    Checks (u, x) = I(x), (v, x) = N(x), (v, 1) = 0 and, for every sampled
    y, I(y) >= (u, y) and N(y) >= (v, y). A maxcut bundle has v = 0 and
    only needs (v, x) = 0. Samples mix Gaussian directions,
    ternary vectors and small perturbations of x, which probe the faces of
    the subdifferential that matter at x.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(0) if rng is None else rng
    x = np.asarray(x, dtype=np.float64)
    u = np.asarray(bundle.u, dtype=np.float64)
    v = np.asarray(bundle.v, dtype=np.float64)
    scale = np.abs(x).max()
    tol = MEMBERSHIP_TOL * max(1.0, g.vol) * max(1.0, scale)
    if abs(float(np.dot(u, x)) - eval_I(g, x)) > tol:
        return False
    # a maxcut bundle carries v = 0, which only has to satisfy N(y) >= 0
    target = 0.0 if getattr(bundle, "alpha_used", 0.0) is None else eval_N(g, x)
    if abs(float(np.dot(v, x)) - target) > tol:
        return False
    if abs(float(v.sum())) > MEMBERSHIP_TOL * max(1.0, g.vol):
        return False
    n = g.n
    k1 = samples // 3
    k2 = samples // 3
    k3 = samples - k1 - k2
    ys = np.vstack([
        rng.standard_normal((k1, n)),
        rng.integers(-1, 2, size=(k2, n)).astype(np.float64),
        x + scale * 10.0 ** rng.uniform(-6, -1, size=(k3, 1)) * rng.standard_normal((k3, n)),
    ])
    norms = np.maximum(1.0, np.abs(ys).max(axis=1))
    tol_rows = MEMBERSHIP_TOL * max(1.0, g.vol) * norms
    if np.any(_I_rows(g, ys) < ys @ u - tol_rows):
        return False
    return bool(np.all(_N_rows(g, ys) >= ys @ v - tol_rows))
