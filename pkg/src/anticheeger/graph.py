"""Weighted undirected graphs and the discrete cut objectives."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable weighted graph in edge-list form.

    ``ei[k], ej[k], w[k]`` is the k-th edge. Degrees ``d`` and the total
    volume ``vol`` are cached at construction.
    """

    n: int
    ei: np.ndarray
    ej: np.ndarray
    w: np.ndarray
    d: np.ndarray = field(repr=False)
    vol: float
    name: str = ""

    @property
    def m(self) -> int:
        return int(self.ei.size)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.ei.tolist(), self.ej.tolist(), self.w.tolist()))

    @property
    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for i, j, w in self.edges:
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    @property
    def integral(self) -> bool:
        """True when all weights are integers (exact rational reporting)."""
        return bool(np.all(self.w == np.round(self.w)))

    def dense_laplacian(self) -> np.ndarray:
        L = np.zeros((self.n, self.n))
        np.add.at(L, (self.ei, self.ej), -self.w)
        np.add.at(L, (self.ej, self.ei), -self.w)
        L[np.diag_indices(self.n)] += self.d
        return L


def build_graph(n: int, edge_list: Iterable[Sequence[float]], name: str = "") -> Graph:
    """Validate an edge list and return a :class:`Graph`.

    Rejects self-loops, negative weights, out-of-range endpoints and
    duplicate unordered pairs.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    ei, ej, ws = [], [], []
    seen: set[tuple[int, int]] = set()
    for k, e in enumerate(edge_list):
        if len(e) != 3:
            raise GraphError(f"edge {k}: expected (i, j, w), got {e!r}")
        i, j, wt = int(e[0]), int(e[1]), float(e[2])
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge {k}: endpoint out of range 0..{n - 1}: ({i}, {j})")
        if i == j:
            raise GraphError(f"edge {k}: self-loop at vertex {i}")
        if not np.isfinite(wt) or wt < 0:
            raise GraphError(f"edge {k}: weight must be finite and nonnegative, got {wt}")
        key = (i, j) if i < j else (j, i)
        if key in seen:
            raise GraphError(f"edge {k}: duplicate edge {key}")
        seen.add(key)
        ei.append(i)
        ej.append(j)
        ws.append(wt)
    ei_a = np.asarray(ei, dtype=np.int64)
    ej_a = np.asarray(ej, dtype=np.int64)
    w_a = np.asarray(ws, dtype=np.float64)
    d = np.bincount(ei_a, weights=w_a, minlength=n) + np.bincount(ej_a, weights=w_a, minlength=n)
    for a in (ei_a, ej_a, w_a, d):
        a.setflags(write=False)
    return Graph(n=n, ei=ei_a, ej=ej_a, w=w_a, d=d, vol=float(d.sum()), name=name)


def as_vertex_set(g: Graph, s) -> np.ndarray:
    """Coerce a boolean mask or an iterable of vertex indices to a mask."""
    arr = np.asarray(s)
    if arr.dtype == bool:
        if arr.shape != (g.n,):
            raise GraphError(f"vertex mask has shape {arr.shape}, expected ({g.n},)")
        return arr
    mask = np.zeros(g.n, dtype=bool)
    if arr.size:
        idx = arr.astype(np.int64).ravel()
        if idx.min() < 0 or idx.max() >= g.n:
            raise GraphError("vertex index out of range")
        mask[idx] = True
    return mask


def cut_value(g: Graph, s) -> float:
    """Total weight of edges with exactly one endpoint in ``s``."""
    mask = as_vertex_set(g, s)
    return float(g.w[mask[g.ei] != mask[g.ej]].sum())


def volume(g: Graph, s) -> float:
    return float(g.d[as_vertex_set(g, s)].sum())


def discrete_objectives(g: Graph, s) -> tuple[float, float]:
    """(anti-Cheeger ratio, maxcut ratio) of the cut (S, S^c).

    Both are 0 for S in {empty, V}.
    """
    mask = as_vertex_set(g, s)
    cut = cut_value(g, mask)
    if cut == 0.0:
        return 0.0, 0.0
    vs = float(g.d[mask].sum())
    return cut / max(vs, g.vol - vs), cut / (0.5 * g.vol)


def exact_objectives(g: Graph, s) -> tuple[Fraction, Fraction]:
    """Rational versions of :func:`discrete_objectives` for integer weights."""
    if not g.integral:
        raise GraphError("exact objectives need integer weights")
    mask = as_vertex_set(g, s)
    cut = int(round(cut_value(g, mask)))
    vs = int(round(float(g.d[mask].sum())))
    vol = int(round(g.vol))
    if cut == 0:
        return Fraction(0), Fraction(0)
    return Fraction(cut, max(vs, vol - vs)), Fraction(2 * cut, vol)


def petersen() -> Graph:
    """The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9."""
    edges = [(i, (i + 1) % 5, 1) for i in range(5)]
    edges += [(i, i + 5, 1) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5, 1) for i in range(5)]
    return build_graph(10, edges, name="petersen")


def random_graph(n: int, p: float, rng: np.random.Generator, wmax: int = 1,
                 connected: bool = True, max_tries: int = 1000) -> Graph:
    """Erdos-Renyi G(n, p) with integer weights in [1, wmax].

    With ``connected`` the draw is repeated until the graph is connected.
    """
    for _ in range(max_tries):
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(iu.size) < p
        iu, ju = iu[keep], ju[keep]
        ws = rng.integers(1, wmax + 1, size=iu.size)
        g = build_graph(n, zip(iu.tolist(), ju.tolist(), ws.tolist()))
        if not connected or is_connected(g):
            return g
    raise GraphError(f"no connected G({n}, {p}) sample in {max_tries} tries")


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    adj = g.adjacency
    seen = np.zeros(g.n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j, _ in adj[i]:
            if not seen[j]:
                seen[j] = True
                stack.append(j)
    return bool(seen.all())
