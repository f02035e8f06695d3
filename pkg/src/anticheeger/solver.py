"""Iteration drivers: CIA0/CIA1 runs, CIA2 mode switching and populations.

Iterates are stored scaled to ||x||_inf = 1. All objectives and
subgradients are scale invariant, and for p = 1 this keeps every iterate in
{-1, 0, 1}^n exactly, so equality tests on r are exact for integer weights.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .functionals import MedianInfo, eval_I, eval_N, threshold_round, weighted_median
from .graph import Graph
from .inner import pnorm, solve_inner
from .subgradient import SubgradientBundle, select

log = logging.getLogger(__name__)

THREADS_ENV = "ANTICHEEGER_THREADS"

_ANTI_SCHEME = {"cia0": "cia0", "cia1": "cia1", "cia2": "cia1"}


class SolverFault(RuntimeError):
    """An internal invariant of the iteration was violated."""


@dataclass(frozen=True)
class SolverConfig:
    p: object = 1
    T_tot: int = 100
    T_eq: int = 3
    L_pop: int = 20
    seed: int = 0
    eq_tol: float = 1e-12
    restarts: int = 1
    max_rounds: int = 100
    threads: int | None = None

    def __post_init__(self):
        if self.T_tot < 1 or self.T_eq < 1 or self.L_pop < 1 or self.restarts < 1:
            raise ValueError("T_tot, T_eq, L_pop and restarts must all be >= 1")
        if self.p not in (1, 2, "inf") and not (isinstance(self.p, float) and np.isinf(self.p)):
            raise ValueError(f"p must be 1, 2 or 'inf', got {self.p!r}")


@dataclass
class IterationState:
    k: int
    x: np.ndarray
    r: float
    mode: str
    scheme: str
    bundle: SubgradientBundle
    stall: int = 0
    best_anti: float = -1.0
    best_anti_x: np.ndarray | None = None
    best_max: float = -1.0
    best_max_x: np.ndarray | None = None


@dataclass
class RunRecord:
    trace: list[tuple[int, str, float]]
    final_cut: np.ndarray
    final_anti: float
    max_cut: np.ndarray
    final_max: float
    best_F_anti: float
    best_F_max: float
    switches: int
    seed: object
    converged_local: bool
    final_x: np.ndarray
    best_x: np.ndarray
    steps: int


@dataclass
class PopulationResult:
    rounds: int
    best: RunRecord
    value_history: list[float] = field(default_factory=list)
    total_steps: int = 0
    best_max: float = 0.0  # best rounded maxcut ratio over every member run


def _require_edges(g: Graph) -> None:
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if g.vol <= 0:
        raise ValueError("graph has no edges of positive weight")


def _unit(x: np.ndarray) -> np.ndarray:
    return x / np.max(np.abs(x))


def both_objectives(g: Graph, x: np.ndarray, med: MedianInfo | None = None) -> tuple[float, float]:
    """(F_anti, F_max) at a nonzero x, sharing the I(x) evaluation."""
    m = float(np.abs(x).max())
    i = eval_I(g, x)
    return i / (2.0 * g.vol * m - eval_N(g, x, med)), i / (g.vol * m)


def unchanged(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a))


def init_spectral(g: Graph, tol: float = 1e-8, max_iter: int = 5000, p=2) -> np.ndarray:
    """Power iteration for the top eigenvector of the Laplacian D - W.

    Starts from the alternating vector (+1, -1, +1, ...) and returns the
    iterate normalized to ||x||_p = 1.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    x = np.where(np.arange(g.n) % 2 == 0, 1.0, -1.0)
    x /= np.linalg.norm(x)
    for it in range(max_iter):
        y = g.d * x - kernels.adjacency_matvec(g.ei, g.ej, g.w, x, g.n)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            raise ValueError("start vector lies in the Laplacian null space")
        y /= ny
        done = float(np.max(np.abs(y - x))) < tol
        x = y
        if done:
            break
    else:
        log.debug("power iteration stopped at max_iter=%d", max_iter)
    return x / pnorm(x, p)


def certify_local(g: Graph, x, tol: float = 1e-12) -> bool:
    """True iff no single sign flip x_i -> -x_i increases F_anti beyond ``tol``."""
    x = np.asarray(x, dtype=np.float64)
    m = float(np.max(np.abs(x)))
    if m == 0.0:
        raise ValueError("x must be nonzero")
    f, _ = both_objectives(g, x)
    bound = f + tol * max(1.0, f)
    ternary = np.all((x == m) | (x == -m) | (x == 0.0))
    if ternary:
        return bool(np.all(_ternary_flip_values(g, x / m) <= bound))
    for i in np.flatnonzero(x):
        y = x.copy()
        y[i] = -y[i]
        if both_objectives(g, y)[0] > bound:
            return False
    return True


def _ternary_flip_values(g: Graph, x: np.ndarray) -> np.ndarray:
    """F_anti(R_i x) for every i, for x in {-1, 0, 1}^n, in O(n + m)."""
    d = g.d
    vol = g.vol
    i_now = eval_I(g, x)
    gain = kernels.flip_gain(g.ei, g.ej, g.w, x, g.n)
    mp = float(d[x > 0].sum())
    mm = float(d[x < 0].sum())
    # flipping i moves d_i between the +1 and -1 classes
    new_mp = mp - d * (x > 0) + d * (x < 0)
    new_mm = mm + d * (x > 0) - d * (x < 0)
    mid = vol - new_mp - new_mm
    n_new = np.where(
        2.0 * new_mm >= vol,
        mid + 2.0 * new_mp,
        np.where(2.0 * (new_mm + mid) >= vol, new_mm + new_mp, 2.0 * new_mm + mid),
    )
    vals = (i_now + gain) / (2.0 * vol - n_new)
    f_now = i_now / (2.0 * vol - eval_N(g, x))
    return np.where(x == 0.0, f_now, vals)


def _start(g: Graph, x0: np.ndarray, mode: str, scheme: str, rng) -> IterationState:
    x = _unit(np.asarray(x0, dtype=np.float64))
    med = weighted_median(g, x)
    fa, fm = both_objectives(g, x, med)
    r = fa if mode == "anti" else fm
    bundle = select(scheme, g, x, r, rng, med)
    return IterationState(
        k=0, x=x, r=r, mode=mode, scheme=scheme, bundle=bundle,
        best_anti=fa, best_anti_x=x, best_max=fm, best_max_x=x,
    )


def cia_step(g: Graph, state: IterationState, cfg: SolverConfig, rng) -> IterationState:
    """One three-step update: inner solve, new ratio, new subgradient."""
    try:
        sol = solve_inner(state.r, state.bundle.s, cfg.p, rng)
    except ValueError as exc:
        raise SolverFault(f"inner solve failed at step {state.k}: {exc}") from exc
    x = sol.x_unit
    med = weighted_median(g, x)
    fa, fm = both_objectives(g, x, med)
    r = fa if state.mode == "anti" else fm
    stall = state.stall + 1 if unchanged(r, state.r, cfg.eq_tol) else 0
    bundle = select(state.scheme, g, x, r, rng, med)
    better_anti = fa > state.best_anti
    better_max = fm > state.best_max
    return IterationState(
        k=state.k + 1, x=x, r=r, mode=state.mode, scheme=state.scheme, bundle=bundle, stall=stall,
        best_anti=fa if better_anti else state.best_anti,
        best_anti_x=x if better_anti else state.best_anti_x,
        best_max=fm if better_max else state.best_max,
        best_max_x=x if better_max else state.best_max_x,
    )


def _switch(g: Graph, state: IterationState, scheme: str, rng) -> IterationState:
    mode = "max" if state.mode == "anti" else "anti"
    med = weighted_median(g, state.x)
    fa, fm = both_objectives(g, state.x, med)
    r = fa if mode == "anti" else fm
    bundle = select(scheme, g, state.x, r, rng, med)
    return replace(state, mode=mode, scheme=scheme, r=r, stall=0, bundle=bundle)


def _record(g: Graph, state: IterationState, trace, switches, seed) -> RunRecord:
    cut, anti = threshold_round(g, state.best_anti_x, "anti")
    mcut, mx = threshold_round(g, state.best_max_x, "max")
    return RunRecord(
        trace=trace, final_cut=cut, final_anti=anti, max_cut=mcut, final_max=mx,
        best_F_anti=state.best_anti, best_F_max=state.best_max, switches=switches,
        seed=seed, converged_local=certify_local(g, state.x), final_x=state.x,
        best_x=state.best_anti_x, steps=state.k,
    )


def _rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def run_single(g: Graph, algo: str, cfg: SolverConfig, rng=None, x0=None, seed=None) -> RunRecord:
    """A fixed-budget CIA0 or CIA1 run in anti-Cheeger mode."""
    if algo not in ("cia0", "cia1"):
        raise ValueError(f"algo must be 'cia0' or 'cia1', got {algo!r}")
    _require_edges(g)
    seed = cfg.seed if seed is None else seed
    rng = _rng_for(seed) if rng is None else rng
    x0 = init_spectral(g) if x0 is None else x0
    state = _start(g, x0, "anti", algo, rng)
    trace = [(0, "anti", state.r)]
    while state.k < cfg.T_tot:
        state = cia_step(g, state, cfg, rng)
        trace.append((state.k, "anti", state.r))
    return _record(g, state, trace, 0, seed)


def run_cia2(g: Graph, cfg: SolverConfig, rng=None, x0=None, seed=None) -> RunRecord:
    """CIA1 iterations that hand over to maxcut iterations after T_eq stalled
    steps, and back again; T_tot bounds the combined step count."""
    _require_edges(g)
    seed = cfg.seed if seed is None else seed
    rng = _rng_for(seed) if rng is None else rng
    x0 = init_spectral(g) if x0 is None else x0
    state = _start(g, x0, "anti", "cia1", rng)
    trace = [(0, "anti", state.r)]
    switches = 0
    while state.k < cfg.T_tot:
        state = cia_step(g, state, cfg, rng)
        trace.append((state.k, state.mode, state.r))
        if state.k >= cfg.T_tot:
            break
        if state.stall >= cfg.T_eq:
            scheme = "max" if state.mode == "anti" else "cia1"
            state = _switch(g, state, scheme, rng)
            switches += 1
    return _record(g, state, trace, switches, seed)


def thread_count(cfg: SolverConfig) -> int:
    if cfg.threads is not None:
        return max(1, int(cfg.threads))
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _best(records: list[RunRecord]) -> RunRecord:
    # lowest index wins ties, independent of execution order
    best = records[0]
    for rec in records[1:]:
        if rec.final_anti > best.final_anti:
            best = rec
    return best


def run_restarts(g: Graph, algo: str, cfg: SolverConfig, x0=None) -> tuple[RunRecord, list[RunRecord]]:
    """``cfg.restarts`` independent runs from the same initial vector.

    Returns the best record (by rounded anti-Cheeger value) and all records.
    """
    _require_edges(g)
    x0 = init_spectral(g) if x0 is None else x0
    if algo == "cia2":
        fn = lambda k: run_cia2(g, cfg, x0=x0, seed=(cfg.seed, 0, k))  # noqa: E731
    else:
        fn = lambda k: run_single(g, algo, cfg, x0=x0, seed=(cfg.seed, 0, k))  # noqa: E731
    records = _map(fn, list(range(cfg.restarts)), thread_count(cfg))
    return _best(records), records


def run_population(g: Graph, cfg: SolverConfig, x0=None) -> PopulationResult:
    """Rounds of ``L_pop`` CIA2 runs; each round restarts from the best
    anti-Cheeger iterate of the best run so far, and the loop stops once the
    population value stops changing."""
    _require_edges(g)
    start = init_spectral(g) if x0 is None else np.asarray(x0, dtype=np.float64)
    history: list[float] = []
    best: RunRecord | None = None
    total = 0
    best_max = 0.0
    threads = thread_count(cfg)
    for rnd in range(1, cfg.max_rounds + 1):
        members = list(range(cfg.L_pop))
        x_init = start
        records = _map(lambda k: run_cia2(g, cfg, x0=x_init, seed=(cfg.seed, rnd, k)), members, threads)
        total += sum(rec.steps for rec in records)
        best_max = max([best_max] + [rec.final_max for rec in records])
        top = _best(records)
        if best is None or top.final_anti > best.final_anti:
            best = top
        history.append(best.final_anti)
        log.info("round %d: population value %.10g", rnd, best.final_anti)
        if len(history) >= 2 and unchanged(history[-1], history[-2], cfg.eq_tol):
            break
        start = best.best_x
    return PopulationResult(
        rounds=len(history), best=best, value_history=history, total_steps=total, best_max=best_max
    )
