"""Compare the compiled kernels with the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is timed on
random graphs of a few sizes, followed by a full CIA2 run on the Petersen
graph with each backend.
"""

import argparse
import time

import numpy as np

from anticheeger import _fallback
from anticheeger.graph import petersen, random_graph
from anticheeger.solver import SolverConfig, init_spectral, run_cia2

try:
    from anticheeger import _kernels
except ImportError:  # extension not built
    _kernels = None


def _time(fn, repeat):
    fn()
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def kernel_cases(g, rng):
    x = rng.integers(-1, 2, size=g.n).astype(np.float64)
    x[0] = 1.0
    key = rng.permutation(g.n).astype(np.int64)
    p = rng.standard_normal(g.n)
    q = np.abs(rng.standard_normal(g.n))
    lo, hi, A, B, _ = _fallback.median_stats(x, g.d)
    return {
        "order_sums": lambda m: m.order_sums(g.ei, g.ej, g.w, key, g.n),
        "tie_split": lambda m: m.tie_split(g.ei, g.ej, g.w, x, g.n),
        "flip_gain": lambda m: m.flip_gain(g.ei, g.ej, g.w, x, g.n),
        "adjacency_matvec": lambda m: m.adjacency_matvec(g.ei, g.ej, g.w, x, g.n),
        "median_stats": lambda m: m.median_stats(x, g.d),
        "boundary_indicator": lambda m: m.boundary_indicator(x, p, q, g.d, 1.0, lo, A, B, 0.5, 1),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 800])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not available; only the fallback can be timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20}{'n':>6}{'m':>8}{'python us':>12}{'cython us':>12}{'speedup':>9}")
    for n in args.sizes:
        g = random_graph(n, min(1.0, 48.0 / n), rng, connected=False)
        for name, call in kernel_cases(g, rng).items():
            tp = _time(lambda: call(_fallback), args.repeat) * 1e6
            if _kernels is None:
                print(f"{name:<20}{n:>6}{g.m:>8}{tp:>12.1f}{'-':>12}{'-':>9}")
                continue
            tc = _time(lambda: call(_kernels), args.repeat) * 1e6
            print(f"{name:<20}{n:>6}{g.m:>8}{tp:>12.1f}{tc:>12.1f}{tp / tc:>9.1f}")
        if n <= 16:
            t_py = _time(lambda: _fallback.enumerate_cuts(g.ei, g.ej, g.w, g.d, g.n, 0), 3) * 1e6
            if _kernels is not None:
                t_cy = _time(lambda: _kernels.enumerate_cuts(g.ei, g.ej, g.w, g.d, g.n, 0), 3) * 1e6
                print(f"{'enumerate_cuts':<20}{n:>6}{g.m:>8}{t_py:>12.1f}{t_cy:>12.1f}{t_py / t_cy:>9.1f}")

    # end-to-end: a solver run through each backend
    import anticheeger.kernels as kernels

    g = petersen()
    x0 = init_spectral(g)
    cfg = SolverConfig(T_tot=500)
    backends = [("python", _fallback)] + ([("cython", _kernels)] if _kernels is not None else [])
    saved = {name: getattr(kernels, name) for name in kernels.__all__ if name != "BACKEND"}
    for label, mod in backends:
        for name in saved:
            setattr(kernels, name, getattr(mod, name))
        t0 = time.perf_counter()
        for k in range(20):
            run_cia2(g, cfg, x0=x0, seed=(0, 0, k))
        dt = time.perf_counter() - t0
        print(f"cia2 petersen, 20 runs x 500 steps, {label}: {dt:.2f} s")
    for name, fn in saved.items():
        setattr(kernels, name, fn)


if __name__ == "__main__":
    main()
