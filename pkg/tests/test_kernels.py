import numpy as np
import pytest

from anticheeger import _fallback, kernels

from conftest import small_corpus

compiled = pytest.importorskip("anticheeger._kernels")


@pytest.fixture(params=range(25))
def case(request):
    rng = np.random.default_rng(request.param)
    g = small_corpus(1, seed=100 + request.param, n_max=15)[0]
    x = rng.integers(-2, 3, size=g.n).astype(float)
    if not np.any(x):
        x[0] = 1.0
    return g, x


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_edge_sums_bitwise(case):
    g, x = case
    key = np.random.default_rng(0).permutation(g.n).astype(g.ei.dtype)
    for name, arg in (("order_sums", key), ("flip_gain", x), ("adjacency_matvec", x)):
        a = getattr(_fallback, name)(g.ei, g.ej, g.w, arg, g.n)
        b = getattr(compiled, name)(g.ei, g.ej, g.w, arg, g.n)
        assert np.array_equal(a, b), name
    pa, qa = _fallback.tie_split(g.ei, g.ej, g.w, x, g.n)
    pb, qb = compiled.tie_split(g.ei, g.ej, g.w, x, g.n)
    assert np.array_equal(pa, pb) and np.array_equal(qa, qb)


def test_median_stats(case):
    g, x = case
    assert _fallback.median_stats(x, g.d) == compiled.median_stats(x, g.d)


def test_boundary_indicator(case):
    g, x = case
    p, q = _fallback.tie_split(g.ei, g.ej, g.w, x, g.n)
    m = float(np.abs(x).max())
    lo, _, A, B, _ = _fallback.median_stats(x, g.d)
    for alpha, a_, b_, r, joint in ((lo, A, B, 0.4, 1), (lo, A, B, 0.0, 0), (np.nan, 0.0, 0.0, 0.0, 0)):
        fa = _fallback.boundary_indicator(x, p, q, g.d, m, alpha, a_, b_, r, joint)
        fc = compiled.boundary_indicator(x, p, q, g.d, m, alpha, a_, b_, r, joint)
        assert np.array_equal(fa[0], fc[0]) and np.array_equal(fa[1], fc[1])


def test_enumerate_cuts(case):
    g, _ = case
    for obj in (0, 1):
        assert _fallback.enumerate_cuts(g.ei, g.ej, g.w, g.d, g.n, obj) == compiled.enumerate_cuts(
            g.ei, g.ej, g.w, g.d, g.n, obj
        )


def test_flip_gain_definition(case):
    g, x = case
    gain = _fallback.flip_gain(g.ei, g.ej, g.w, x, g.n)
    base = float(np.abs(x[g.ei] - x[g.ej]) @ g.w)
    for i in range(g.n):
        y = x.copy()
        y[i] = -y[i]
        assert gain[i] == float(np.abs(y[g.ei] - y[g.ej]) @ g.w) - base


def test_backends_give_identical_cli_output(data_dir):
    import os
    import subprocess
    import sys

    argv = [sys.executable, "-m", "anticheeger", "--graph", str(data_dir / "rand8.rud"), "--algo", "cia2",
            "--pop", "3", "--t-tot", "40", "--seed", "2"]
    outs = []
    for pure in ("0", "1"):
        env = dict(os.environ, ANTICHEEGER_PURE=pure)
        outs.append(subprocess.run(argv, env=env, capture_output=True, check=True).stdout)
    assert outs[0] == outs[1]
