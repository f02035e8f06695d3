from fractions import Fraction

import numpy as np
import pytest

from anticheeger.graph import (
    GraphError,
    build_graph,
    cut_value,
    discrete_objectives,
    exact_objectives,
    is_connected,
    random_graph,
    volume,
)


def test_path_degrees(p3):
    assert p3.d.tolist() == [1, 2, 1]
    assert p3.vol == 4


def test_triangle_degrees(k3):
    assert k3.d.tolist() == [2, 2, 2]
    assert k3.vol == 6


def test_petersen_cached_volume(pet):
    assert pet.n == 10 and pet.m == 15
    assert np.all(pet.d == 3)
    assert pet.vol == 30


@pytest.mark.parametrize(
    "edges, msg",
    [
        ([(0, 0, 1)], "self-loop"),
        ([(0, 1, -1)], "nonnegative"),
        ([(0, 1, 1), (1, 0, 2)], "duplicate"),
        ([(0, 3, 1)], "out of range"),
        ([(0, 1, float("nan"))], "finite"),
    ],
)
def test_build_graph_rejects(edges, msg):
    with pytest.raises(GraphError, match=msg):
        build_graph(3, edges)


def test_arrays_are_frozen(p3):
    with pytest.raises(ValueError):
        p3.w[0] = 5.0


def test_adjacency_symmetric():
    g = random_graph(9, 0.5, np.random.default_rng(4), wmax=4)
    adj = g.adjacency
    for i, nbrs in enumerate(adj):
        for j, w in nbrs:
            assert (i, w) in adj[j]
    assert g.vol == 2 * g.w.sum()


def test_cut_is_complement_symmetric():
    rng = np.random.default_rng(0)
    g = random_graph(10, 0.5, rng, wmax=5)
    for _ in range(20):
        s = rng.random(10) < 0.5
        assert cut_value(g, s) == cut_value(g, ~s)
        assert volume(g, s) + volume(g, ~s) == g.vol


def test_cut_from_index_list(p3):
    assert cut_value(p3, [1]) == 2
    assert discrete_objectives(p3, [1]) == (1.0, 1.0)


def test_trivial_sets_have_zero_ratio(p3):
    assert discrete_objectives(p3, []) == (0.0, 0.0)
    assert discrete_objectives(p3, [0, 1, 2]) == (0.0, 0.0)


def test_exact_objectives_match_float():
    rng = np.random.default_rng(2)
    g = random_graph(8, 0.6, rng, wmax=7)
    for _ in range(30):
        s = rng.random(8) < 0.5
        fa, fm = exact_objectives(g, s)
        a, m = discrete_objectives(g, s)
        assert float(fa) == pytest.approx(a, rel=1e-15)
        assert float(fm) == pytest.approx(m, rel=1e-15)


def test_exact_objectives_need_integers():
    g = build_graph(2, [(0, 1, 0.5)])
    with pytest.raises(GraphError):
        exact_objectives(g, [0])


def test_exact_petersen_balanced_cut(pet):
    # outer cycle against inner pentagram: 5 spokes cut, volumes equal
    s = np.arange(10) < 5
    assert exact_objectives(pet, s) == (Fraction(5, 15), Fraction(10, 30))


def test_random_graph_connected():
    rng = np.random.default_rng(1)
    for _ in range(10):
        assert is_connected(random_graph(7, 0.4, rng))


def test_disconnected_detected():
    assert not is_connected(build_graph(4, [(0, 1, 1), (2, 3, 1)]))
