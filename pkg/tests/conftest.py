import pathlib

import numpy as np
import pytest

from anticheeger.graph import build_graph, petersen, random_graph
from anticheeger.rudy import read_rudy

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def pet():
    return petersen()


@pytest.fixture
def k3():
    return build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], name="k3")


@pytest.fixture
def p3():
    return build_graph(3, [(0, 1, 1), (1, 2, 1)], name="p3")


@pytest.fixture
def edge():
    return build_graph(2, [(0, 1, 1)], name="edge")


def small_corpus(count, seed, n_min=3, n_max=12, wmax=5):
    """Connected G(n, 0.5) graphs with integer weights in [1, wmax]."""
    rng = np.random.default_rng(seed)
    return [random_graph(int(rng.integers(n_min, n_max + 1)), 0.5, rng, wmax=wmax) for _ in range(count)]


def vendored(name):
    return read_rudy(DATA / f"{name}.rud")


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
