import sys
from pathlib import Path

import numpy as np
import pytest

from bnreprog.core import BooleanNetwork
from bnreprog.dynamics import cyclic_attractor, fixed_points
from bnreprog.generate import random_network

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def load(name):
    return BooleanNetwork.from_text((DATA / f"{name}.bn").read_text())


def nodes(*one_based):
    """Vertex set from 1-based node numbers."""
    return frozenset(i - 1 for i in one_based)


def family(*sets):
    return {nodes(*s) for s in sets}


@pytest.fixture
def cyclic3():
    return load("cyclic3")


@pytest.fixture
def switch4():
    return load("switch4")


@pytest.fixture
def toggle5():
    return load("toggle5")


@pytest.fixture
def cascade5():
    return load("cascade5")


@pytest.fixture
def triad5():
    return load("triad5")


def random_corpus(seed, count, n_range=(2, 8), max_inputs=3, p_negative=0.25):
    """Random networks whose attractors are all fixed points, at least two of them,
    each paired with a random (source, target) pair of distinct fixed points."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(*n_range))
        f = random_network(rng, n, max_inputs=max_inputs, p_negative=p_negative)
        fps = fixed_points(f)
        if len(fps) < 2 or cyclic_attractor(f) is not None:
            continue
        i, j = rng.choice(len(fps), size=2, replace=False)
        out.append((f, fps[i], fps[j]))
    return out


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
