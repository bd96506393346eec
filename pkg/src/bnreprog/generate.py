"""Random Boolean networks for property testing and benchmarks."""

from __future__ import annotations

import numpy as np

from .core import MAX_NODES, BooleanNetwork
from .formula import NetworkSpec, Not, Var, conj, disj


def random_formula(rng: np.random.Generator, n: int, max_inputs: int = 3, p_negative: float = 0.25):
    """A random formula over 1..``max_inputs`` distinct inputs.

    Literals are positive with probability ``1 - p_negative``, which biases
    the networks towards monotone activation.
    """
    k = int(rng.integers(1, min(max_inputs, n) + 1))
    inputs = rng.choice(n, size=k, replace=False)
    lits = []
    for u in inputs.tolist():
        lit = Var(u)
        if rng.random() < p_negative:
            lit = Not(lit)
        lits.append(lit)
    # random and/or tree over the literals
    while len(lits) > 1:
        i, j = sorted(rng.choice(len(lits), size=2, replace=False).tolist())
        b = lits.pop(j)
        a = lits.pop(i)
        lits.append(conj(a, b) if rng.random() < 0.5 else disj(a, b))
    return lits[0]


def random_network(rng: np.random.Generator, n: int, max_inputs: int = 3, p_negative: float = 0.25,
                   max_n: int = MAX_NODES) -> BooleanNetwork:
    names = tuple(f"x{i + 1}" for i in range(n))
    formulas = tuple(random_formula(rng, n, max_inputs, p_negative) for _ in range(n))
    return BooleanNetwork(NetworkSpec(names, formulas), max_n=max_n)
