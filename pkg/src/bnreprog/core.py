"""Boolean networks, states and permanent mutations.

States are plain ints: bit ``i`` is the value of node ``i``. Vertex sets are
frozensets of 0-based node indices.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionError
from .formula import Const, NetworkSpec, eval_formula, format_state, parse_network, parse_state, render_network

MAX_NODES = 24


class BooleanNetwork:
    """An immutable Boolean network ``f: {0,1}^n -> {0,1}^n``.

    ``max_n`` bounds the operations that enumerate all ``2**n`` states;
    mutated copies inherit it.
    """

    def __init__(self, spec: NetworkSpec, max_n: int = MAX_NODES):
        self.spec = spec
        self.max_n = max_n
        self._table = None
        self._table_list = None

    @classmethod
    def from_text(cls, text, max_n=MAX_NODES):
        return cls(parse_network(text), max_n=max_n)

    @property
    def n(self):
        return self.spec.n

    @property
    def names(self):
        return self.spec.names

    @property
    def formulas(self):
        return self.spec.formulas

    def __repr__(self):
        return f"BooleanNetwork(n={self.n}, names={list(self.names)!r})"

    def __eq__(self, other):
        return isinstance(other, BooleanNetwork) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def to_text(self):
        return render_network(self.spec)

    def state(self, text):
        return parse_state(text, self.n)

    def format(self, x):
        return format_state(x, self.n)

    def check_dimension(self):
        if self.n > self.max_n:
            raise DimensionError(
                f"network has {self.n} nodes; explicit-state analysis is capped at {self.max_n}"
            )

    @property
    def table(self) -> np.ndarray:
        """``f(x)`` for every state ``x`` in ``0 .. 2**n - 1``."""
        if self._table is None:
            self.check_dimension()
            states = np.arange(1 << self.n, dtype=np.int64)
            out = np.zeros_like(states)
            for i, phi in enumerate(self.formulas):
                out |= np.broadcast_to(eval_formula(phi, states), states.shape).astype(np.int64) << i
            self._table = out
        return self._table

    @property
    def table_list(self) -> list:
        if self._table_list is None:
            self._table_list = self.table.tolist()
        return self._table_list

    def __call__(self, x: int) -> int:
        return evaluate(self, x)


def _check_state(f, x):
    if not 0 <= x < (1 << f.n):
        raise ValueError(f"state {x} does not fit a network of dimension {f.n}")


def evaluate(f: BooleanNetwork, x: int) -> int:
    _check_state(f, x)
    if f._table is not None:
        return int(f._table[x])
    out = 0
    for i, phi in enumerate(f.formulas):
        out |= eval_formula(phi, x) << i
    return out


def vertex_mask(I: Iterable[int], n: int | None = None) -> int:
    mask = 0
    for i in I:
        if i < 0 or (n is not None and i >= n):
            raise IndexError(f"node index {i} out of range")
        mask |= 1 << i
    return mask


def override_state(x: int, I: Iterable[int], y: int, n: int | None = None) -> int:
    """State equal to ``y`` on ``I`` and to ``x`` elsewhere."""
    m = vertex_mask(I, n)
    return (x & ~m) | (y & m)


def flip(x: int, I: Iterable[int], n: int | None = None) -> int:
    return x ^ vertex_mask(I, n)


def apply_mutation(f: BooleanNetwork, m: Mapping[int, int]) -> BooleanNetwork:
    """Return a copy of ``f`` where each node in ``m`` has a constant formula."""
    if not m:
        return f
    formulas = list(f.formulas)
    mask = 0
    vals = 0
    for i, b in m.items():
        if not 0 <= i < f.n:
            raise IndexError(f"node index {i} out of range")
        formulas[i] = Const(int(bool(b)))
        mask |= 1 << i
        vals |= int(bool(b)) << i
    g = BooleanNetwork(NetworkSpec(f.names, tuple(formulas)), max_n=f.max_n)
    if f._table is not None:
        g._table = (f._table & ~mask) | vals
    return g


def force(f: BooleanNetwork, I: Iterable[int], y: int) -> BooleanNetwork:
    """Mutate every node of ``I`` to its value in ``y``."""
    return apply_mutation(f, {i: (y >> i) & 1 for i in I})


def indices(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)
