"""Signed interaction graphs, their SCCs and the ordering of positive-cycle SCCs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

import networkx as nx
import numpy as np

from .core import BooleanNetwork
from .errors import CycleBudgetExceeded
from .formula import eval_formula, support

DEFAULT_CYCLE_BUDGET = 10**6

POS = 1
NEG = -1


class InteractionGraph:
    """Directed graph on nodes ``0..n-1`` with edges ``(u, v, sign)``.

    An ordered pair may carry both signs when ``f_v`` is non-monotone in ``u``.
    """

    def __init__(self, n: int, edges: Iterable[tuple]):
        self.n = n
        self.edges = frozenset(edges)
        for u, v, s in self.edges:
            if not (0 <= u < n and 0 <= v < n) or s not in (POS, NEG):
                raise ValueError(f"bad edge {(u, v, s)!r}")
        self._signs = {}
        for u, v, s in self.edges:
            self._signs.setdefault((u, v), set()).add(s)
        self._digraph = None

    def __eq__(self, other):
        return isinstance(other, InteractionGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"InteractionGraph(n={self.n}, edges={sorted(self.edges)!r})"

    def signs(self, u, v):
        return frozenset(self._signs.get((u, v), ()))

    @property
    def digraph(self) -> nx.DiGraph:
        """Unsigned view; each arc carries its ``signs`` set."""
        if self._digraph is None:
            g = nx.DiGraph()
            g.add_nodes_from(range(self.n))
            for (u, v), s in self._signs.items():
                g.add_edge(u, v, signs=frozenset(s))
            self._digraph = g
        return self._digraph

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self.n))
        for u, v, s in sorted(self.edges):
            g.add_edge(u, v, sign=s)
        return g

    def subgraph(self, vertices) -> "InteractionGraph":
        """Induced subgraph, keeping the original node indices."""
        keep = set(vertices)
        return InteractionGraph(self.n, [e for e in self.edges if e[0] in keep and e[1] in keep])

    def without_inputs(self, u) -> "InteractionGraph":
        return InteractionGraph(self.n, [e for e in self.edges if e[1] != u])


def interaction_graph(f: BooleanNetwork) -> InteractionGraph:
    """Signed interaction graph from discrete derivatives.

    Each ``f_v`` is only enumerated over its own variables.
    """
    edges = set()
    for v, phi in enumerate(f.formulas):
        sup = support(phi)
        if not sup:
            continue
        k = len(sup)
        # all assignments of the support, encoded as full-width states
        combos = np.arange(1 << k, dtype=np.int64)
        states = np.zeros_like(combos)
        for j, u in enumerate(sup):
            states |= ((combos >> j) & 1) << u
        for u in sup:
            hi = np.broadcast_to(eval_formula(phi, states | (1 << u)), states.shape)
            lo = np.broadcast_to(eval_formula(phi, states & ~(1 << u)), states.shape)
            d = hi.astype(np.int8) - lo.astype(np.int8)
            if (d > 0).any():
                edges.add((u, v, POS))
            if (d < 0).any():
                edges.add((u, v, NEG))
    return InteractionGraph(f.n, edges)


def sccs(G: InteractionGraph):
    """Return ``(components, condensation)``.

    Components are frozensets sorted by smallest member; the condensation is a
    DAG on component positions.
    """
    comps = sorted((frozenset(c) for c in nx.strongly_connected_components(G.digraph)), key=min)
    where = {v: i for i, c in enumerate(comps) for v in c}
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(comps)))
    for u, v in G.digraph.edges:
        if where[u] != where[v]:
            dag.add_edge(where[u], where[v])
    return comps, dag


def has_positive_cycle(G: InteractionGraph, vertices, budget: int = DEFAULT_CYCLE_BUDGET) -> bool:
    """True if the subgraph induced by ``vertices`` has a simple cycle with an
    even number of negative arcs.

    Simple cycles are enumerated (Johnson); more than ``budget`` of them raises
    :class:`CycleBudgetExceeded`.
    """
    sub = G.digraph.subgraph(vertices)
    count = 0
    for cycle in nx.simple_cycles(sub):
        count += 1
        if count > budget:
            raise CycleBudgetExceeded(f"more than {budget} simple cycles in {sorted(vertices)}")
        negatives = 0
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            s = sub.edges[a, b]["signs"]
            if len(s) == 2:
                return True
            if NEG in s:
                negatives += 1
        if negatives % 2 == 0:
            return True
    return False


def parents(G: InteractionGraph, u: int) -> frozenset:
    return frozenset(G.digraph.predecessors(u))


def ancestors(G: InteractionGraph, u: int) -> frozenset:
    """Nodes with a non-empty path to ``u``; ``u`` itself only if it lies on a cycle."""
    seen = set()
    stack = list(G.digraph.predecessors(u))
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(G.digraph.predecessors(v))
    return frozenset(seen)


def induced_ancestor_graph(G: InteractionGraph, u: int) -> InteractionGraph:
    return G.subgraph(ancestors(G, u))


@dataclass(frozen=True)
class SccOrder:
    """Positive-cycle SCCs of an interaction graph and their ordering.

    ``O`` lists the SCCs containing a positive cycle in a linear extension of
    the reachability order. ``precedes`` holds pairs ``(i, j)`` of positions
    in ``O`` with ``O[i]`` reaching ``O[j]``. ``slices`` lists, layer by layer,
    the positions of the minimal remaining members.
    """

    graph: InteractionGraph
    all_sccs: tuple
    O: tuple
    precedes: frozenset
    slices: tuple

    @property
    def k(self):
        return len(self.O)

    @property
    def c(self):
        return len(self.slices)

    def slice_sccs(self, i):
        return [self.O[j] for j in self.slices[i]]

    def nodes(self, positions) -> frozenset:
        out = set()
        for j in positions:
            out |= self.O[j]
        return frozenset(out)


def scc_order(f_or_graph, budget: int = DEFAULT_CYCLE_BUDGET) -> SccOrder:
    G = f_or_graph if isinstance(f_or_graph, InteractionGraph) else interaction_graph(f_or_graph)
    comps, dag = sccs(G)
    positive = [i for i, c in enumerate(comps) if has_positive_cycle(G, c, budget)]
    pos_set = set(positive)
    reach = {i: nx.descendants(dag, i) & pos_set for i in positive}

    # Kahn's algorithm, smallest minimum vertex first
    indeg = {i: sum(1 for j in positive if i in reach[j]) for i in positive}
    order = []
    ready = sorted((i for i in positive if indeg[i] == 0), key=lambda i: min(comps[i]))
    while ready:
        i = ready.pop(0)
        order.append(i)
        for j in reach[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
        ready.sort(key=lambda i: min(comps[i]))

    pos_of = {c: p for p, c in enumerate(order)}
    O = tuple(comps[i] for i in order)
    precedes = frozenset((pos_of[i], pos_of[j]) for i in order for j in reach[i])
    return SccOrder(G, tuple(comps), O, precedes, _slices(len(O), precedes))


def _slices(k, precedes):
    remaining = set(range(k))
    out = []
    while remaining:
        layer = sorted(j for j in remaining if not any((i, j) in precedes for i in remaining))
        out.append(tuple(layer))
        remaining -= set(layer)
    return tuple(out)


def linear_extensions_agree(order: SccOrder, permutation) -> bool:
    """Recompute the slices after relabelling ``O`` by ``permutation`` and
    check they describe the same SCC layers."""
    relabel = {old: new for new, old in enumerate(permutation)}
    precedes = frozenset((relabel[i], relabel[j]) for i, j in order.precedes)
    mine = [frozenset(order.O[j] for j in layer) for layer in order.slices]
    theirs = [frozenset(order.O[permutation[j]] for j in layer) for layer in _slices(order.k, precedes)]
    return mine == theirs
