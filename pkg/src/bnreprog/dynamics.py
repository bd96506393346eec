"""Asynchronous dynamics by explicit-state exploration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import BooleanNetwork


def async_successors(f: BooleanNetwork, x: int) -> set:
    """States reachable in one asynchronous step (one node updated)."""
    diff = f.table_list[x] ^ x
    out = set()
    while diff:
        low = diff & -diff
        out.add(x ^ low)
        diff ^= low
    return out


def transitions(f: BooleanNetwork):
    """All edges of the transition graph, sorted."""
    tbl = f.table_list
    out = []
    for x in range(1 << f.n):
        diff = tbl[x] ^ x
        for i in range(f.n):
            if (diff >> i) & 1:
                out.append((x, x ^ (1 << i)))
    return out


def reachable(f: BooleanNetwork, x: int) -> set:
    """Breadth-first closure of ``{x}`` under asynchronous transitions."""
    tbl = f.table_list
    seen = bytearray(1 << f.n)
    seen[x] = 1
    out = [x]
    queue = deque(out)
    while queue:
        s = queue.popleft()
        diff = tbl[s] ^ s
        while diff:
            low = diff & -diff
            diff ^= low
            t = s ^ low
            if not seen[t]:
                seen[t] = 1
                out.append(t)
                queue.append(t)
    return set(out)


def reaches(f: BooleanNetwork, x: int, y: int) -> bool:
    if x == y:
        return True
    tbl = f.table_list
    seen = bytearray(1 << f.n)
    seen[x] = 1
    queue = deque([x])
    while queue:
        s = queue.popleft()
        diff = tbl[s] ^ s
        while diff:
            low = diff & -diff
            diff ^= low
            t = s ^ low
            if t == y:
                return True
            if not seen[t]:
                seen[t] = 1
                queue.append(t)
    return False


def all_reach(f: BooleanNetwork, states, y: int) -> bool:
    """True if every state of the forward-closed set ``states`` can reach ``y``."""
    if y not in states:
        return False
    tbl = f.table_list
    preds = {}
    for s in states:
        diff = tbl[s] ^ s
        while diff:
            low = diff & -diff
            diff ^= low
            preds.setdefault(s ^ low, []).append(s)
    seen = {y}
    stack = [y]
    while stack:
        t = stack.pop()
        for s in preds.get(t, ()):
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return len(seen) == len(states)


def fixed_points(f: BooleanNetwork) -> list:
    tbl = f.table
    return np.flatnonzero(tbl == np.arange(tbl.size)).tolist()


def is_fixed_point(f: BooleanNetwork, x: int) -> bool:
    return f.table_list[x] == x


def reachable_fixed_points(f: BooleanNetwork, x: int) -> set:
    tbl = f.table_list
    return {s for s in reachable(f, x) if tbl[s] == s}


@dataclass(frozen=True)
class Attractor:
    states: frozenset

    @property
    def is_fixed_point(self):
        return len(self.states) == 1

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(sorted(self.states))

    def __contains__(self, x):
        return x in self.states


def attractors(f: BooleanNetwork) -> list:
    """Terminal SCCs of the full transition graph, ordered by smallest state."""
    tbl = f.table
    size = tbl.size
    states = np.arange(size, dtype=np.int64)
    diff = tbl ^ states
    src, dst = [], []
    for i in range(f.n):
        s = np.flatnonzero((diff >> i) & 1)
        src.append(s)
        dst.append(s ^ (1 << i))
    src = np.concatenate(src) if src else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(dst) if dst else np.zeros(0, dtype=np.int64)
    return _terminal_sccs(size, src, dst, states)


def _terminal_sccs(size, src, dst, labels_of):
    """Terminal SCCs of a graph on ``0..size-1``; ``labels_of`` maps vertices to states."""
    graph = csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(size, size))
    ncomp, labels = connected_components(graph, directed=True, connection="strong")
    leaving = np.zeros(ncomp, dtype=bool)
    cross = labels[src] != labels[dst]
    leaving[labels[src[cross]]] = True
    groups = {}
    for v in np.flatnonzero(~leaving[labels]).tolist():
        groups.setdefault(int(labels[v]), []).append(int(labels_of[v]))
    out = [Attractor(frozenset(v)) for v in groups.values()]
    out.sort(key=lambda a: min(a.states))
    return out


def reachable_attractors(f: BooleanNetwork, x: int) -> list:
    """Attractors reachable from ``x``."""
    tbl = f.table_list
    reach = sorted(reachable(f, x))
    pos = {s: i for i, s in enumerate(reach)}
    src, dst = [], []
    for s in reach:
        diff = tbl[s] ^ s
        while diff:
            low = diff & -diff
            diff ^= low
            src.append(pos[s])
            dst.append(pos[s ^ low])
    return _terminal_sccs(len(reach), np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64), reach)


def cyclic_attractor(f: BooleanNetwork):
    """The first cyclic attractor of ``f``, or ``None`` if all are fixed points."""
    for a in attractors(f):
        if not a.is_fixed_point:
            return a
    return None

