"""Reprogramming determinants between two fixed points.

Forcing a vertex set ``I`` always means two things at once: the initial state
takes the target's values on ``I`` and the formulas of ``I`` become those
constants. Reachability is then judged in that mutated network.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .core import BooleanNetwork, force, override_state, vertex_mask
from .dynamics import all_reach, cyclic_attractor, is_fixed_point, reachable, reachable_attractors, reaches
from .errors import CyclicAttractorError, DimensionError, NotFixedPointError
from .igraph import DEFAULT_CYCLE_BUDGET, scc_order

ORACLE_MAX_N = 12


class Mode(str, enum.Enum):
    ER = "er"
    IR = "ir"


@dataclass(frozen=True)
class ReprogrammingSolution:
    """Result of one reprogramming analysis.

    ``solutions`` are node sets (0-based), canonically sorted. For SCC-level
    methods ``scc_structure[i]`` lists the SCCs whose union is
    ``solutions[i]``.
    """

    mode: Mode
    method: str
    x: int
    y: int
    solutions: tuple
    scc_structure: tuple | None = None
    minimum_cardinality: tuple | None = None
    raw: tuple | None = None
    diagnostics: tuple = field(default=())

    def __contains__(self, nodes):
        return frozenset(nodes) in self.solutions

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def canonical(family):
    """Deduplicate a family of sets and sort it by size, then members."""
    uniq = {frozenset(s) for s in family}
    return tuple(sorted(uniq, key=lambda s: (len(s), sorted(s))))


def antichain(family):
    """Keep only the inclusion-minimal members."""
    fam = canonical(family)
    return tuple(s for s in fam if not any(t < s for t in fam))


def bar_product(A, B):
    """Pairwise unions. An empty family acts as ``{frozenset()}``."""
    A = [frozenset(a) for a in A] or [frozenset()]
    B = [frozenset(b) for b in B] or [frozenset()]
    return canonical(a | b for a in A for b in B)


def check_assumptions(f: BooleanNetwork, x: int, y: int):
    """Raise unless ``x`` and ``y`` are fixed points and ``f`` has no cyclic attractor."""
    for name, s in (("source", x), ("target", y)):
        if not 0 <= s < (1 << f.n):
            raise ValueError(f"{name} state does not fit the network")
        if not is_fixed_point(f, s):
            raise NotFixedPointError(f"{name} state {f.format(s)} is not a fixed point")
    cyc = cyclic_attractor(f)
    if cyc is not None:
        states = ", ".join(f.format(s) for s in cyc)
        raise CyclicAttractorError(cyc, f"network has a cyclic attractor {{{states}}}")


def _forced(f, x, y, I):
    return force(f, I, y), override_state(x, I, y)


def _er(f, x, y, I):
    g, start = _forced(f, x, y, I)
    return reaches(g, start, y)


def _ir(f, x, y, I):
    g, start = _forced(f, x, y, I)
    return all_reach(g, reachable(g, start), y)


def er_predicate(f, x, y, I, check=True) -> bool:
    """Is ``y`` reachable once ``I`` is forced to its values in ``y``?"""
    if check:
        check_assumptions(f, x, y)
    vertex_mask(I, f.n)
    return _er(f, x, y, frozenset(I))


def ir_predicate(f, x, y, I, check=True) -> bool:
    """Can every state reachable after forcing ``I`` still reach ``y``?"""
    if check:
        check_assumptions(f, x, y)
    vertex_mask(I, f.n)
    return _ir(f, x, y, frozenset(I))


_PREDICATES = {Mode.ER: _er, Mode.IR: _ir}


def oracle(f, x, y, mode, max_n=ORACLE_MAX_N) -> ReprogrammingSolution:
    """All inclusion-minimal vertex sets satisfying the mode's predicate.

    Subsets are swept by increasing size; supersets of accepted sets are
    skipped.
    """
    mode = Mode(mode)
    if f.n > max_n:
        raise DimensionError(f"oracle sweep is capped at {max_n} nodes, network has {f.n}")
    check_assumptions(f, x, y)
    pred = _PREDICATES[mode]
    found = []
    for size in range(f.n + 1):
        for combo in combinations(range(f.n), size):
            I = frozenset(combo)
            if any(a <= I for a in found):
                continue
            if pred(f, x, y, I):
                found.append(I)
    sols = canonical(found)
    smallest = min((len(s) for s in sols), default=0)
    return ReprogrammingSolution(
        mode, "oracle", x, y, sols,
        minimum_cardinality=tuple(s for s in sols if len(s) == smallest),
    )


def _slice_ok(f, x, y, order, forced_positions, required):
    """Is a state agreeing with ``y`` on ``required`` reachable after forcing?"""
    I = order.nodes(forced_positions)
    g, start = _forced(f, x, y, I)
    mask = vertex_mask(required)
    target = y & mask
    return any((z & mask) == target for z in reachable(g, start))


def er_scc_filter(f, x, y, budget=DEFAULT_CYCLE_BUDGET, check=True) -> ReprogrammingSolution:
    """SCC combinations for existential reachability, slice by slice.

    Starting from the empty combination, each slice of ``O`` extends every
    partial combination with each minimal sub-family ``s`` of the slice such
    that, with the combination and ``s`` forced, some reachable state agrees
    with ``y`` on the whole slice. Every returned set is re-checked against
    :func:`er_predicate`; failures are reported in ``diagnostics``.
    """
    if check:
        check_assumptions(f, x, y)
    order = scc_order(f, budget)
    branches = [frozenset()]
    for layer in order.slices:
        required = order.nodes(layer)
        nxt = []
        for branch in branches:
            chosen = []
            for size in range(len(layer) + 1):
                for s in combinations(layer, size):
                    s = frozenset(s)
                    if any(c <= s for c in chosen):
                        continue
                    if _slice_ok(f, x, y, order, branch | s, required):
                        chosen.append(s)
            nxt.extend(branch | s for s in chosen)
        branches = list(canonical(nxt))
    diagnostics = [
        f"combination {sorted(order.nodes(b))} does not make the target reachable"
        for b in branches if not _er(f, x, y, order.nodes(b))
    ]
    return _scc_solution(Mode.ER, "scc-filter", x, y, order, branches, diagnostics)


def _scc_solution(mode, method, x, y, order, combos, diagnostics=()):
    combos = sorted(combos, key=lambda c: (len(order.nodes(c)), sorted(order.nodes(c)), sorted(c)))
    sols, structure = [], []
    for c in combos:
        nodes = order.nodes(c)
        if nodes in sols:
            continue
        sols.append(nodes)
        structure.append(tuple(sorted((order.O[j] for j in c), key=min)))
    return ReprogrammingSolution(mode, method, x, y, tuple(sols), scc_structure=tuple(structure),
                                 diagnostics=tuple(diagnostics))


def _others(g, start, y):
    """States of the attractors reachable from ``start`` other than ``{y}``."""
    out = set()
    for a in reachable_attractors(g, start):
        if a.states != {y}:
            out |= a.states
    return out


def _first_differing(order, y, states):
    for a, comp in enumerate(order.O):
        m = vertex_mask(comp)
        if any((z & m) != (y & m) for z in states):
            return a
    return None


def ir_scc_filter(f, x, y, budget=DEFAULT_CYCLE_BUDGET, check=True) -> ReprogrammingSolution:
    """Greedy SCC selection for inevitable reachability.

    While an attractor other than ``{y}`` stays reachable, force the earliest
    SCC of ``O`` on which one of its states differs from ``y``. Forcing can
    create cyclic attractors, so the loop looks at all reachable attractors,
    not only fixed points; such cases are reported in ``diagnostics``.
    """
    if check:
        check_assumptions(f, x, y)
    order = scc_order(f, budget)
    S = []
    diagnostics = []
    while True:
        g, start = _forced(f, x, y, order.nodes(S))
        others = _others(g, start, y)
        if not others:
            break
        if not any(g.table_list[z] == z for z in others):
            diagnostics.append(_cyclic_note(g, S and order.nodes(S)))
        a = _first_differing(order, y, others)
        if a is None or a in S:
            raise RuntimeError("no SCC of O separates the reachable attractors from the target")
        S.append(a)
    return _scc_solution(Mode.IR, "scc-filter", x, y, order, [frozenset(S)], diagnostics)


def _cyclic_note(g, forced):
    return (f"forcing {sorted(forced or ())} leaves only cyclic attractors besides the target; "
            "continuing past the fixed-point stop rule")


def ir_vertex_recursive(f, x, y, budget=DEFAULT_CYCLE_BUDGET, minimal=False,
                        check=True) -> ReprogrammingSolution:
    """Vertex-level determinants for inevitable reachability.

    Picks each node of the earliest differing positive-cycle SCC in turn,
    fixes it to its target value and recurses on the mutated network, whose
    SCCs are recomputed. Each distinct forced set is explored once, and
    ``raw`` keeps every leaf in visiting order. ``minimal=True`` reduces the
    result to an antichain.
    """
    if check:
        check_assumptions(f, x, y)
    memo = {}
    raw = []
    diagnostics = []

    def visit(rd):
        if rd in memo:
            raw.extend(memo[rd])
            return memo[rd]
        g, start = _forced(f, x, y, rd)
        others = _others(g, start, y)
        if not others:
            res = [rd]
            raw.append(rd)
        else:
            if not any(g.table_list[z] == z for z in others):
                diagnostics.append(_cyclic_note(g, rd))
            order = scc_order(g, budget)
            a = _first_differing(order, y, others)
            if a is None:
                raise RuntimeError("no SCC of O separates the reachable attractors from the target")
            res = []
            for u in sorted(order.O[a]):
                res.extend(visit(rd | {u}))
        memo[rd] = res
        return res

    leaves = visit(frozenset())
    sols = antichain(leaves) if minimal else canonical(leaves)
    return ReprogrammingSolution(Mode.IR, "vertex-recursive", x, y, sols, raw=tuple(raw),
                                 diagnostics=tuple(diagnostics))
