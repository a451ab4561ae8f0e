"""Backward construction of the layered state digraph and the path extraction.

Both solvers share this: they only differ in the state type, the admissibility
test for arcs leaving the source and the predecessor computation.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator

from ..errors import RepresentationError, SolverInvariantError
from ..graph import Graph, ThinRepresentation, is_consistent
from .check import violations
from .spec import NeighborhoodBounds, ProblemSpec, Sense, Solution, SolverStats, combination_key

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class RunRecord:
    """Dimensions and state count of one solver run, feasible or not."""

    kind: str
    n: int
    k: int
    r: int
    p: int
    q: int
    states: int
    arcs: int


_observers: list[list[RunRecord]] = []


@contextmanager
def record_runs() -> Iterator[list[RunRecord]]:
    """Collect a RunRecord for every solver run inside the block."""
    runs: list[RunRecord] = []
    _observers.append(runs)
    try:
        yield runs
    finally:
        del _observers[next(i for i, x in enumerate(_observers) if x is runs)]

SOURCE = -1


class Layout:
    """Per-position quantities of a graph under a representation.

    Positions are 0-based: position ``p`` holds ``v_{p+1}`` and its prefix graph
    ``G_{p+1}``.
    """

    def __init__(self, g: Graph, rep: ThinRepresentation, spec: ProblemSpec):
        if rep.graph != g:
            raise RepresentationError("representation belongs to a different graph")
        if not is_consistent(g, rep.ordering, rep.partition):
            raise RepresentationError("ordering and partition are not consistent")
        self.n = g.n
        self.k = k = rep.k
        self.r = spec.r
        self.p = spec.p
        self.q = spec.q
        self.kind = "thin"
        seq = rep.ordering.sequence
        self.vertex = seq
        self.cls = tuple(rep.partition.class_of[v] for v in seq)
        self.prev_count: list[tuple[int, ...]] = []
        self.nb_count: list[tuple[int, ...]] = []
        counts = [0] * k
        for p, v in enumerate(seq):
            near = [0] * k
            for u in seq[:p]:
                if g.has_edge(u, v):
                    near[rep.partition.class_of[u]] += 1
            self.prev_count.append(tuple(counts))
            self.nb_count.append(tuple(near))
            counts[self.cls[p]] += 1
        self.non_count = [tuple(a - b for a, b in zip(pc, nc)) for pc, nc in zip(self.prev_count, self.nb_count)]
        self.has_earlier_neighbor = [any(nc) for nc in self.nb_count]
        self.combos = [spec.lists[v] for v in seq]
        self.gains = [{c: spec.gain(v, c) for c in spec.lists[v]} for v in seq]
        self.bvals = [tuple(row[v] for row in spec.bounded_weights) for v in seq]
        m = spec.matrix
        self.zero_with = [frozenset(jp for jp in range(spec.r) if m[j][jp] == 0) for j in range(spec.r)]
        self.one_with = [frozenset(jp for jp in range(spec.r) if m[j][jp] == 1) for j in range(spec.r)]
        self.bounds = [("cap", b) for b in spec.cap_bounds] + [("cup", b) for b in spec.cup_bounds]
        self.stats: SolverStats | None = None


def bounds_touched(kind: str, sets: frozenset[int], combo: frozenset[int]) -> bool:
    """Whether choosing ``combo`` puts the vertex in the group a bound constrains."""
    return sets <= combo if kind == "cap" else bool(sets & combo)


def first_bounds_ok(layout: Layout, bounds, combo) -> bool:
    """Bound conditions for the first vertex: touched bounds contain its weight, others start at 0."""
    for (kind, b), (lo, up) in zip(layout.bounds, bounds):
        if bounds_touched(kind, b.sets, combo):
            if not lo <= layout.bvals[0][b.weight] <= up:
                return False
        elif lo != 0:
            return False
    return True


def previous_bounds(layout: Layout, p: int, bounds, combo):
    """Residual bounds for ``G_{p}``, or None when ``v_{p+1}`` would exceed an upper bound."""
    out = []
    for (kind, b), (lo, up) in zip(layout.bounds, bounds):
        if bounds_touched(kind, b.sets, combo):
            weight = layout.bvals[p][b.weight]
            if weight > up:
                return None
            out.append((max(0, lo - weight), up - weight))
        else:
            out.append((lo, up))
    return tuple(out)


@dataclass
class _Node:
    state: Hashable
    arcs: dict = field(default_factory=dict)  # predecessor id -> (weight, label key, combo)


def build_and_solve(
    layout: Layout,
    spec: ProblemSpec,
    sink: Hashable,
    first_ok: Callable[[Hashable, frozenset], bool],
    predecessor: Callable[[Hashable, int, frozenset], Hashable | None],
) -> tuple[int, tuple[frozenset[int], ...]] | None:
    """Build the digraph backward from ``sink`` and return (objective, per-position combos)."""
    n = layout.n
    maximize = spec.sense is Sense.MAX
    nodes: list[_Node] = [_Node(sink)]
    layers: list[list[int]] = [[] for _ in range(n + 1)]
    layers[n].append(0)
    arcs = 0
    for s in range(n, 0, -1):
        p = s - 1
        index: dict[Hashable, int] = {}
        for nid in layers[s]:
            node = nodes[nid]
            for combo in layout.combos[p]:
                weight = layout.gains[p][combo]
                if s == 1:
                    if not first_ok(node.state, combo):
                        continue
                    uid = SOURCE
                else:
                    prev = predecessor(node.state, p, combo)
                    if prev is None:
                        continue
                    uid = index.get(prev)
                    if uid is None:
                        uid = index[prev] = len(nodes)
                        nodes.append(_Node(prev))
                        layers[s - 1].append(uid)
                key = combination_key(combo)
                old = node.arcs.get(uid)
                if old is None:
                    arcs += 1
                if old is None or (weight > old[0] if maximize else weight < old[0]):
                    node.arcs[uid] = (weight, key, combo)
        log.debug("layer %d: %d states", s - 1, len(layers[s - 1]))
    states = sum(len(layers[s]) for s in range(1, n + 1))
    # Forward pass in layer order; ties go to the smallest label, then the oldest node.
    value: dict[int, int] = {SOURCE: 0}
    choice: dict[int, tuple[int, frozenset]] = {}
    for s in range(1, n + 1):
        for nid in layers[s]:
            best = None
            for uid, (weight, key, combo) in nodes[nid].arcs.items():
                if uid not in value:
                    continue
                cand = value[uid] + weight
                rank = (-cand if maximize else cand, key, uid)
                if best is None or rank < best[0]:
                    best = (rank, cand, uid, combo)
            if best is not None:
                value[nid] = best[1]
                choice[nid] = (best[2], best[3])
    layout.stats = SolverStats(states=states, arcs=arcs)
    if _observers:
        record = RunRecord(layout.kind, n, layout.k, layout.r, layout.p, layout.q, states, arcs)
        for runs in _observers:
            runs.append(record)
    if 0 not in value:
        return None
    trace: list[frozenset[int]] = []
    nid = 0
    while nid != SOURCE:
        uid, combo = choice[nid]
        trace.append(combo)
        nid = uid
    trace.reverse()
    if len(trace) != n:
        raise SolverInvariantError(f"traced path has {len(trace)} arcs, expected {n}")
    return value[0], tuple(trace)


def finish(
    g: Graph,
    layout: Layout,
    spec: ProblemSpec,
    found,
    nb: NeighborhoodBounds | None = None,
) -> Solution | None:
    """Turn a traced path into a Solution and revalidate it independently."""
    if found is None:
        return None
    objective, by_position = found
    trace = [frozenset()] * g.n
    for p, combo in enumerate(by_position):
        trace[layout.vertex[p]] = combo
    sets = tuple(frozenset(v for v in range(g.n) if j in trace[v]) for j in range(spec.r))
    problems = violations(g, spec, sets, nb)
    if problems:
        raise SolverInvariantError("solver returned an infeasible assignment: " + "; ".join(problems[:5]))
    if spec.objective(sets) != objective:
        raise SolverInvariantError(f"path weight {objective} differs from objective {spec.objective(sets)}")
    return Solution(sets=sets, objective=objective, trace=tuple(trace), stats=layout.stats)
