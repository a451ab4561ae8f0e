"""Literal constraint checking for the framework, independent of the solvers."""

from __future__ import annotations

import itertools
from typing import Sequence

from ..graph import Graph
from .spec import INF, STAR, NeighborhoodBounds, ProblemSpec


def violations(
    g: Graph,
    spec: ProblemSpec,
    sets: Sequence[frozenset[int]],
    nb: NeighborhoodBounds | None = None,
) -> list[str]:
    """Every constraint of ``spec`` (and ``nb``) that ``sets`` breaks, as messages."""
    r, n = spec.r, g.n
    out: list[str] = []
    member = [frozenset(j for j in range(r) if v in sets[j]) for v in range(n)]
    for v in range(n):
        if member[v] not in spec.lists[v]:
            out.append(f"vertex {v} joins {sorted(member[v])}, not in its list")
    for i in range(r):
        for j in range(i, r):
            rule = spec.matrix[i][j]
            if rule == STAR:
                continue
            for u in sets[i]:
                for v in sets[j]:
                    if u == v:
                        continue
                    if rule == 0 and g.has_edge(u, v):
                        out.append(f"edge {u}-{v} between S{i} and S{j}")
                    elif rule == 1 and not g.has_edge(u, v):
                        out.append(f"non-edge {u}-{v} between S{i} and S{j}")
    for kind, bounds in (("cap", spec.cap_bounds), ("cup", spec.cup_bounds)):
        for b in bounds:
            chosen = [sets[j] for j in sorted(b.sets)]
            group = frozenset.intersection(*chosen) if kind == "cap" else frozenset.union(*chosen)
            total = sum(spec.bounded_weights[b.weight][v] for v in group)
            if not b.lower <= total <= b.upper:
                out.append(f"{kind} bound on {sorted(b.sets)}: weight {total} outside [{b.lower}, {b.upper}]")
    if nb is not None:
        for i, j in itertools.product(range(r), repeat=2):
            for v in sets[j]:
                opened = len(sets[i] & g.neighbors(v))
                closed = opened + (v in sets[i])
                if not nb.open_lower[i][j] <= opened <= nb.open_upper[i][j]:
                    out.append(f"vertex {v} in S{j} has {opened} neighbours in S{i}")
                if not nb.closed_lower[i][j] <= closed <= nb.closed_upper[i][j]:
                    out.append(f"vertex {v} in S{j} has {closed} closed neighbours in S{i}")
    return out


def is_feasible(g, spec, sets, nb=None) -> bool:
    return not violations(g, spec, sets, nb)


def brute_force(
    g: Graph, spec: ProblemSpec, nb: NeighborhoodBounds | None = None
) -> tuple[int, tuple[frozenset[int], ...]] | None:
    """Optimal (objective, sets) by enumerating every list assignment, or None if infeasible."""
    best = None
    maximize = spec.sense.value == "max"
    for combos in itertools.product(*spec.lists):
        sets = tuple(frozenset(v for v in range(g.n) if j in combos[v]) for j in range(spec.r))
        if violations(g, spec, sets, nb):
            continue
        value = spec.objective(sets)
        if best is None or (value > best[0] if maximize else value < best[0]):
            best = (value, sets)
    return best


__all__ = ["violations", "is_feasible", "brute_force", "INF"]
