"""Optimisation over consistent orderings: the plain layered dynamic program.

A state at layer ``s`` describes which partial solutions on ``G_s`` can be
extended.  ``alpha[i][j]``: the first ``alpha`` vertices of class ``i`` may not
join ``S_j``.  ``beta[i][j]``: the last ``beta`` vertices of class ``i`` may not
join ``S_j``.  Residual cap and cup bounds ride along.
"""

from __future__ import annotations

from typing import NamedTuple

from ..graph import Graph, ThinRepresentation
from .engine import Layout, build_and_solve, finish, first_bounds_ok, previous_bounds
from .spec import ProblemSpec, Solution, validate_spec


class ThinState(NamedTuple):
    bounds: tuple[tuple[int, float], ...]
    alpha: tuple[int, ...]  # flat, index class * r + set
    beta: tuple[int, ...]


def sink_state(layout: Layout) -> ThinState:
    zeros = (0,) * (layout.k * layout.r)
    bounds = tuple((b.lower, b.upper) for _, b in layout.bounds)
    return ThinState(bounds, zeros, zeros)


def first_ok(layout: Layout, state: ThinState, combo: frozenset[int]) -> bool:
    base = layout.cls[0] * layout.r
    for j in combo:
        if state.alpha[base + j] or state.beta[base + j]:
            return False
    return first_bounds_ok(layout, state.bounds, combo)


def picks_allowed(layout: Layout, state: ThinState, p: int, combo: frozenset[int]) -> bool:
    ell = layout.cls[p]
    base = ell * layout.r
    for j in combo:
        if state.beta[base + j] != 0:
            return False
        if state.alpha[base + j] >= layout.prev_count[p][ell] + 1:
            return False
    return True


def forbid_neighbors(layout: Layout, beta: list[int], p: int, j: int, forbid: bool) -> None:
    """Shift ``beta`` for set ``j`` one vertex back; if ``forbid``, also cover v's earlier neighbours."""
    ell, r = layout.cls[p], layout.r
    near = layout.nb_count[p]
    for i in range(layout.k):
        x = i * r + j
        if i == ell:
            beta[x] = max(beta[x] - 1, near[i]) if forbid else max(0, beta[x] - 1)
        elif forbid:
            beta[x] = max(beta[x], near[i])


def next_alpha(layout: Layout, state: ThinState, p: int, combo: frozenset[int]) -> tuple[int, ...]:
    ell, r = layout.cls[p], layout.r
    far = layout.non_count[p]
    alpha = list(state.alpha)
    for j in range(r):
        need = bool(layout.one_with[j] & combo)
        for i in range(layout.k):
            x = i * r + j
            if i == ell:
                alpha[x] = min(layout.prev_count[p][ell], alpha[x])
            if need:
                alpha[x] = max(alpha[x], far[i])
    return tuple(alpha)


def predecessor(layout: Layout, state: ThinState, p: int, combo: frozenset[int]) -> ThinState | None:
    if not picks_allowed(layout, state, p, combo):
        return None
    bounds = previous_bounds(layout, p, state.bounds, combo)
    if bounds is None:
        return None
    beta = list(state.beta)
    for j in range(layout.r):
        forbid_neighbors(layout, beta, p, j, bool(layout.zero_with[j] & combo))
    return ThinState(bounds, next_alpha(layout, state, p, combo), tuple(beta))


def solve(g: Graph, rep: ThinRepresentation, spec: ProblemSpec) -> Solution | None:
    """Optimal feasible assignment for ``spec`` on ``g``, or None if there is none."""
    validate_spec(spec, g)
    layout = Layout(g, rep, spec)
    found = build_and_solve(
        layout,
        spec,
        sink_state(layout),
        lambda st, combo: first_ok(layout, st, combo),
        lambda st, p, combo: predecessor(layout, st, p, combo),
    )
    return finish(g, layout, spec, found)


def solve_on_complement(g: Graph, rep: ThinRepresentation, spec: ProblemSpec) -> Solution | None:
    """Solve ``spec`` on the complement of ``g`` using a representation of ``g`` itself."""
    validate_spec(spec, g)
    return solve(g, rep, spec.swapped())


def state_bound(n: int, k: int, r: int, p: int, q: int) -> int:
    """Upper bound on the number of states for the given instance dimensions."""
    return n ** (2 * k * r + 1) * (n * q) ** (2 ** (r + 2) * p)
