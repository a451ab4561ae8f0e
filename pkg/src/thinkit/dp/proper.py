"""The layered dynamic program extended with neighbourhood-count constraints.

Needs a strongly consistent representation.  On top of the plain state, for
class ``i`` and set ``j``:

* ``gamma[i][j]``: the last ``gamma`` vertices of class ``i`` already have a
  later neighbour in ``S_j``;
* ``gamma2[i][j]``: the last ``gamma2`` of them already have two;
* ``lam[(j, c)]``: a per-class vector; ``S_j`` must meet the union of the last
  ``lam[i]`` vertices of each class ``i`` (demand raised by a later vertex of
  class ``c``);
* ``cap1[(j, c)]``: the same shape, but ``S_j`` may meet that union at most once.

``lam`` and ``cap1`` are stored sparsely as sorted tuples of nonzero groups.
The ``cap1`` family handles upper bounds of 1 against a vertex's earlier
neighbours; without it such bounds are only enforced against later ones (see
``track_earlier_upper``).
"""

from __future__ import annotations

from typing import NamedTuple

from ..errors import RepresentationError, SolverInvariantError
from ..graph import Graph, ThinRepresentation, is_strongly_consistent
from . import thin
from .engine import Layout, build_and_solve, finish, previous_bounds
from .spec import NeighborhoodBounds, ProblemSpec, Solution, validate_spec

Groups = tuple[tuple[tuple[int, int], tuple[int, ...]], ...]


class ProperState(NamedTuple):
    bounds: tuple[tuple[int, float], ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    gamma2: tuple[int, ...]
    lam: Groups
    cap1: Groups


def monotone_neighborhoods(g: Graph, rep: ThinRepresentation) -> bool:
    """For same-class ``v_a`` before ``v_b``: ``N[v_a]`` covers ``N[v_b]`` within ``v_1..v_a``."""
    seq = rep.ordering.sequence
    cls = rep.partition.class_of
    prefix = 0
    for a, va in enumerate(seq):
        prefix |= 1 << va
        mine = (g.masks[va] | (1 << va)) & prefix
        for vb in seq[a + 1 :]:
            if cls[vb] == cls[va] and (g.masks[vb] | (1 << vb)) & prefix & ~mine:
                return False
    return True


class _Rules:
    def __init__(self, layout: Layout, nb: NeighborhoodBounds, track_earlier_upper: bool):
        self.layout = layout
        self.track = track_earlier_upper
        r = layout.r
        rng = range(r)
        # Per chosen set j: which counted sets i carry each kind of bound.
        self.open_low = [frozenset(i for i in rng if nb.open_lower[i][j] == 1) for j in rng]
        self.closed_low = [frozenset(i for i in rng if nb.closed_lower[i][j] == 1) for j in rng]
        self.any_up = [frozenset(i for i in rng if nb.open_upper[i][j] == 1 or nb.closed_upper[i][j] == 1) for j in rng]
        self.closed_up = [frozenset(i for i in rng if nb.closed_upper[i][j] == 1) for j in rng]

    def _union(self, table, combo) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for j in combo:
            out |= table[j]
        return out

    def needs_earlier(self, gamma, ell: int, combo) -> list[int]:
        """Sets that must supply an earlier neighbour of ``v`` if it takes ``combo``."""
        r = self.layout.r
        wanted = self._union(self.open_low, combo) | (self._union(self.closed_low, combo) - combo)
        return sorted(i for i in wanted if gamma[ell * r + i] == 0)

    def local_ok(self, state: ProperState, ell: int, combo) -> bool:
        r = self.layout.r
        for i in self._union(self.any_up, combo):
            if state.gamma2[ell * r + i]:
                return False
        for i in self._union(self.closed_up, combo) & combo:
            if state.gamma[ell * r + i]:
                return False
        return True

    def first_ok(self, state: ProperState, combo) -> bool:
        layout = self.layout
        if not thin.first_ok(layout, state, combo):  # type: ignore[arg-type]
            return False
        ell, _r = layout.cls[0], layout.r
        if not self.local_ok(state, ell, combo):
            return False
        if self.needs_earlier(state.gamma, ell, combo):
            return False
        for (j, _), vals in state.lam:
            if j not in combo and vals[ell]:
                return False
        return True

    def predecessor(self, state: ProperState, p: int, combo) -> ProperState | None:
        layout = self.layout
        if not thin.picks_allowed(layout, state, p, combo):  # type: ignore[arg-type]
            return None
        bounds = previous_bounds(layout, p, state.bounds, combo)
        if bounds is None:
            return None
        ell, r, k = layout.cls[p], layout.r, layout.k
        if not self.local_ok(state, ell, combo):
            return None
        # A pending "meet this region" demand fails if v is its last candidate and is not taken.
        for (j, _), vals in state.lam:
            if j not in combo and vals[ell] == 1 and not any(vals[i] for i in range(k) if i != ell):
                return None
        needs = self.needs_earlier(state.gamma, ell, combo)
        if needs and not layout.has_earlier_neighbor[p]:
            return None
        near = layout.nb_count[p]

        lam: dict[tuple[int, int], tuple[int, ...]] = {}
        for key, vals in state.lam:
            j = key[0]
            if j in combo:
                if vals[ell] == 0:
                    lam[key] = vals
            else:
                shifted = vals[:ell] + (max(0, vals[ell] - 1),) + vals[ell + 1 :]
                if any(shifted):
                    lam[key] = shifted
        for i in needs:
            lam.setdefault((i, ell), near)

        beta = list(state.beta)
        upper = self._union(self.any_up, combo)
        closed_upper = self._union(self.closed_up, combo)
        forbidden = []
        for j in range(r):
            forbid = bool(
                layout.zero_with[j] & combo
                or (j in upper and state.gamma[ell * r + j] > 0)
                or (j in combo and j in closed_upper)
            )
            forbidden.append(forbid)
            thin.forbid_neighbors(layout, beta, p, j, forbid)

        cap1: dict[tuple[int, int], tuple[int, ...]] = {}
        if self.track:
            for key, vals in state.cap1:
                j = key[0]
                if vals[ell]:
                    if j in combo:
                        # v took the one allowed slot: forbid the rest of the region.
                        for i in range(k):
                            x = i * r + j
                            beta[x] = max(beta[x], vals[i] - (i == ell))
                        continue
                    vals = vals[:ell] + (vals[ell] - 1,) + vals[ell + 1 :]
                if sum(vals) >= 2:
                    cap1[key] = vals
            if sum(near) >= 2:
                for j in sorted(upper):
                    if state.gamma[ell * r + j] == 0 and not forbidden[j]:
                        old = cap1.get((j, ell), (0,) * k)
                        cap1[(j, ell)] = tuple(max(a, b) for a, b in zip(old, near))

        gamma = list(state.gamma)
        gamma2 = list(state.gamma2)
        for j in range(r):
            x = ell * r + j
            if j in combo:
                if near[ell] >= gamma[x] - 1:
                    gamma[x], gamma2[x] = near[ell], max(0, gamma[x] - 1)
                else:
                    gamma[x], gamma2[x] = max(0, gamma[x] - 1), max(gamma2[x] - 1, near[ell])
                for i in range(k):
                    if i == ell:
                        continue
                    y = i * r + j
                    if near[i] >= gamma[y]:
                        gamma[y], gamma2[y] = near[i], gamma[y]
                    else:
                        gamma2[y] = max(gamma2[y], near[i])
            else:
                gamma[x], gamma2[x] = max(0, gamma[x] - 1), max(0, gamma2[x] - 1)
        for a, b in zip(gamma2, gamma):
            if a > b:
                raise SolverInvariantError(f"gamma2 {gamma2} exceeds gamma {gamma}")

        return ProperState(
            bounds,
            thin.next_alpha(layout, state, p, combo),  # type: ignore[arg-type]
            tuple(beta),
            tuple(gamma),
            tuple(gamma2),
            tuple(sorted(lam.items())),
            tuple(sorted(cap1.items())),
        )


def solve_proper(
    g: Graph,
    rep: ThinRepresentation,
    spec: ProblemSpec,
    nb: NeighborhoodBounds,
    *,
    track_earlier_upper: bool = True,
) -> Solution | None:
    """Optimal assignment for ``spec`` plus neighbourhood bounds ``nb``, or None.

    ``track_earlier_upper=False`` drops the at-most-once bookkeeping; the result
    may then violate upper bounds of 1 and is rejected by the revalidation.
    """
    validate_spec(spec, g, nb)
    if rep.graph != g:
        raise RepresentationError("representation belongs to a different graph")
    if not is_strongly_consistent(g, rep.ordering, rep.partition):
        raise RepresentationError("neighbourhood constraints need a strongly consistent representation")
    if not monotone_neighborhoods(g, rep):
        raise RepresentationError("closed neighbourhoods are not nested within classes")
    layout = Layout(g, rep, spec)
    layout.kind = "proper"
    rules = _Rules(layout, nb, track_earlier_upper)
    flat = (0,) * (layout.k * layout.r)
    sink = ProperState(tuple((b.lower, b.upper) for _, b in layout.bounds), flat, flat, flat, flat, (), ())
    found = build_and_solve(layout, spec, sink, rules.first_ok, rules.predecessor)
    return finish(g, layout, spec, found, nb)


def proper_state_bound(n: int, k: int, r: int, p: int, q: int) -> int:
    """State-count bound including the neighbourhood parameters and the at-most-once groups."""
    return thin.state_bound(n, k, r, p, q) * n ** (2 * k * k * r + 2 * k * r)
