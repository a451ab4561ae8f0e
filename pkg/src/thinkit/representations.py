"""Finding (strongly) consistent representations.

For a fixed vertex order the minimum consistent partition is a colouring of the
order's incompatibility graph, whose complement is transitively oriented by the
order itself; so a minimum colouring is a minimum chain partition, computed by
bipartite matching.  Searching over orders or over partitions is exponential and
only offered under a size cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import config
from .errors import InputError, SolverInvariantError
from .graph import (
    Graph,
    Mode,
    Ordering,
    Partition,
    ThinRepresentation,
    build_graph,
    is_consistent,
    is_strongly_consistent,
)
from .matching import chains_needed, min_chain_partition


@dataclass(frozen=True)
class IncompatibilityGraph:
    """Pairs of vertices that can never share a class under ``source_order``."""

    graph: Graph
    source_order: Ordering
    strong: bool

    def complement_is_transitive(self) -> bool:
        """No r < s < t with rs, st non-edges and rt an edge."""
        seq = self.source_order.sequence
        g = self.graph
        n = g.n
        for i in range(n):
            for j in range(i + 1, n):
                if g.has_edge(seq[i], seq[j]):
                    continue
                for l in range(j + 1, n):
                    if not g.has_edge(seq[j], seq[l]) and g.has_edge(seq[i], seq[l]):
                        return False
        return True


def _incompatible_positions(g: Graph, seq: Sequence[int], strong: bool) -> list[int]:
    """Bitmask over positions: bit q of row p set iff positions p, q are incompatible."""
    n = g.n
    A = g.masks
    after = [0] * (n + 1)
    for q in range(n - 1, -1, -1):
        after[q] = after[q + 1] | (1 << seq[q])
    rows = [0] * n
    before = 0
    for p in range(n):
        vp = seq[p]
        for q in range(p + 1, n):
            vq = seq[q]
            hit = after[q + 1] & A[vp] & ~A[vq]
            if not hit and strong:
                hit = before & A[vq] & ~A[vp]
            if hit:
                rows[p] |= 1 << q
                rows[q] |= 1 << p
        before |= 1 << vp
    return rows


def incompatibility_graph(g: Graph, order: Ordering, strong: bool = False) -> IncompatibilityGraph:
    if len(order) != g.n:
        raise InputError(f"ordering covers {len(order)} vertices, graph has {g.n}")
    seq = order.sequence
    rows = _incompatible_positions(g, seq, strong)
    edges = [(seq[p], seq[q]) for p in range(g.n) for q in range(p + 1, g.n) if (rows[p] >> q) & 1]
    return IncompatibilityGraph(build_graph(g.n, edges), order, strong)


def min_partition_size(g: Graph, order: Ordering, strong: bool = False) -> int:
    """Number of classes of a minimum (strongly) consistent partition for ``order``."""
    rows = _incompatible_positions(g, order.sequence, strong)
    n = g.n
    below = [[q for q in range(p + 1, n) if not (rows[p] >> q) & 1] for p in range(n)]
    return len(min_chain_partition(n, below))


def min_consistent_partition(g: Graph, order: Ordering, strong: bool = False) -> Partition:
    """Minimum partition (strongly) consistent with ``order``.

    Among all minimum partitions the one whose class sequence, read along the
    order, is lexicographically smallest is returned.
    """
    if len(order) != g.n:
        raise InputError(f"ordering covers {len(order)} vertices, graph has {g.n}")
    n = g.n
    seq = order.sequence
    rows = _incompatible_positions(g, seq, strong)

    def less(p: int, q: int) -> bool:
        return p < q and not (rows[p] >> q) & 1

    below = [[q for q in range(p + 1, n) if less(p, q)] for p in range(n)]
    k = len(min_chain_partition(n, below))

    # Greedy over positions: smallest class id that still admits a k-class completion.
    tops: list[int] = []
    labels = [0] * n
    for p in range(n):
        rest = range(p + 1, n)
        for c in range(len(tops) + 1):
            if c == len(tops):
                if c == k:
                    continue
                trial = tops + [p]
            elif less(tops[c], p):
                trial = tops[:c] + [p] + tops[c + 1 :]
            else:
                continue
            if len(trial) + chains_needed(trial, rest, less) <= k:
                tops = trial
                labels[p] = c
                break
        else:
            raise SolverInvariantError("chain completion failed; the incompatibility order is not transitive")
    class_of = [0] * n
    for p, v in enumerate(seq):
        class_of[v] = labels[p]
    return Partition.of(class_of)


def _twin_masks(g: Graph) -> list[int]:
    """For each vertex, the mask of its (true or false) twins with a larger id."""
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(("open", g.adjacency[v]), []).append(v)
        groups.setdefault(("closed", g.adjacency[v] | {v}), []).append(v)
    bigger = [0] * g.n
    for members in groups.values():
        for i, v in enumerate(members):
            for w in members[i + 1 :]:
                bigger[v] |= 1 << w
    return bigger


def _max_clique_size(cand: int, adj: list[int]) -> int:
    best = 0

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(cand & adj[v], size + 1)

    expand(cand, 0)
    return best


def _best_order(g: Graph, strong: bool) -> tuple[int, list[int]]:
    """Branch and bound over orders; returns (min partition size, an optimal order)."""
    n = g.n
    A = g.masks
    full = (1 << n) - 1
    bigger_twins = _twin_masks(g)

    best_seq = list(range(n))
    best = min_partition_size(g, Ordering.identity(n), strong)
    if best == 1:
        return best, best_seq

    # Orders are built from the right end.  All witnesses z (resp. x) for a pair
    # of placed vertices are then already placed (resp. known to be unplaced), so
    # the incompatibility graph induced on the placed suffix is final.
    inc = [0] * n
    after_nonadj = [0] * n
    suffix: list[int] = []

    def rec(placed: int, omega: int) -> None:
        nonlocal best, best_seq
        if placed == full:
            if omega < best:
                best = omega
                best_seq = suffix[::-1]
            return
        unplaced = full & ~placed
        options = []
        rest = unplaced
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            if bigger_twins[v] & ~placed:
                continue
            left = unplaced & ~low
            row = 0
            scan = placed
            while scan:
                wl = scan & -scan
                scan ^= wl
                w = wl.bit_length() - 1
                if A[v] & after_nonadj[w] or (strong and left & A[w] & ~A[v]):
                    row |= wl
            grown = max(omega, 1 + _max_clique_size(row, inc))
            if grown < best:
                options.append((grown, row.bit_count(), v, row))
        options.sort()
        for grown, _, v, row in options:
            if grown >= best:
                break
            after_nonadj[v] = placed & ~A[v]
            inc[v] = row
            scan = row
            while scan:
                wl = scan & -scan
                scan ^= wl
                inc[wl.bit_length() - 1] |= 1 << v
            suffix.append(v)
            rec(placed | (1 << v), grown)
            suffix.pop()
            scan = row
            while scan:
                wl = scan & -scan
                scan ^= wl
                inc[wl.bit_length() - 1] &= ~(1 << v)
            inc[v] = 0
            if best == 1:
                return

    rec(0, 0)
    return best, best_seq


def _exact(g: Graph, strong: bool, limit: int | None) -> tuple[int, ThinRepresentation]:
    config.check_cap("graph", g.n, limit, config.THINNESS_LIMIT)
    k, seq = _best_order(g, strong)
    order = Ordering.of(seq)
    part = min_consistent_partition(g, order, strong)
    if part.k != k:
        raise SolverInvariantError(f"search value {k} disagrees with chain partition {part.k}")
    return k, ThinRepresentation(g, order, part, Mode.STRONG if strong else Mode.WEAK)


def thinness_exact(g: Graph, limit: int | None = None) -> tuple[int, ThinRepresentation]:
    """Exact thinness with a witness representation (exponential; capped at ``limit`` vertices)."""
    return _exact(g, False, limit)


def proper_thinness_exact(g: Graph, limit: int | None = None) -> tuple[int, ThinRepresentation]:
    """Exact proper thinness with a strongly consistent witness."""
    return _exact(g, True, limit)


def consistent_order_for_partition(
    g: Graph, part: Partition, strong: bool = False, limit: int | None = None
) -> Ordering | None:
    """An ordering (strongly) consistent with ``part``, or None if there is none.

    Vertices are placed left to right.  A placement is refused as soon as some
    unplaced vertex could no longer be appended without a violation; along any
    surviving prefix the remaining problem depends only on the set of placed
    vertices, so dead prefixes are memoised by that set.
    """
    if len(part) != g.n:
        raise InputError(f"partition covers {len(part)} vertices, graph has {g.n}")
    config.check_cap("graph", g.n, limit, config.ORDER_SEARCH_LIMIT)
    n = g.n
    A = g.masks
    cls = part.class_of
    class_mask = [0] * part.k
    for v, c in enumerate(cls):
        class_mask[c] |= 1 << v
    full = (1 << n) - 1
    dead: set[int] = set()
    seq: list[int] = []

    def blocks(placed: int, x: int) -> bool:
        c = cls[x]
        same = placed & class_mask[c]
        rest = full & ~placed & ~(1 << x)
        while rest:
            low = rest & -rest
            rest ^= low
            t = low.bit_length() - 1
            # t's earlier neighbours in class c would stop being a suffix.
            if not (A[t] >> x) & 1 and A[t] & same:
                return True
            # reverse direction: some r < x with r ~ t but r !~ x, x and t in one class.
            if strong and cls[t] == c and placed & A[t] & ~A[x]:
                return True
        return False

    def rec(placed: int) -> bool:
        if placed == full:
            return True
        if placed in dead:
            return False
        rest = full & ~placed
        while rest:
            low = rest & -rest
            rest ^= low
            x = low.bit_length() - 1
            if blocks(placed, x):
                continue
            seq.append(x)
            if rec(placed | low):
                return True
            seq.pop()
        dead.add(placed)
        return False

    if not rec(0):
        return None
    order = Ordering.of(seq)
    check = is_strongly_consistent if strong else is_consistent
    if not check(g, order, part):
        raise SolverInvariantError("order search returned an inconsistent ordering")
    return order


@dataclass(frozen=True)
class NonBetweennessInstance:
    ground_set: tuple[str, ...]
    triples: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "ground_set", tuple(self.ground_set))
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))
        if len(set(self.ground_set)) != len(self.ground_set):
            raise InputError("ground set has repeated elements")
        known = set(self.ground_set)
        for t in self.triples:
            if len(t) != 3:
                raise InputError(f"triple {t} does not have three elements")
            if len(set(t)) != 3:
                raise InputError(f"triple {t} repeats an element")
            missing = [a for a in t if a not in known]
            if missing:
                raise InputError(f"triple {t} uses elements {missing} outside the ground set")

    def satisfied_by(self, order: Sequence[str]) -> bool:
        pos = {a: i for i, a in enumerate(order)}
        return all(not (pos[x] < pos[y] < pos[z] or pos[z] < pos[y] < pos[x]) for x, y, z in self.triples)


def reduce_non_betweenness(inst: NonBetweennessInstance) -> tuple[Graph, Partition]:
    """Graph and partition admitting a (strongly) consistent order iff ``inst`` is a yes-instance.

    Vertex ``i`` for ``i < |A|`` is the copy of the i-th ground element in the
    stable class 0; triple ``t`` contributes vertices ``|A| + 3t + (0, 1, 2)`` for
    its first, middle and last element, forming class ``t + 1``.
    """
    index = {a: i for i, a in enumerate(inst.ground_set)}
    na = len(index)
    n = na + 3 * len(inst.triples)
    copies: list[list[int]] = [[i] for i in range(na)]
    labels = [0] * na
    edges = []
    for t, (x, y, z) in enumerate(inst.triples):
        base = na + 3 * t
        for offset, a in enumerate((x, y, z)):
            copies[index[a]].append(base + offset)
        labels += [t + 1] * 3
        edges.append((base, base + 2))
    for group in copies:
        edges.extend(itertools.combinations(group, 2))
    return build_graph(n, edges), Partition.of(labels)


def solve_non_betweenness_bruteforce(inst: NonBetweennessInstance, limit: int | None = None) -> list[str] | None:
    config.check_cap("ground set", len(inst.ground_set), limit, config.NON_BETWEENNESS_LIMIT)
    for perm in itertools.permutations(inst.ground_set):
        if inst.satisfied_by(perm):
            return list(perm)
    return None
