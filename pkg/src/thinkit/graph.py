"""Simple graphs, vertex orderings, partitions and the consistency predicates.

Vertices are dense integer ids ``0..n-1``.  Everything here is immutable once
built, so values can be shared freely between callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import InputError, RepresentationError


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph.

    Use :func:`build_graph` rather than the constructor; it validates ids,
    rejects loops and deduplicates edges.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    masks: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v] | {v}

    def non_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u for u in range(self.n) if u != v and u not in self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def boundary(self, xs: Iterable[int]) -> set[int]:
        """N(X): vertices outside X with at least one neighbor in X."""
        xs = set(xs)
        out: set[int] = set()
        for v in xs:
            out |= self.adjacency[v]
        return out - xs

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled so that ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        pairs = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return build_graph(len(vertices), pairs)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    if n < 1:
        raise InputError(f"a graph needs at least one vertex, got n={n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: set[tuple[int, int]] = set()
    for pair in edge_list:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge {(u, v)} has an id out of range 0..{n - 1}")
        if u == v:
            raise InputError(f"loop edge {(u, v)} is not allowed")
        a, b = (u, v) if u < v else (v, u)
        edges.add((a, b))
        adj[a].add(b)
        adj[b].add(a)
    masks = tuple(sum(1 << u for u in a) for a in adj)
    return Graph(n, frozenset(edges), tuple(frozenset(a) for a in adj), masks)


def complement(g: Graph) -> Graph:
    return build_graph(g.n, [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


@dataclass(frozen=True)
class Ordering:
    sequence: tuple[int, ...]
    inverse: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def of(cls, sequence: Sequence[int]) -> Ordering:
        seq = tuple(sequence)
        n = len(seq)
        if sorted(seq) != list(range(n)):
            raise InputError(f"ordering {list(seq)} is not a permutation of 0..{n - 1}")
        inv = [0] * n
        for i, v in enumerate(seq):
            inv[v] = i
        return cls(seq, tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Ordering:
        return cls.of(range(n))

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def position(self, v: int) -> int:
        return self.inverse[v]

    def reversed(self) -> Ordering:
        return Ordering.of(self.sequence[::-1])


@dataclass(frozen=True)
class Partition:
    class_of: tuple[int, ...]
    k: int

    @classmethod
    def of(cls, class_of: Sequence[int]) -> Partition:
        labels = tuple(class_of)
        if not labels:
            raise InputError("a partition needs at least one vertex")
        k = max(labels) + 1
        if min(labels) < 0 or set(labels) != set(range(k)):
            raise InputError(f"class ids {sorted(set(labels))} are not contiguous from 0 (empty class)")
        return cls(labels, k)

    @classmethod
    def from_labels(cls, labels: Sequence) -> Partition:
        """Relabel arbitrary hashable labels to 0..k-1 by first appearance."""
        ids: dict = {}
        return cls.of([ids.setdefault(x, len(ids)) for x in labels])

    @classmethod
    def single(cls, n: int) -> Partition:
        return cls((0,) * n, 1)

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple(range(n)), n)

    def __len__(self) -> int:
        return len(self.class_of)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out


class Mode(str, Enum):
    WEAK = "weak"
    STRONG = "strong"


def _check_dims(g: Graph, order: Ordering, part: Partition) -> None:
    if len(order) != g.n or len(part) != g.n:
        raise InputError(f"ordering ({len(order)}) and partition ({len(part)}) must both cover {g.n} vertices")


def _consistent_sequence(g: Graph, seq: Sequence[int], class_of: Sequence[int]) -> bool:
    # For each vertex, its earlier neighbors inside any class must form a suffix
    # of that class's earlier members.
    k = max(class_of) + 1
    placed: list[list[int]] = [[] for _ in range(k)]
    for t in seq:
        mask = g.masks[t]
        for members in placed:
            seen = False
            for u in members:
                if (mask >> u) & 1:
                    seen = True
                elif seen:
                    return False
        placed[class_of[t]].append(t)
    return True


def is_consistent(g: Graph, order: Ordering, part: Partition) -> bool:
    _check_dims(g, order, part)
    return _consistent_sequence(g, order.sequence, part.class_of)


def is_strongly_consistent(g: Graph, order: Ordering, part: Partition) -> bool:
    _check_dims(g, order, part)
    return _consistent_sequence(g, order.sequence, part.class_of) and _consistent_sequence(
        g, order.sequence[::-1], part.class_of
    )


def is_consistent_naive(g: Graph, order: Ordering, part: Partition, strong: bool = False) -> bool:
    """Literal triple scan over all r < s < t; the reference the fast checks are tested against."""
    _check_dims(g, order, part)
    seq, cls = order.sequence, part.class_of
    n = g.n
    for r in range(n):
        for s in range(r + 1, n):
            for t in range(s + 1, n):
                vr, vs, vt = seq[r], seq[s], seq[t]
                if cls[vr] == cls[vs] and g.has_edge(vt, vr) and not g.has_edge(vt, vs):
                    return False
                if strong and cls[vs] == cls[vt] and g.has_edge(vr, vt) and not g.has_edge(vr, vs):
                    return False
    return True


@dataclass(frozen=True)
class ThinRepresentation:
    """An ordering and partition that are consistent (weak) or strongly consistent with ``graph``."""

    graph: Graph = field(repr=False)
    ordering: Ordering
    partition: Partition
    mode: Mode = Mode.WEAK

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        check = is_strongly_consistent if self.mode is Mode.STRONG else is_consistent
        if not check(self.graph, self.ordering, self.partition):
            adverb = "strongly " if self.mode is Mode.STRONG else ""
            raise RepresentationError(f"ordering and partition are not {adverb}consistent")

    @classmethod
    def of(cls, g: Graph, sequence: Sequence[int], class_of: Sequence[int], mode: Mode | str = Mode.WEAK):
        return cls(g, Ordering.of(sequence), Partition.of(class_of), Mode(mode))

    @property
    def k(self) -> int:
        return self.partition.k

    @property
    def strong(self) -> bool:
        return self.mode is Mode.STRONG
