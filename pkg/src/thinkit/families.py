"""Graph operations that carry representations, and generators of named families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import config
from .errors import InputError, RepresentationError
from .graph import Graph, Mode, Ordering, Partition, ThinRepresentation, build_graph, complement, complete_graph


def _check_modes(rep1: ThinRepresentation, rep2: ThinRepresentation) -> Mode:
    if rep1.mode is not rep2.mode:
        raise RepresentationError(f"representation modes differ: {rep1.mode.value} vs {rep2.mode.value}")
    return rep1.mode


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return build_graph(g1.n + g2.n, list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges])


def join(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    across = [(u, v + shift) for u in range(g1.n) for v in range(g2.n)]
    return build_graph(g1.n + g2.n, list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges] + across)


def _concat(g, rep1, rep2, shift, classes2, mode) -> ThinRepresentation:
    seq = list(rep1.ordering.sequence) + [v + shift for v in rep2.ordering.sequence]
    return ThinRepresentation(g, Ordering.of(seq), Partition.of(list(rep1.partition.class_of) + classes2), mode)


def union_with_rep(g1: Graph, rep1: ThinRepresentation, g2: Graph, rep2: ThinRepresentation):
    """Disjoint union; class ``i`` of the result is class ``i`` of both parts."""
    mode = _check_modes(rep1, rep2)
    g = disjoint_union(g1, g2)
    return g, _concat(g, rep1, rep2, g1.n, list(rep2.partition.class_of), mode)


def join_with_rep(g1: Graph, rep1: ThinRepresentation, g2: Graph, rep2: ThinRepresentation):
    """Join; the class families are kept apart, except that a complete ``g2`` joins class 0 (weak mode)."""
    mode = _check_modes(rep1, rep2)
    g = join(g1, g2)
    if g2.is_complete() and mode is Mode.WEAK:
        classes2 = [0] * g2.n
    else:
        classes2 = [c + rep1.k for c in rep2.partition.class_of]
    return g, _concat(g, rep1, rep2, g1.n, classes2, mode)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Vertex ``(v, w)`` gets id ``v * g2.n + w``."""
    n2 = g2.n
    edges = [(u * n2 + w, v * n2 + w) for u, v in g1.edges for w in range(n2)]
    edges += [(v * n2 + a, v * n2 + b) for v in range(g1.n) for a, b in g2.edges]
    return build_graph(g1.n * n2, edges)


def cartesian_product_with_rep(g1: Graph, rep1: ThinRepresentation, g2: Graph):
    """Product with the lexicographic order and one class per (class of g1, vertex of g2)."""
    config.check_cap("cartesian product", g1.n * g2.n, None, config.PRODUCT_LIMIT)
    g = cartesian_product(g1, g2)
    n2 = g2.n
    seq = [v * n2 + w for v in rep1.ordering.sequence for w in range(n2)]
    classes = [rep1.partition.class_of[x // n2] * n2 + x % n2 for x in range(g.n)]
    return g, ThinRepresentation(g, Ordering.of(seq), Partition.of(classes), rep1.mode)


def gen_complement_matching(t: int) -> Graph:
    if t < 1:
        raise InputError("t must be at least 1")
    return complement(build_graph(2 * t, [(2 * i, 2 * i + 1) for i in range(t)]))


def _ternary_tree(h: int) -> tuple[list[int], list[int]]:
    """Parent array and depths of the complete ternary tree of height ``h``, in BFS order."""
    parent, depth = [-1], [0]
    frontier = [0]
    for d in range(1, h + 1):
        nxt = []
        for u in frontier:
            for _ in range(3):
                parent.append(u)
                depth.append(d)
                nxt.append(len(parent) - 1)
        frontier = nxt
    return parent, depth


def gen_claw_h(h: int) -> tuple[Graph, ThinRepresentation]:
    """Ternary tree of height ``h`` plus every vertex-ancestor edge; postorder, classes by height."""
    if h < 1:
        raise InputError("h must be at least 1")
    size = (3 ** (h + 1) - 1) // 2
    config.check_cap("claw_h size", size, None, 1 << 12)
    parent, depth = _ternary_tree(h)
    edges = []
    for v in range(1, size):
        u = parent[v]
        while u != -1:
            edges.append((u, v))
            u = parent[u]
    g = build_graph(size, edges)
    children: list[list[int]] = [[] for _ in range(size)]
    for v in range(1, size):
        children[parent[v]].append(v)
    order: list[int] = []

    def visit(u: int) -> None:
        for c in children[u]:
            visit(c)
        order.append(u)

    visit(0)
    classes = [h - d for d in depth]
    return g, ThinRepresentation(g, Ordering.of(order), Partition.of(classes), Mode.STRONG)


def gen_Gk(k: int) -> tuple[Graph, ThinRepresentation]:
    """Paths ``a_1..a_k`` and ``b_1..b_k`` hanging off a clique ``v_1..v_{k+1}``.

    Ids: ``a_i = i-1``, ``b_i = k+i-1``, ``v_j = 2k+j-1``.  ``a_i`` and ``b_i`` see
    ``v_1..v_i``, and consecutive path vertices are adjacent.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    a, b = list(range(k)), list(range(k, 2 * k))
    w = list(range(2 * k, 3 * k + 1))
    edges = [(w[i], w[j]) for i in range(k + 1) for j in range(i + 1, k + 1)]
    for side in (a, b):
        for i in range(k):
            edges += [(side[i], w[j]) for j in range(i + 1)]
            if i:
                edges.append((side[i - 1], side[i]))
    g = build_graph(3 * k + 1, edges)
    classes = [0] * k + [1] * k + [2] * (k + 1)
    return g, ThinRepresentation(g, Ordering.identity(g.n), Partition.of(classes), Mode.STRONG)


def gen_grid(r: int, c: int | None = None) -> Graph:
    c = r if c is None else c
    if r < 1 or c < 1:
        raise InputError("grid sides must be positive")
    idx = lambda i, j: i * c + j  # noqa: E731
    edges = [(idx(i, j), idx(i, j + 1)) for i in range(r) for j in range(c - 1)]
    edges += [(idx(i, j), idx(i + 1, j)) for i in range(r - 1) for j in range(c)]
    return build_graph(r * c, edges)


def gen_mary_tree(m: int, h: int) -> Graph:
    """Complete ``m``-ary tree of height ``h`` (a single vertex when ``h == 0``)."""
    if m < 1 or h < 0:
        raise InputError("need m >= 1 and h >= 0")
    n = sum(m**d for d in range(h + 1))
    config.check_cap("m-ary tree size", n, None, 1 << 12)
    return build_graph(n, [((v - 1) // m, v) for v in range(1, n)])


def gen_cograph(spec) -> Graph:
    """Cograph from a nested expression.

    ``spec`` is either ``"v"`` (one vertex) or a tuple ``(op, child, ...)`` with
    ``op`` in {"union", "join"}.
    """
    if spec == "v":
        return build_graph(1, [])
    op, *parts = spec
    graphs = [gen_cograph(p) for p in parts]
    out = graphs[0]
    for other in graphs[1:]:
        out = disjoint_union(out, other) if op == "union" else join(out, other)
    return out


@dataclass(frozen=True)
class IntervalModel:
    """Closed intervals ``[left[v], right[v]]``; vertices are adjacent iff intervals meet."""

    left: tuple[Fraction, ...]
    right: tuple[Fraction, ...]

    @classmethod
    def of(cls, intervals: Sequence[tuple]) -> IntervalModel:
        left = tuple(Fraction(a) for a, _ in intervals)
        right = tuple(Fraction(b) for _, b in intervals)
        for v, (a, b) in enumerate(zip(left, right)):
            if a > b:
                raise InputError(f"interval {v} has left endpoint {a} after right endpoint {b}")
        return cls(left, right)

    @property
    def n(self) -> int:
        return len(self.left)

    def graph(self) -> Graph:
        n = self.n
        return build_graph(
            n,
            [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if self.left[u] <= self.right[v] and self.left[v] <= self.right[u]
            ],
        )

    def canonical(self) -> IntervalModel:
        """Equivalent model with distinct integer endpoints.

        Ties keep the intersection: at equal coordinates left endpoints come first,
        then ids break the remaining ties.
        """
        keys = [(x, 0, v) for v, x in enumerate(self.left)] + [(x, 1, v) for v, x in enumerate(self.right)]
        rank = {key: i for i, key in enumerate(sorted(keys))}
        return IntervalModel(
            tuple(Fraction(rank[(x, 0, v)]) for v, x in enumerate(self.left)),
            tuple(Fraction(rank[(x, 1, v)]) for v, x in enumerate(self.right)),
        )

    def nesting_labels(self) -> list[int]:
        """1 + the longest chain of intervals strictly containing each interval."""
        m = self.canonical()
        by_length = sorted(range(m.n), key=lambda v: m.left[v] - m.right[v])
        label = [0] * m.n
        for v in by_length:
            outer = [label[u] for u in range(m.n) if m.left[u] < m.left[v] and m.right[v] < m.right[u]]
            label[v] = 1 + max(outer, default=0)
        return label


def interval_to_proper_thin(model: IntervalModel, g: Graph | None = None) -> ThinRepresentation:
    """Strong representation: classes are nesting depths, order by right endpoint."""
    mg = model.graph()
    if g is not None and g != mg:
        raise InputError("interval model does not match the graph")
    g = mg
    m = model.canonical()
    labels = model.nesting_labels()
    order = sorted(range(m.n), key=lambda v: m.right[v])
    return ThinRepresentation(g, Ordering.of(order), Partition.of([x - 1 for x in labels]), Mode.STRONG)


def claw_h_interval_model(h: int) -> IntervalModel:
    """Nested model of ``claw_h`` with the vertex ids of :func:`gen_claw_h`."""
    parent, depth = _ternary_tree(h)
    span = 3**h * 4
    intervals: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(span))]
    seen = [0] * len(parent)
    for v in range(1, len(parent)):
        lo, hi = intervals[parent[v]]
        third = (hi - lo) / 3
        slot = seen[parent[v]]
        seen[parent[v]] += 1
        a = lo + slot * third
        intervals.append((a + third / 8, a + third * 7 / 8))
    return IntervalModel.of(intervals)


def complete_with_rep(n: int, mode: Mode | str = Mode.WEAK) -> tuple[Graph, ThinRepresentation]:
    g = complete_graph(n)
    return g, ThinRepresentation(g, Ordering.identity(n), Partition.single(n), Mode(mode))
