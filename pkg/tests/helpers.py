"""Graph batteries and brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from thinkit import Partition, build_graph, is_consistent, is_strongly_consistent
from thinkit.dp import INF, STAR, Bound, ProblemSpec, Sense, all_combinations, proper_state_bound, simple_spec, state_bound
from thinkit.representations import min_partition_size
from thinkit.graph import Ordering


def from_nx(h: nx.Graph):
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return build_graph(len(nodes), [(index[u], index[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def connected_graphs(max_n: int) -> tuple:
    """Every connected graph on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    return tuple(
        from_nx(h) for h in nx.graph_atlas_g() if 0 < h.number_of_nodes() <= max_n and nx.is_connected(h)
    )


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def isomorphic(g1, g2) -> bool:
    return nx.is_isomorphic(to_nx(g1), to_nx(g2))


def random_graph(rng: random.Random, n: int, p: float = 0.5):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5):
    while True:
        g = random_graph(rng, n, p)
        if _spans(g):
            return g


def _spans(g) -> bool:
    return nx.is_connected(to_nx(g))


def set_partitions(n: int):
    """Restricted growth strings of length n."""
    def rec(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for c in range(top + 2):
            prefix.append(c)
            yield from rec(prefix, max(top, c))
            prefix.pop()

    yield from rec([], -1)


def brute_min_partition(g, order, strong: bool) -> int:
    check = is_strongly_consistent if strong else is_consistent
    return min(len(set(labels)) for labels in set_partitions(g.n) if check(g, order, Partition.of(labels)))


def brute_thinness(g, strong: bool = False) -> int:
    """Minimum over all orders, using the per-order partition routine."""
    return min(min_partition_size(g, Ordering.of(p), strong) for p in itertools.permutations(range(g.n)))


def chromatic_number(g) -> int:
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return k
    return g.n


def state_limit(record) -> int:
    """Published state bound for a run; the proper solver gets the neighbourhood multiplier."""
    n, k, r, p, q = record.n, record.k, record.r, record.p, record.q
    base = state_bound(n, k, r, p, q)
    if record.kind == "proper":
        return base * n ** (k * k * r + 2 * k * r)
    return base


def assert_state_bounds(runs) -> None:
    for rec in runs:
        assert 0 < rec.states <= state_limit(rec), rec
        if rec.kind == "proper":
            assert rec.states <= proper_state_bound(rec.n, rec.k, rec.r, rec.p, rec.q), rec


def random_spec(rng: random.Random, n: int, r: int) -> ProblemSpec:
    combos = all_combinations(r)
    lists = []
    for _ in range(n):
        lst = [c for c in combos if rng.random() < 0.6]
        lists.append(tuple(lst or [rng.choice(combos)]))
    matrix = [[STAR] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            matrix[i][j] = matrix[j][i] = rng.choice([0, 1, STAR, STAR])
    extra = {}
    if rng.random() < 0.7:
        q = rng.randint(1, 3)
        extra["q"] = q
        extra["bounded_weights"] = (tuple(rng.randint(0, q) for _ in range(n)),)
        for kind in ("cap_bounds", "cup_bounds"):
            if rng.random() < 0.6:
                sets = frozenset(j for j in range(r) if rng.random() < 0.6) or frozenset({0})
                lo = rng.randint(0, 3)
                hi = rng.choice([INF, lo + rng.randint(0, 3)])
                extra[kind] = (Bound(0, sets, lo, hi),)
    return simple_spec(
        n,
        r,
        matrix,
        lists=lists,
        sense=rng.choice([Sense.MIN, Sense.MAX]),
        weights=[rng.randint(0, 4) for _ in range(n)],
        coefficients=[rng.randint(0, 3) for _ in range(r)],
        **extra,
    )


ACCEPTANCE_LINES: list[str] = []


class criterion:
    """Time a block, record one PASS/FAIL line for it, and enforce the runtime limit."""

    def __init__(self, number: int, title: str, seconds: float):
        self.number, self.title, self.seconds = number, title, seconds

    def __enter__(self):
        import time

        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        elapsed = time.perf_counter() - self._start
        slow = elapsed >= self.seconds
        ok = exc_type is None and not slow
        why = ""
        if exc_type is not None:
            why = f" [{exc_type.__name__}: {str(exc).splitlines()[0][:120] if str(exc) else ''}]"
        elif slow:
            why = f" [over the {self.seconds:.0f}s limit]"
        line = f"criterion {self.number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s / {self.seconds:.0f}s) {self.title}{why}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None and slow:
            raise AssertionError(line)
        return False
