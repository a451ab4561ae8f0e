import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thinkit import (
    Ordering,
    Partition,
    SizeCapExceeded,
    build_graph,
    complete_graph,
    consistent_order_for_partition,
    cycle_graph,
    incompatibility_graph,
    is_consistent,
    is_strongly_consistent,
    min_consistent_partition,
    min_partition_size,
    path_graph,
    proper_thinness_exact,
    thinness_exact,
)
from thinkit.errors import InputError
from thinkit.families import gen_complement_matching
from thinkit.representations import (
    NonBetweennessInstance,
    reduce_non_betweenness,
    solve_non_betweenness_bruteforce,
)

from helpers import brute_min_partition, brute_thinness, connected_graphs, random_graph, set_partitions


@st.composite
def graph_and_order(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if draw(st.booleans())]
    return build_graph(n, edges), Ordering.of(draw(st.permutations(range(n))))


@settings(max_examples=150, deadline=None)
@given(graph_and_order(), st.booleans())
def test_colourings_of_incompatibility_graph_are_consistent_partitions(case, strong):
    g, order = case
    inc = incompatibility_graph(g, order, strong).graph
    check = is_strongly_consistent if strong else is_consistent
    for labels in set_partitions(g.n):
        proper = all(labels[u] != labels[v] for u, v in inc.edges)
        assert proper == check(g, order, Partition.of(labels))


@settings(max_examples=150, deadline=None)
@given(graph_and_order(), st.booleans())
def test_incompatibility_complement_is_transitive(case, strong):
    g, order = case
    assert incompatibility_graph(g, order, strong).complement_is_transitive()


@settings(max_examples=120, deadline=None)
@given(graph_and_order(), st.booleans())
def test_min_partition_is_optimal_and_lexicographically_first(case, strong):
    g, order = case
    part = min_consistent_partition(g, order, strong)
    check = is_strongly_consistent if strong else is_consistent
    assert check(g, order, part)
    k = brute_min_partition(g, order, strong)
    assert part.k == k == min_partition_size(g, order, strong)
    # Class sequences read along the order, with classes numbered by first appearance.
    seq = order.sequence
    best = None
    for labels in set_partitions(g.n):
        if max(labels) + 1 != k:
            continue
        class_of = [0] * g.n
        for p, v in enumerate(seq):
            class_of[v] = labels[p]
        if check(g, order, Partition.of(class_of)):
            best = labels
            break
    assert [part.class_of[v] for v in seq] == best


@pytest.mark.parametrize("t", [1, 2, 3])
def test_thinness_of_complement_matchings(t):
    g = gen_complement_matching(t)
    assert thinness_exact(g)[0] == t
    assert proper_thinness_exact(g)[0] == t


@pytest.mark.parametrize(
    "g, thin, pthin",
    [
        (complete_graph(5), 1, 1),
        (cycle_graph(4), 2, 2),
        (path_graph(4), 1, 1),
        (build_graph(4, [(0, 1), (0, 2), (0, 3)]), 1, 2),
    ],
    ids=["K5", "C4", "P4", "claw"],
)
def test_known_values(g, thin, pthin):
    k, rep = thinness_exact(g)
    assert k == thin and rep.k == thin and is_consistent(g, rep.ordering, rep.partition)
    k, rep = proper_thinness_exact(g)
    assert k == pthin and rep.k == pthin and is_strongly_consistent(g, rep.ordering, rep.partition)


def test_exact_search_matches_order_enumeration():
    for g in connected_graphs(5):
        assert thinness_exact(g)[0] == brute_thinness(g)
        assert proper_thinness_exact(g)[0] == brute_thinness(g, strong=True)


@pytest.mark.parametrize("seed", range(12))
def test_exact_search_matches_order_enumeration_n6(seed):
    g = random_graph(random.Random(seed), 6, 0.5)
    assert thinness_exact(g)[0] == brute_thinness(g)
    assert proper_thinness_exact(g)[0] == brute_thinness(g, strong=True)


@pytest.mark.parametrize("seed", range(20))
def test_thin_at_most_proper_thin(seed):
    rng = random.Random(100 + seed)
    g = random_graph(rng, rng.randint(1, 7), rng.random())
    assert thinness_exact(g)[0] <= proper_thinness_exact(g)[0]


def test_exact_search_size_cap():
    with pytest.raises(SizeCapExceeded, match="too large"):
        thinness_exact(path_graph(12))
    assert thinness_exact(path_graph(12), limit=12)[0] == 1


def test_size_cap_environment_override(monkeypatch):
    monkeypatch.setenv("THINKIT_SIZE_CAP", "4")
    with pytest.raises(SizeCapExceeded):
        thinness_exact(path_graph(5))


def test_order_for_singleton_partition_always_exists():
    g = cycle_graph(5)
    order = consistent_order_for_partition(g, Partition.singletons(5), strong=True)
    assert order is not None and len(order) == 5


def test_c4_has_no_one_class_order():
    assert consistent_order_for_partition(cycle_graph(4), Partition.single(4)) is None


@pytest.mark.parametrize("seed", range(25))
def test_order_search_agrees_with_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    g = random_graph(rng, n, 0.5)
    part = Partition.from_labels([rng.randrange(3) for _ in range(n)])
    for strong in (False, True):
        check = is_strongly_consistent if strong else is_consistent
        exists = any(check(g, Ordering.of(p), part) for p in itertools.permutations(range(n)))
        found = consistent_order_for_partition(g, part, strong)
        assert (found is not None) == exists
        if found is not None:
            assert check(g, found, part)


@pytest.mark.parametrize("seed", range(40))
def test_matched_pairs_keep_their_relative_order(seed):
    # x1 x2 and y1 y2 are the only edges between {x1, y1} and {x2, y2}.
    rng = random.Random(seed)
    extra = rng.randint(0, 3)
    n = 4 + extra
    edges = [(0, 2), (1, 3)]
    edges += [(u, v) for u in range(n) for v in range(max(u + 1, 4), n) if rng.random() < 0.5]
    g = build_graph(n, edges)
    part = Partition.from_labels([0, 0, 1, 1] + [rng.randrange(3) for _ in range(extra)])
    x1, y1, x2, y2 = 0, 1, 2, 3
    for p in itertools.permutations(range(n)):
        order = Ordering.of(p)
        if is_consistent(g, order, part):
            pos = order.position
            assert (pos(x1) < pos(y1)) == (pos(x2) < pos(y2))


def test_reduction_without_triples():
    g, part = reduce_non_betweenness(NonBetweennessInstance(("a", "b", "c"), ()))
    assert g.n == 3 and g.m == 0 and part.k == 1


def test_reduction_of_one_triple():
    inst = NonBetweennessInstance(("a", "b", "c"), (("a", "b", "c"),))
    g, part = reduce_non_betweenness(inst)
    assert g.n == 6
    assert g.edges == frozenset({(3, 5), (0, 3), (1, 4), (2, 5)})
    assert part.class_of == (0, 0, 0, 1, 1, 1)
    assert consistent_order_for_partition(g, part) is not None


def test_non_betweenness_rejects_bad_triples():
    with pytest.raises(InputError, match="repeats"):
        NonBetweennessInstance(("a", "b"), (("a", "a", "b"),))
    with pytest.raises(InputError, match="outside"):
        NonBetweennessInstance(("a", "b", "c"), (("a", "b", "d"),))


def test_non_betweenness_bruteforce():
    inst = NonBetweennessInstance(("a", "b", "c"), (("a", "b", "c"),))
    order = solve_non_betweenness_bruteforce(inst)
    assert order[0] == "b" or order[-1] == "b"
    assert inst.satisfied_by(order)
    assert solve_non_betweenness_bruteforce(NonBetweennessInstance(("a", "b", "c"), ())) is not None
    three = NonBetweennessInstance(("a", "b", "c"), (("a", "b", "c"), ("b", "a", "c"), ("a", "c", "b")))
    assert solve_non_betweenness_bruteforce(three) is None
