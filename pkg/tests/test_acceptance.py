"""Acceptance criteria 1-10, each timed against its own limit.

Every criterion prints one PASS/FAIL line; the lines are repeated in the
"acceptance criteria" section of the pytest summary.
"""

import itertools
import math
import random

import networkx as nx
import pytest

from thinkit import (
    Ordering,
    Partition,
    build_graph,
    complement,
    complete_graph,
    consistent_order_for_partition,
    cycle_graph,
    incompatibility_graph,
    is_consistent,
    is_strongly_consistent,
    min_consistent_partition,
    path_graph,
    proper_thinness_exact,
    thinness_exact,
)
from thinkit.dp import INF, STAR, Bound, NeighborhoodBounds, record_runs, simple_spec, solve, solve_proper
from thinkit.families import (
    cartesian_product,
    cartesian_product_with_rep,
    complete_with_rep,
    gen_claw_h,
    gen_cograph,
    gen_complement_matching,
    gen_Gk,
    join,
    join_with_rep,
    union_with_rep,
)
from thinkit.problems import (
    brute_force_oracle,
    encode_capacitated_coloring,
    encode_domination_variant,
    encode_list_matrix_partition,
    encode_max_weight_stable_set,
    is_dominating,
    rainbow_bruteforce,
    run_encoding,
    t_rainbow_domination,
)
from thinkit.representations import (
    NonBetweennessInstance,
    reduce_non_betweenness,
    solve_non_betweenness_bruteforce,
)
from thinkit.widths import (
    cutwidth_bruteforce,
    isoperimetric_peak,
    lmimw_bruteforce,
    max_induced_matching,
    ordering_profile,
)

from helpers import (
    assert_state_bounds,
    brute_min_partition,
    chromatic_number,
    connected_graphs,
    criterion,
    from_nx,
    random_graph,
    state_limit,
)

pytestmark = pytest.mark.acceptance

# Solver runs of criteria 5 and 6, re-checked by criterion 10.
SOLVER_RUNS: list = []


def _battery_2_3():
    """200 random graphs with n <= 7 and a random ordering each."""
    rng = random.Random(20260101)
    out = []
    for _ in range(200):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, rng.random())
        out.append((g, Ordering.of(rng.sample(range(n), n))))
    return out


def test_criterion_01_family_exactness():
    with criterion(1, "family exactness: co-tK2, claw, claw_h, G_k", 120):
        for t in (1, 2, 3, 4):
            assert thinness_exact(gen_complement_matching(t))[0] == t
        claw = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert proper_thinness_exact(claw)[0] == 2
        for h in (1, 2, 3):
            g, rep = gen_claw_h(h)
            assert rep.k == h + 1 and is_strongly_consistent(g, rep.ordering, rep.partition)
        assert proper_thinness_exact(gen_claw_h(1)[0])[0] == 2
        for k in (1, 2, 3, 4):
            g, rep = gen_Gk(k)
            assert rep.k == 3 and is_strongly_consistent(g, rep.ordering, rep.partition)


def test_criterion_02_minimum_partition_optimality():
    with criterion(2, "min_consistent_partition equals brute force, 200 graphs, both modes", 120):
        for g, order in _battery_2_3():
            for strong in (False, True):
                part = min_consistent_partition(g, order, strong)
                check = is_strongly_consistent if strong else is_consistent
                assert check(g, order, part)
                assert part.k == brute_min_partition(g, order, strong)


def _random_poset(rng, n):
    """Random strict order on 0..n-1 that extends the natural order, as a closed relation."""
    less = [[False] * n for _ in range(n)]
    p = rng.uniform(0.1, 0.7)
    for a in range(n):
        for b in range(a + 1, n):
            less[a][b] = rng.random() < p
    for m in range(n):
        for a in range(n):
            for b in range(n):
                less[a][b] = less[a][b] or (less[a][m] and less[m][b])
    return less


def _proper_colourings(rng, g, chi):
    seen = set()
    for _ in range(40):
        colour = {}
        for v in rng.sample(range(g.n), g.n):
            used = {colour[u] for u in g.neighbors(v) if u in colour}
            colour[v] = min(c for c in range(g.n) if c not in used)
        seen.add(tuple(colour[v] for v in range(g.n)))
    if chi ** g.n <= 70000:
        for labels in itertools.product(range(chi), repeat=g.n):
            if all(labels[u] != labels[v] for u, v in g.edges):
                seen.add(labels)
    return [Partition.from_labels(c) for c in seen]


def test_criterion_03_incompatibility_structure():
    with criterion(3, "co-comparability structure of incompatibility graphs; posets", 60):
        for g, order in _battery_2_3():
            for strong in (False, True):
                assert incompatibility_graph(g, order, strong).complement_is_transitive()
        rng = random.Random(33)
        for _ in range(50):
            n = rng.randint(1, 8)
            less = _random_poset(rng, n)
            comparable = [(a, b) for a in range(n) for b in range(a + 1, n) if less[a][b]]
            g = complement(build_graph(n, comparable))
            # A linear extension of the poset is a comparability ordering of the complement.
            order = Ordering.of(rng.choice(_linear_extensions(rng, less, n)))
            for strong in (False, True):
                inc = incompatibility_graph(g, order, strong).graph
                assert inc.edges <= g.edges
            chi = chromatic_number(g)
            for part in _proper_colourings(rng, g, chi):
                assert is_strongly_consistent(g, order, part)
            if n <= 7:
                assert thinness_exact(g)[0] <= proper_thinness_exact(g)[0] <= chi


def _linear_extensions(rng, less, n, count=5):
    out = []
    for _ in range(count):
        placed, seq = set(), []
        while len(seq) < n:
            ready = [v for v in range(n) if v not in placed and all(u in placed for u in range(n) if less[u][v])]
            v = rng.choice(ready)
            placed.add(v)
            seq.append(v)
        out.append(seq)
    return out


def _nb_instances():
    for size in range(1, 5):
        ground = tuple("abcd"[:size])
        triples = list(itertools.permutations(ground, 3))
        for s in range(4):
            for chosen in itertools.combinations(triples, s):
                yield NonBetweennessInstance(ground, chosen)


def test_criterion_04_reduction_round_trip():
    with criterion(4, "Non-Betweenness reduction round trip, both modes", 300):
        count = 0
        for inst in _nb_instances():
            g, part = reduce_non_betweenness(inst)
            satisfiable = solve_non_betweenness_bruteforce(inst) is not None
            for strong in (False, True):
                order = consistent_order_for_partition(g, part, strong)
                assert (order is not None) == satisfiable, (inst, strong)
            count += 1
        assert count >= 500


def _thin_battery():
    graphs = list(connected_graphs(6))
    rng = random.Random(55)
    graphs += [random_graph(rng, 7, rng.uniform(0.2, 0.8)) for _ in range(100)]
    return graphs, rng


def _thin_encodings(g, rng):
    n = g.n
    yield encode_max_weight_stable_set(g, [rng.randint(1, 5) for _ in range(n)])
    for colors in (2, 3):
        low = math.ceil(n / colors)
        caps = [rng.randint(max(0, low - 1), n) for _ in range(colors)]
        yield encode_capacitated_coloring(g, colors, caps)
    matrix = [[rng.choice([0, 1, STAR]), None], [None, rng.choice([0, 1, STAR])]]
    matrix[0][1] = matrix[1][0] = rng.choice([0, 1, STAR, STAR])
    lists = [rng.choice([[0], [1], [0, 1], [0, 1], [0, 1]]) for _ in range(n)]
    b = [rng.randint(0, 2) for _ in range(n)]
    cap = Bound(0, frozenset(rng.choice([[0], [1], [0, 1]])), rng.randint(0, 2), rng.choice([INF, 2, 4]))
    cup = Bound(0, frozenset(rng.choice([[0], [1], [0, 1]])), rng.randint(0, 3), rng.choice([INF, 4, 6]))
    yield encode_list_matrix_partition(g, matrix, lists, [cap], [cup], [b], q=2)


def test_criterion_05_thin_solver_matches_oracles():
    with criterion(5, "thin solver vs oracles: MWSS, capacitated colouring, list M-partition", 600):
        graphs, rng = _thin_battery()
        with record_runs() as runs:
            for g in graphs:
                _, rep = thinness_exact(g)
                for enc in _thin_encodings(g, rng):
                    got = run_encoding(g, rep, enc)
                    want = brute_force_oracle(enc)
                    assert (got is None) == (want is None), (enc.name, sorted(g.edges))
                    if got is not None:
                        assert got.value == want.value and enc.check(got.witness)
        assert_state_bounds(runs)
        SOLVER_RUNS.extend(runs)


def test_criterion_06_proper_solver_matches_oracles():
    with criterion(6, "proper solver vs oracles: dominating, independent, total, efficient", 600):
        variants = ("plain", "independent", "total", "efficient")
        with record_runs() as runs:
            for g in connected_graphs(6):
                _, rep = proper_thinness_exact(g)
                for variant in variants:
                    enc = encode_domination_variant(g, variant)
                    got = run_encoding(g, rep, enc)
                    want = brute_force_oracle(enc)
                    assert (got is None) == (want is None), (variant, sorted(g.edges))
                    if got is not None:
                        assert got.value == want.value
                        assert is_dominating(g, got.witness, variant)
        assert_state_bounds(runs)
        SOLVER_RUNS.extend(runs)


def test_criterion_07_width_inequalities():
    with criterion(7, "lmimw <= thin <= cutw + 1, thin >= b_v / Delta, per-ordering MIM", 600):
        for g in connected_graphs(6):
            k, rep = thinness_exact(g)
            assert lmimw_bruteforce(g) <= k <= cutwidth_bruteforce(g) + 1
            peak = isoperimetric_peak(g)
            if g.max_degree:
                assert k >= math.ceil(peak / g.max_degree)
            else:
                assert peak == 0
            assert max(ordering_profile(g, rep.ordering), default=0) <= k


def _random_cograph_expr(rng, n):
    if n == 1:
        return "v"
    a = rng.randint(1, n - 1)
    return (rng.choice(["union", "join"]), _random_cograph_expr(rng, a), _random_cograph_expr(rng, n - a))


def test_criterion_08_operations():
    with criterion(8, "union, join, complete join, g v 2K1, cographs, products", 600):
        rng = random.Random(88)
        for _ in range(30):
            g1 = random_graph(rng, rng.randint(1, 5), rng.random())
            g2 = random_graph(rng, rng.randint(1, 5), rng.random())
            k1, r1 = thinness_exact(g1)
            k2, r2 = thinness_exact(g2)
            g, rep = union_with_rep(g1, r1, g2, r2)
            assert thinness_exact(g)[0] == max(k1, k2) == rep.k
            p1, s1 = proper_thinness_exact(g1)
            p2, s2 = proper_thinness_exact(g2)
            g, rep = union_with_rep(g1, s1, g2, s2)
            assert proper_thinness_exact(g)[0] == max(p1, p2) == rep.k
            g, rep = join_with_rep(g1, r1, g2, r2)
            assert thinness_exact(g)[0] <= rep.k <= k1 + k2
            m = rng.randint(1, 3)
            km, rm = complete_with_rep(m)
            g, rep = join_with_rep(g1, r1, km, rm)
            assert thinness_exact(g)[0] == k1 == rep.k
        for t1 in range(1, 4):
            for t2 in range(1, 6 - t1):
                g = join(gen_complement_matching(t1), gen_complement_matching(t2))
                assert thinness_exact(g)[0] == t1 + t2
        two_k1 = build_graph(2, [])
        for h in nx.graph_atlas_g()[1:]:
            if h.number_of_nodes() > 5:
                break
            g = from_nx(h)
            if g.is_complete():
                continue
            assert thinness_exact(join(g, two_k1))[0] == thinness_exact(g)[0] + 1
        for _ in range(100):
            g = gen_cograph(_random_cograph_expr(rng, rng.randint(1, 9)))
            expected = max(1, max_induced_matching(g.n, complement(g).edges))
            assert thinness_exact(g)[0] == expected
        for strong in (False, True):
            for _ in range(15):
                g1 = random_graph(rng, rng.randint(1, 4), rng.random())
                g2 = random_graph(rng, rng.randint(1, 4), rng.random())
                k1, r1 = (proper_thinness_exact if strong else thinness_exact)(g1)
                g, rep = cartesian_product_with_rep(g1, r1, g2)
                check = is_strongly_consistent if strong else is_consistent
                assert g == cartesian_product(g1, g2)
                assert rep.k == k1 * g2.n and check(g, rep.ordering, rep.partition)


def test_criterion_09_rainbow_domination():
    with criterion(9, "2-rainbow domination equals domination of G x K2", 60):
        graphs = [path_graph(n) for n in range(1, 6)] + [cycle_graph(n) for n in range(3, 6)]
        for g in graphs:
            res = t_rainbow_domination(g, thinness_exact(g)[1], 2)
            prod = cartesian_product(g, complete_graph(2))
            gamma = brute_force_oracle(encode_domination_variant(prod, "plain")).value
            assert res.weight == gamma == rainbow_bruteforce(g, 2).value
        for g in (complete_graph(2), path_graph(3)):
            assert t_rainbow_domination(g, thinness_exact(g)[1], 2).weight == 2


def test_criterion_10_state_count_guard():
    with criterion(10, "materialized states within the published bounds on every solver run", 120):
        rng = random.Random(1010)
        with record_runs() as runs:
            for g in connected_graphs(5):
                _, rep = thinness_exact(g)
                _, srep = proper_thinness_exact(g)
                for r in (1, 2, 3):
                    matrix = [[rng.choice([0, 1, STAR]) for _ in range(r)] for _ in range(r)]
                    for i in range(r):
                        for j in range(i):
                            matrix[i][j] = matrix[j][i]
                    spec = simple_spec(
                        g.n, r, matrix, weights=[rng.randint(0, 3) for _ in range(g.n)],
                        bounded_weights=(tuple(rng.randint(0, 2) for _ in range(g.n)),), q=2,
                        cap_bounds=(Bound(0, frozenset({0}), 0, rng.choice([INF, 2])),),
                    )
                    solve(g, rep, spec)
                    if r <= 2:
                        nb = NeighborhoodBounds.none(r).with_bound(0, r - 1, "closed", 1, rng.choice([1, INF]))
                        solve_proper(g, srep, spec, nb)
        assert runs and any(x.kind == "proper" for x in runs)
        for rec in runs + SOLVER_RUNS:
            assert rec.states <= state_limit(rec), rec
        assert_state_bounds(runs + SOLVER_RUNS)
