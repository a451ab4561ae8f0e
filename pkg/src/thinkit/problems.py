"""Named problems encoded for the layered solvers, with exhaustive oracles.

Each :class:`ProblemEncoding` carries the instance for the solvers, a decoder
from a :class:`Solution` to the natural answer, a checker that tests an answer
against the problem's own definition, and an oracle that enumerates candidate
answers without touching any solver code.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

from . import config
from .dp import (
    INF,
    STAR,
    Bound,
    NeighborhoodBounds,
    ProblemSpec,
    Sense,
    Solution,
    solve,
    solve_proper,
)
from .errors import InputError, SizeCapExceeded, SolverInvariantError
from .graph import Graph, ThinRepresentation, complete_graph, is_strongly_consistent
from .families import cartesian_product_with_rep

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Answer:
    value: int
    witness: Any


@dataclass(frozen=True)
class ProblemEncoding:
    name: str
    spec: ProblemSpec
    nb: NeighborhoodBounds | None
    decode: Callable[[Solution], Any]
    check: Callable[[Any], bool]
    value: Callable[[Any], int]
    candidates: Callable[[], Iterator[Any]]
    candidate_count: int
    note: str = ""

    @property
    def needs_strong(self) -> bool:
        return self.nb is not None


def _weights(g: Graph, weights: Sequence[int] | None) -> tuple[int, ...]:
    if weights is None:
        return (1,) * g.n
    w = tuple(weights)
    if len(w) != g.n:
        raise InputError(f"{len(w)} weights for {g.n} vertices")
    for x in w:
        if not isinstance(x, int) or x < 0:
            raise InputError(f"weight {x!r} is not a nonnegative integer")
    return w


def _subsets(n: int) -> Iterator[frozenset[int]]:
    for mask in range(1 << n):
        yield frozenset(v for v in range(n) if (mask >> v) & 1)


def _is_stable(g: Graph, xs) -> bool:
    return not any(g.has_edge(u, v) for u, v in itertools.combinations(xs, 2))


def encode_max_weight_stable_set(g: Graph, weights: Sequence[int] | None = None) -> ProblemEncoding:
    w = _weights(g, weights)
    empty, one = frozenset(), frozenset({0})
    spec = ProblemSpec(
        r=1,
        lists=tuple((empty, one) for _ in range(g.n)),
        matrix=((0,),),
        sense=Sense.MAX,
        objective_weights=(w,),
        coefficients=((1,),),
    )
    return ProblemEncoding(
        name="mwss",
        spec=spec,
        nb=None,
        decode=lambda sol: sol.sets[0],
        check=lambda xs: _is_stable(g, xs),
        value=lambda xs: sum(w[v] for v in xs),
        candidates=lambda: _subsets(g.n),
        candidate_count=1 << g.n,
    )


def encode_capacitated_coloring(g: Graph, colors: int, capacities: Sequence[int]) -> ProblemEncoding:
    """Proper colouring with at most ``capacities[j]`` vertices of colour ``j``."""
    caps = tuple(capacities)
    if colors < 1 or len(caps) != colors:
        raise InputError(f"need {colors} capacities, got {len(caps)}")
    if any(not isinstance(a, int) or a < 0 for a in caps):
        raise InputError(f"capacities {list(caps)} must be nonnegative integers")
    note = ""
    if sum(caps) < g.n:
        note = f"capacities sum to {sum(caps)} < {g.n} vertices: infeasible"
        log.info(note)
    single = tuple(frozenset({j}) for j in range(colors))
    spec = ProblemSpec(
        r=colors,
        lists=tuple(single for _ in range(g.n)),
        matrix=tuple(tuple(0 if i == j else STAR for j in range(colors)) for i in range(colors)),
        sense=Sense.MAX,
        bounded_weights=((1,) * g.n,),
        q=1,
        cap_bounds=tuple(Bound(0, frozenset({j}), 0, caps[j]) for j in range(colors)),
    )

    def decode(sol: Solution) -> tuple[int, ...]:
        return tuple(next(iter(sol.trace[v])) for v in range(g.n))

    def check(coloring) -> bool:
        if any(g.has_edge(u, v) and coloring[u] == coloring[v] for u, v in itertools.combinations(range(g.n), 2)):
            return False
        return all(coloring.count(j) <= caps[j] for j in range(colors))

    return ProblemEncoding(
        name="capacitated-coloring",
        spec=spec,
        nb=None,
        decode=decode,
        check=check,
        value=lambda _: 0,
        candidates=lambda: itertools.product(range(colors), repeat=g.n),
        candidate_count=colors**g.n,
        note=note,
    )


def encode_list_matrix_partition(
    g: Graph,
    matrix: Sequence[Sequence],
    lists: Sequence[Sequence[int]] | None = None,
    cap_bounds: Sequence[Bound] = (),
    cup_bounds: Sequence[Bound] = (),
    bounded_weights: Sequence[Sequence[int]] = (),
    q: int = 1,
) -> ProblemEncoding:
    """Each vertex goes to exactly one part from its list; parts obey ``matrix``."""
    r = len(matrix)
    if lists is None:
        lists = [list(range(r))] * g.n
    if len(lists) != g.n:
        raise InputError(f"{len(lists)} lists for {g.n} vertices")
    allowed = [sorted(set(lst)) for lst in lists]
    for v, lst in enumerate(allowed):
        if any(not 0 <= j < r for j in lst):
            raise InputError(f"list of vertex {v} references a part outside 0..{r - 1}")
    spec = ProblemSpec(
        r=r,
        lists=tuple(tuple(frozenset({j}) for j in lst) for lst in allowed),
        matrix=tuple(tuple(row) for row in matrix),
        sense=Sense.MAX,
        bounded_weights=tuple(tuple(row) for row in bounded_weights),
        q=q,
        cap_bounds=tuple(cap_bounds),
        cup_bounds=tuple(cup_bounds),
    )

    def check(parts) -> bool:
        if any(parts[v] not in allowed[v] for v in range(g.n)):
            return False
        for u, v in itertools.combinations(range(g.n), 2):
            rule = spec.matrix[parts[u]][parts[v]]
            if rule != STAR and rule != int(g.has_edge(u, v)):
                return False
        for bounds, op in ((spec.cap_bounds, "cap"), (spec.cup_bounds, "cup")):
            for b in bounds:
                # Parts are disjoint: an intersection of two or more parts is empty.
                if op == "cap" and len(b.sets) > 1:
                    members = []
                else:
                    members = [v for v in range(g.n) if parts[v] in b.sets]
                total = sum(spec.bounded_weights[b.weight][v] for v in members)
                if not b.lower <= total <= b.upper:
                    return False
        return True

    count = 1
    for lst in allowed:
        count *= len(lst)
    return ProblemEncoding(
        name="list-matrix-partition",
        spec=spec,
        nb=None,
        decode=lambda sol: tuple(next(iter(sol.trace[v])) for v in range(g.n)),
        check=check,
        value=lambda _: 0,
        candidates=lambda: itertools.product(*allowed),
        candidate_count=count,
    )


DOMINATION_VARIANTS = ("plain", "independent", "total", "efficient", "perfect")


def is_dominating(g: Graph, xs, variant: str = "plain") -> bool:
    """Literal definitions of the shipped domination variants."""
    xs = frozenset(xs)
    n = g.n
    if variant == "plain":
        return all(v in xs or g.neighbors(v) & xs for v in range(n))
    if variant == "independent":
        return is_dominating(g, xs) and _is_stable(g, xs)
    if variant == "total":
        return all(g.neighbors(v) & xs for v in range(n))
    if variant == "efficient":
        return all(len(g.closed_neighbors(v) & xs) == 1 for v in range(n))
    if variant == "perfect":
        return all(v in xs or len(g.neighbors(v) & xs) == 1 for v in range(n))
    raise InputError(f"unknown domination variant {variant!r}; expected one of {DOMINATION_VARIANTS}")


def encode_domination_variant(g: Graph, variant: str, weights: Sequence[int] | None = None) -> ProblemEncoding:
    """Set 0 is the dominating set, set 1 the rest; minimise the weight of set 0."""
    if variant not in DOMINATION_VARIANTS:
        raise InputError(f"unknown domination variant {variant!r}; expected one of {DOMINATION_VARIANTS}")
    w = _weights(g, weights)
    chosen, rest = frozenset({0}), frozenset({1})
    matrix = ((0 if variant == "independent" else STAR, STAR), (STAR, STAR))
    nb = NeighborhoodBounds.none(2)
    if variant in ("plain", "independent"):
        nb = nb.with_bound(0, 1, "closed", 1, INF)
    elif variant == "total":
        nb = nb.with_bound(0, 0, "open", 1, INF).with_bound(0, 1, "open", 1, INF)
    elif variant == "efficient":
        nb = nb.with_bound(0, 0, "closed", 1, 1).with_bound(0, 1, "closed", 1, 1)
    else:
        nb = nb.with_bound(0, 1, "closed", 1, 1)
    spec = ProblemSpec(
        r=2,
        lists=tuple((chosen, rest) for _ in range(g.n)),
        matrix=matrix,
        sense=Sense.MIN,
        objective_weights=(w,),
        coefficients=((1, 0),),
    )
    return ProblemEncoding(
        name=f"{variant}-domination",
        spec=spec,
        nb=nb,
        decode=lambda sol: sol.sets[0],
        check=lambda xs: is_dominating(g, xs, variant),
        value=lambda xs: sum(w[v] for v in xs),
        candidates=lambda: _subsets(g.n),
        candidate_count=1 << g.n,
    )


def encode_spec(g: Graph, spec: ProblemSpec, nb: NeighborhoodBounds | None = None) -> ProblemEncoding:
    """A user-supplied instance; its oracle enumerates every list assignment."""
    count = 1
    for lst in spec.lists:
        count *= max(1, len(lst))
    from .dp.check import violations

    def assemble(combos):
        return tuple(frozenset(v for v in range(g.n) if j in combos[v]) for j in range(spec.r))

    return ProblemEncoding(
        name="spec",
        spec=spec,
        nb=nb if nb is not None and not nb.is_trivial() else None,
        decode=lambda sol: sol.sets,
        check=lambda sets: not violations(g, spec, sets, nb),
        value=spec.objective,
        candidates=lambda: (assemble(c) for c in itertools.product(*spec.lists)),
        candidate_count=count,
    )


def run_encoding(g: Graph, rep: ThinRepresentation, enc: ProblemEncoding) -> Answer | None:
    """Solve through the matching solver, decode, and check the answer definitionally."""
    if enc.needs_strong:
        sol = solve_proper(g, rep, enc.spec, enc.nb)
    else:
        sol = solve(g, rep, enc.spec)
    if sol is None:
        return None
    answer = enc.decode(sol)
    if not enc.check(answer):
        raise SolverInvariantError(f"{enc.name}: solver answer {answer!r} fails the problem definition")
    value = enc.value(answer)
    if value != sol.objective:
        raise SolverInvariantError(f"{enc.name}: decoded value {value} differs from objective {sol.objective}")
    return Answer(value, answer)


def brute_force_oracle(enc: ProblemEncoding, limit: int | None = None) -> Answer | None:
    """Best answer by enumerating candidates against the problem's own definition."""
    config.check_cap(f"{enc.name} oracle candidates", enc.candidate_count, limit, config.ORACLE_LIMIT)
    maximize = enc.spec.sense is Sense.MAX
    best: Answer | None = None
    for cand in enc.candidates():
        if not enc.check(cand):
            continue
        value = enc.value(cand)
        if best is None or (value > best.value if maximize else value < best.value):
            best = Answer(value, cand)
    return best


def maximal_cliques(g: Graph, limit: int | None = None) -> Iterator[frozenset[int]]:
    """Bron-Kerbosch with pivoting; stops with SizeCapExceeded past ``limit`` cliques."""
    cap = config.vertex_cap(config.MAX_CLIQUES_LIMIT) if limit is None else limit
    count = 0
    stack = [(0, (1 << g.n) - 1, 0)]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                count += 1
                if count > cap:
                    raise SizeCapExceeded("maximal clique enumeration", count, cap)
                yield frozenset(v for v in range(g.n) if (r >> v) & 1)
            continue
        px = p | x
        pivot = max(
            (v for v in range(g.n) if (px >> v) & 1), key=lambda v: bin(p & g.masks[v]).count("1")
        )
        branch = p & ~g.masks[pivot]
        while branch:
            v = (branch & -branch).bit_length() - 1
            branch &= branch - 1
            stack.append((r | (1 << v), p & g.masks[v], x & g.masks[v]))
            p &= ~(1 << v)
            x |= 1 << v


def max_weight_clique(g: Graph, weights: Sequence[int] | None = None, limit: int | None = None) -> tuple[frozenset[int], int]:
    w = _weights(g, weights)
    best: tuple[frozenset[int], int] | None = None
    for clique in maximal_cliques(g, limit):
        value = sum(w[v] for v in clique)
        key = (value, [-v for v in sorted(clique)])
        if best is None or key > (best[1], [-v for v in sorted(best[0])]):
            best = (clique, value)
    assert best is not None
    return best


# Rainbow domination


def is_rainbow_dominating(g: Graph, labels: Sequence[frozenset[int]], t: int) -> bool:
    full = frozenset(range(t))
    for v in range(g.n):
        if labels[v]:
            continue
        seen: frozenset[int] = frozenset()
        for u in g.neighbors(v):
            seen |= labels[u]
        if seen != full:
            return False
    return True


def rainbow_bruteforce(g: Graph, t: int, limit: int | None = None) -> Answer:
    """Minimum weight t-rainbow dominating function by enumerating every labelling."""
    config.check_cap("rainbow labellings", (1 << t) ** g.n, limit, config.ORACLE_LIMIT)
    options = [frozenset(c) for size in range(t + 1) for c in itertools.combinations(range(t), size)]
    best = None
    for labels in itertools.product(options, repeat=g.n):
        if not is_rainbow_dominating(g, labels, t):
            continue
        value = sum(len(x) for x in labels)
        if best is None or value < best.value:
            best = Answer(value, tuple(labels))
    assert best is not None
    return best


@dataclass(frozen=True)
class RainbowResult:
    labels: tuple[frozenset[int], ...]
    weight: int
    route: str


def t_rainbow_domination(g: Graph, rep: ThinRepresentation, t: int) -> RainbowResult:
    """Minimum t-rainbow domination through minimum domination of ``g`` times ``K_t``.

    Routes, in order: the product representation if it is strongly consistent;
    otherwise an exact proper-thinness search on the product; otherwise the
    exhaustive oracle on the product.  ``route`` names the one taken.
    """
    from .representations import proper_thinness_exact

    if t < 1:
        raise InputError("t must be at least 1")
    kt = complete_graph(t)
    prod, prep = cartesian_product_with_rep(g, rep, kt)
    enc = encode_domination_variant(prod, "plain")
    if is_strongly_consistent(prod, prep.ordering, prep.partition):
        route = "product-representation"
        strong = ThinRepresentation(prod, prep.ordering, prep.partition, "strong")
        answer = run_encoding(prod, strong, enc)
    else:
        try:
            _, strong = proper_thinness_exact(prod)
            route = "searched-representation"
            answer = run_encoding(prod, strong, enc)
        except SizeCapExceeded:
            route = "exhaustive"
            answer = brute_force_oracle(enc)
    assert answer is not None
    chosen = answer.witness
    labels = tuple(frozenset(c for c in range(t) if v * t + c in chosen) for v in range(g.n))
    if not is_rainbow_dominating(g, labels, t):
        raise SolverInvariantError(f"decoded labelling {labels} is not rainbow dominating")
    return RainbowResult(labels, sum(len(x) for x in labels), route)


__all__ = [
    "Answer",
    "DOMINATION_VARIANTS",
    "ProblemEncoding",
    "RainbowResult",
    "brute_force_oracle",
    "encode_capacitated_coloring",
    "encode_domination_variant",
    "encode_list_matrix_partition",
    "encode_max_weight_stable_set",
    "encode_spec",
    "is_dominating",
    "is_rainbow_dominating",
    "max_weight_clique",
    "maximal_cliques",
    "rainbow_bruteforce",
    "run_encoding",
    "t_rainbow_domination",
]
