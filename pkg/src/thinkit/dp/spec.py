"""Problem instances for the layered dynamic programs, and their solutions.

Sets are indexed ``0..r-1``.  A *combination* is a frozenset of set indices: the
sets a vertex joins.  Lists may contain the empty combination.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from ..errors import SpecError
from ..graph import Graph

STAR = "*"
INF = math.inf


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class Bound:
    """``lower <= b_weight(op_{j in sets} S_j) <= upper`` for op in {intersection, union}."""

    weight: int
    sets: frozenset[int]
    lower: int = 0
    upper: float = INF

    def __post_init__(self):
        object.__setattr__(self, "sets", frozenset(self.sets))


def all_combinations(r: int) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(c) for size in range(r + 1) for c in itertools.combinations(range(r), size))


def combination_key(combo: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(combo))


@dataclass(frozen=True)
class ProblemSpec:
    r: int
    lists: tuple[tuple[frozenset[int], ...], ...]
    matrix: tuple[tuple, ...]
    sense: Sense = Sense.MAX
    objective_weights: tuple[tuple[int, ...], ...] = ()
    coefficients: tuple[tuple[int, ...], ...] = ()
    bounded_weights: tuple[tuple[int, ...], ...] = ()
    q: int = 1
    cap_bounds: tuple[Bound, ...] = ()
    cup_bounds: tuple[Bound, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sense", Sense(self.sense))
        lists = tuple(
            tuple(sorted({frozenset(c) for c in lst}, key=combination_key)) for lst in self.lists
        )
        object.__setattr__(self, "lists", lists)
        object.__setattr__(
            self, "matrix", tuple(tuple(STAR if x == STAR else int(x) for x in row) for row in self.matrix)
        )
        for name in ("objective_weights", "coefficients", "bounded_weights"):
            object.__setattr__(self, name, tuple(tuple(row) for row in getattr(self, name)))
        object.__setattr__(self, "cap_bounds", tuple(self.cap_bounds))
        object.__setattr__(self, "cup_bounds", tuple(self.cup_bounds))

    @property
    def n(self) -> int:
        return len(self.lists)

    @property
    def t(self) -> int:
        return len(self.objective_weights)

    @property
    def p(self) -> int:
        return len(self.bounded_weights)

    def gain(self, v: int, combo: Iterable[int]) -> int:
        return sum(self.coefficients[i][j] * self.objective_weights[i][v] for i in range(self.t) for j in combo)

    def objective(self, sets: Sequence[Iterable[int]]) -> int:
        return sum(
            self.coefficients[i][j] * sum(self.objective_weights[i][v] for v in sets[j])
            for i in range(self.t)
            for j in range(self.r)
        )

    def swapped(self) -> ProblemSpec:
        """Same instance with 0 and 1 exchanged in the adjacency matrix."""
        flip = {0: 1, 1: 0, STAR: STAR}
        return replace(self, matrix=tuple(tuple(flip[x] for x in row) for row in self.matrix))

    def with_coefficients(self, factor: int) -> ProblemSpec:
        return replace(self, coefficients=tuple(tuple(factor * c for c in row) for row in self.coefficients))


def simple_spec(
    n: int,
    r: int,
    matrix,
    lists=None,
    sense: Sense | str = Sense.MAX,
    weights: Sequence[int] | None = None,
    coefficients: Sequence[int] | None = None,
    **extra,
) -> ProblemSpec:
    """Convenience builder with a single objective weight function."""
    if lists is None:
        lists = [all_combinations(r)] * n
    objective_weights: tuple = ()
    coeffs: tuple = ()
    if weights is not None:
        objective_weights = (tuple(weights),)
        coeffs = (tuple(coefficients) if coefficients is not None else (1,) * r,)
    return ProblemSpec(
        r=r,
        lists=tuple(lists),
        matrix=matrix,
        sense=sense,
        objective_weights=objective_weights,
        coefficients=coeffs,
        **extra,
    )


@dataclass(frozen=True)
class NeighborhoodBounds:
    """Per ordered pair of sets (i, j): ``l <= |S_i ∩ N(v)| <= u`` for every v in S_j.

    ``open_*`` use the open neighbourhood N(v), ``closed_*`` the closed one N[v].
    Lower bounds are 0 or 1, upper bounds 1 or infinity.
    """

    r: int
    open_lower: tuple[tuple[int, ...], ...]
    open_upper: tuple[tuple[float, ...], ...]
    closed_lower: tuple[tuple[int, ...], ...]
    closed_upper: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        for name in ("open_lower", "open_upper", "closed_lower", "closed_upper"):
            table = tuple(tuple(row) for row in getattr(self, name))
            if len(table) != self.r or any(len(row) != self.r for row in table):
                raise SpecError(f"neighbourhood table {name} must be {self.r}x{self.r}")
            allowed = (0, 1) if name.endswith("lower") else (1, INF)
            for row in table:
                for x in row:
                    if x not in allowed:
                        raise SpecError(f"{name} entry {x} not in {allowed}")
            object.__setattr__(self, name, table)

    @classmethod
    def none(cls, r: int) -> NeighborhoodBounds:
        zeros = tuple((0,) * r for _ in range(r))
        infs = tuple((INF,) * r for _ in range(r))
        return cls(r, zeros, infs, zeros, infs)

    def with_bound(self, i: int, j: int, kind: str, lower: int = 0, upper: float = INF) -> NeighborhoodBounds:
        if kind not in ("open", "closed"):
            raise SpecError(f"neighbourhood kind must be 'open' or 'closed', got {kind!r}")
        if not (0 <= i < self.r and 0 <= j < self.r):
            raise SpecError(f"neighbourhood bound ({i}, {j}) references a set outside 0..{self.r - 1}")

        def put(table, value):
            rows = [list(row) for row in table]
            rows[i][j] = value
            return tuple(tuple(row) for row in rows)

        return replace(
            self,
            **{
                f"{kind}_lower": put(getattr(self, f"{kind}_lower"), lower),
                f"{kind}_upper": put(getattr(self, f"{kind}_upper"), upper),
            },
        )

    def entries(self) -> list[tuple[int, int, str, int, float]]:
        """Non-trivial constraints as (i, j, kind, l, u)."""
        out = []
        for kind in ("open", "closed"):
            lo, up = getattr(self, f"{kind}_lower"), getattr(self, f"{kind}_upper")
            for i in range(self.r):
                for j in range(self.r):
                    if lo[i][j] != 0 or up[i][j] != INF:
                        out.append((i, j, kind, lo[i][j], up[i][j]))
        return out

    def is_trivial(self) -> bool:
        return not self.entries()


@dataclass(frozen=True)
class SolverStats:
    states: int
    arcs: int


@dataclass(frozen=True)
class Solution:
    sets: tuple[frozenset[int], ...]
    objective: int
    trace: tuple[frozenset[int], ...]
    stats: SolverStats | None = field(default=None, compare=False)


def validate_spec(spec: ProblemSpec, g: Graph, nb: NeighborhoodBounds | None = None) -> None:
    """Raise :class:`SpecError` naming the first violated invariant."""
    r, n = spec.r, g.n
    if r < 1:
        raise SpecError(f"need at least one set, got r={r}")
    if spec.n != n:
        raise SpecError(f"lists given for {spec.n} vertices, graph has {n}")
    if len(spec.matrix) != r or any(len(row) != r for row in spec.matrix):
        raise SpecError(f"matrix must be {r}x{r}")
    for i in range(r):
        for j in range(r):
            if spec.matrix[i][j] not in (0, 1, STAR):
                raise SpecError(f"matrix entry ({i}, {j}) = {spec.matrix[i][j]!r} is not 0, 1 or '*'")
            if spec.matrix[i][j] != spec.matrix[j][i]:
                raise SpecError(f"matrix is asymmetric at ({i}, {j})")
    for v, lst in enumerate(spec.lists):
        for combo in lst:
            bad = [j for j in combo if not 0 <= j < r]
            if bad:
                raise SpecError(f"list of vertex {v} references sets {bad} outside 0..{r - 1}")
    if len(spec.coefficients) != spec.t:
        raise SpecError(f"{spec.t} objective weight functions but {len(spec.coefficients)} coefficient rows")
    for i, row in enumerate(spec.coefficients):
        if len(row) != r:
            raise SpecError(f"coefficient row {i} has {len(row)} entries, expected {r}")
        for c in row:
            if not isinstance(c, int) or c < 0:
                raise SpecError(f"coefficient {c!r} in row {i} is not a nonnegative integer")
    for name, table in (("objective weight", spec.objective_weights), ("bounded weight", spec.bounded_weights)):
        for i, row in enumerate(table):
            if len(row) != n:
                raise SpecError(f"{name} function {i} has {len(row)} values, expected {n}")
            for v, x in enumerate(row):
                if not isinstance(x, int) or x < 0:
                    raise SpecError(f"negative or non-integer {name} {x!r} at function {i}, vertex {v}")
    if spec.q < 1:
        raise SpecError(f"bound q must be positive, got {spec.q}")
    for i, row in enumerate(spec.bounded_weights):
        for v, x in enumerate(row):
            if x > spec.q:
                raise SpecError(f"bounded weight {x} at function {i}, vertex {v} exceeds q={spec.q}")
    for kind, bounds in (("cap", spec.cap_bounds), ("cup", spec.cup_bounds)):
        for b in bounds:
            if not 0 <= b.weight < spec.p:
                raise SpecError(f"{kind} bound references weight function {b.weight}, have {spec.p}")
            if not b.sets or any(not 0 <= j < r for j in b.sets):
                raise SpecError(f"{kind} bound set family {sorted(b.sets)} must be a nonempty subset of 0..{r - 1}")
            if b.lower < 0 or (b.upper != INF and (b.upper < 0 or b.upper != int(b.upper))):
                raise SpecError(f"{kind} bound ({b.lower}, {b.upper}) must be nonnegative integers")
            if b.lower > b.upper:
                raise SpecError(f"{kind} bound has lower {b.lower} > upper {b.upper}")
    if nb is not None and nb.r != r:
        raise SpecError(f"neighbourhood bounds are for r={nb.r}, spec has r={r}")
