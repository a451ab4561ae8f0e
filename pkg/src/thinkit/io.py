"""Text formats for graphs, representations, problem specs and solutions.

Graph files are line based with 0-based ids::

    # comment
    p thin <n> <m>
    v <id> <name>      (optional vertex names)
    e <u> <v>

Representation files::

    mode weak|strong
    order <v_1> ... <v_n>
    classes <class of vertex 0> ... <class of vertex n-1>

Specs, solutions and Non-Betweenness instances are JSON documents.
"""

from __future__ import annotations

import json
import logging
import math
from typing import Any

from .dp.spec import (
    INF,
    STAR,
    Bound,
    NeighborhoodBounds,
    ProblemSpec,
    Solution,
    SolverStats,
    all_combinations,
)
from .errors import InputError, SpecError
from .graph import Graph, Mode, Ordering, Partition, ThinRepresentation, build_graph
from .representations import NonBetweennessInstance

log = logging.getLogger(__name__)


# Graphs


def parse_graph_document(text: str) -> tuple[Graph, dict[int, str]]:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    names: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "p":
                if n is not None:
                    raise InputError("second header line")
                if len(parts) != 4 or parts[1] != "thin":
                    raise InputError("header must read 'p thin <n> <m>'")
                n, m = int(parts[2]), int(parts[3])
                if n < 1 or m < 0:
                    raise InputError(f"bad header sizes n={n}, m={m}")
            elif n is None:
                raise InputError(f"'{tag}' line before the 'p thin' header")
            elif tag == "e":
                if len(parts) != 3:
                    raise InputError("edge line must read 'e <u> <v>'")
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < n and 0 <= v < n):
                    raise InputError(f"edge ({u}, {v}) has an id out of range 0..{n - 1}")
                if u == v:
                    raise InputError(f"loop at vertex {u}")
                key = (min(u, v), max(u, v))
                if key in seen:
                    log.warning("line %d: duplicate edge %s ignored", lineno, key)
                    continue
                seen.add(key)
                edges.append(key)
            elif tag == "v":
                if len(parts) < 3:
                    raise InputError("vertex line must read 'v <id> <name>'")
                v = int(parts[1])
                if not 0 <= v < n:
                    raise InputError(f"vertex id {v} out of range 0..{n - 1}")
                names[v] = " ".join(parts[2:])
            else:
                raise InputError(f"unknown line type '{tag}'")
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise InputError(f"line {lineno}: {exc}") from None
            raise InputError(f"line {lineno}: expected integers in '{line}'") from None
    if n is None:
        raise InputError("missing 'p thin <n> <m>' header")
    if m != len(edges):
        log.warning("header announces %d edges, file has %d distinct edges", m, len(edges))
    return build_graph(n, edges), names


def parse_graph(text: str) -> Graph:
    return parse_graph_document(text)[0]


def write_graph(g: Graph, names: dict[int, str] | None = None) -> str:
    lines = [f"p thin {g.n} {g.m}"]
    for v, name in sorted((names or {}).items()):
        lines.append(f"v {v} {name}")
    lines += [f"e {u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


# Representations


def _ints(tokens: list[str], what: str) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise InputError(f"{what} must be integers, got {' '.join(tokens)!r}") from None


def parse_ordering(text: str) -> Ordering:
    """An ordering file: ids separated by whitespace, optionally after an 'order' keyword."""
    tokens = [t for line in text.splitlines() for t in line.split("#", 1)[0].split()]
    if tokens and tokens[0] == "order":
        tokens = tokens[1:]
    return Ordering.of(_ints(tokens, "ordering"))


def parse_partition(text: str) -> Partition:
    """A partition file: the class id of each vertex, optionally after a 'classes' keyword."""
    tokens = [t for line in text.splitlines() for t in line.split("#", 1)[0].split()]
    if tokens and tokens[0] == "classes":
        tokens = tokens[1:]
    return Partition.of(_ints(tokens, "class ids"))


def parse_rep_fields(text: str) -> tuple[Mode, Ordering, Partition]:
    mode = Mode.WEAK
    order = classes = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        tag, rest = parts[0], parts[1:]
        if tag == "mode":
            if rest not in (["weak"], ["strong"]):
                raise InputError(f"line {lineno}: mode must be 'weak' or 'strong'")
            mode = Mode(rest[0])
        elif tag == "order":
            order = Ordering.of(_ints(rest, f"line {lineno}: ordering"))
        elif tag == "classes":
            classes = Partition.of(_ints(rest, f"line {lineno}: class ids"))
        else:
            raise InputError(f"line {lineno}: unknown line type '{tag}'")
    if order is None or classes is None:
        raise InputError("representation needs both an 'order' and a 'classes' line")
    return mode, order, classes


def parse_rep(text: str, g: Graph) -> ThinRepresentation:
    mode, order, part = parse_rep_fields(text)
    return ThinRepresentation(g, order, part, mode)


def write_rep(rep: ThinRepresentation) -> str:
    return (
        f"mode {rep.mode.value}\n"
        f"order {' '.join(map(str, rep.ordering.sequence))}\n"
        f"classes {' '.join(map(str, rep.partition.class_of))}\n"
    )


def rep_to_dict(rep: ThinRepresentation) -> dict[str, Any]:
    return {
        "mode": rep.mode.value,
        "ordering": list(rep.ordering.sequence),
        "classes": list(rep.partition.class_of),
        "k": rep.k,
    }


# Specs


def _upper_from_json(x) -> float:
    if x in ("inf", "Infinity", None):
        return INF
    if isinstance(x, bool) or not isinstance(x, int):
        raise SpecError(f"upper bound {x!r} must be an integer or 'inf'")
    return x


def _upper_to_json(x: float):
    return "inf" if x == INF else int(x)


def _int_table(doc: dict, key: str) -> tuple[tuple[int, ...], ...]:
    rows = doc.get(key, [])
    if not isinstance(rows, list) or any(not isinstance(row, list) for row in rows):
        raise SpecError(f"'{key}' must be an array of arrays")
    for row in rows:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise SpecError(f"'{key}' entries must be integers, got {x!r}")
    return tuple(tuple(row) for row in rows)


def _bound(entry: dict, kind: str) -> Bound:
    try:
        sets = entry["J"]
        if not isinstance(sets, list):
            raise SpecError(f"{kind} bound 'J' must be an array")
        return Bound(int(entry["i"]), frozenset(sets), int(entry.get("l", 0)), _upper_from_json(entry.get("u", "inf")))
    except KeyError as exc:
        raise SpecError(f"{kind} bound is missing key {exc}") from None


def spec_from_dict(doc: dict, n: int | None = None) -> tuple[ProblemSpec, NeighborhoodBounds | None]:
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    unknown = set(doc) - {
        "r", "sense", "weights", "c", "b", "q", "lists", "matrix", "capBounds", "cupBounds", "neighborhoodBounds",
    }
    if unknown:
        raise SpecError(f"unknown spec keys {sorted(unknown)}")
    if "r" not in doc or "matrix" not in doc:
        raise SpecError("spec needs at least 'r' and 'matrix'")
    r = doc["r"]
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise SpecError(f"'r' must be a positive integer, got {r!r}")
    sense = doc.get("sense", "max")
    if sense not in ("min", "max"):
        raise SpecError(f"'sense' must be 'min' or 'max', got {sense!r}")
    matrix = doc["matrix"]
    for row in matrix:
        for x in row:
            if x not in (0, 1, STAR) or isinstance(x, bool):
                raise SpecError(f"matrix entry {x!r} is not 0, 1 or '*'")
    weights = _int_table(doc, "weights")
    coeffs = _int_table(doc, "c")
    if "lists" in doc:
        lists = tuple(tuple(frozenset(c) for c in lst) for lst in doc["lists"])
    else:
        if n is None:
            raise SpecError("spec without 'lists' needs the vertex count from the graph")
        lists = tuple(all_combinations(r) for _ in range(n))
    spec = ProblemSpec(
        r=r,
        lists=lists,
        matrix=tuple(tuple(row) for row in matrix),
        sense=sense,
        objective_weights=weights,
        coefficients=coeffs,
        bounded_weights=_int_table(doc, "b"),
        q=int(doc.get("q", 1)),
        cap_bounds=tuple(_bound(e, "cap") for e in doc.get("capBounds", [])),
        cup_bounds=tuple(_bound(e, "cup") for e in doc.get("cupBounds", [])),
    )
    nb = None
    if "neighborhoodBounds" in doc:
        nb = NeighborhoodBounds.none(r)
        for e in doc["neighborhoodBounds"]:
            try:
                nb = nb.with_bound(int(e["i"]), int(e["j"]), e["kind"], int(e.get("l", 0)), _upper_from_json(e.get("u", "inf")))
            except KeyError as exc:
                raise SpecError(f"neighbourhood bound is missing key {exc}") from None
    return spec, nb


def spec_to_dict(spec: ProblemSpec, nb: NeighborhoodBounds | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "r": spec.r,
        "sense": spec.sense.value,
        "weights": [list(row) for row in spec.objective_weights],
        "c": [list(row) for row in spec.coefficients],
        "b": [list(row) for row in spec.bounded_weights],
        "q": spec.q,
        "lists": [[sorted(c) for c in lst] for lst in spec.lists],
        "matrix": [list(row) for row in spec.matrix],
        "capBounds": [
            {"i": b.weight, "J": sorted(b.sets), "l": b.lower, "u": _upper_to_json(b.upper)} for b in spec.cap_bounds
        ],
        "cupBounds": [
            {"i": b.weight, "J": sorted(b.sets), "l": b.lower, "u": _upper_to_json(b.upper)} for b in spec.cup_bounds
        ],
    }
    if nb is not None:
        doc["neighborhoodBounds"] = [
            {"i": i, "j": j, "kind": kind, "l": lo, "u": _upper_to_json(up)} for i, j, kind, lo, up in nb.entries()
        ]
    return doc


def load_spec(text: str, n: int | None = None) -> tuple[ProblemSpec, NeighborhoodBounds | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from None
    return spec_from_dict(doc, n)


def dump_spec(spec: ProblemSpec, nb: NeighborhoodBounds | None = None) -> str:
    return json.dumps(spec_to_dict(spec, nb), indent=2)


# Solutions


def solution_to_dict(sol: Solution) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "objective": sol.objective,
        "sets": [sorted(s) for s in sol.sets],
        "trace": [sorted(c) for c in sol.trace],
    }
    if sol.stats is not None:
        doc["states"] = sol.stats.states
        doc["arcs"] = sol.stats.arcs
    return doc


def solution_from_dict(doc: dict) -> Solution:
    stats = None
    if "states" in doc:
        stats = SolverStats(doc["states"], doc.get("arcs", 0))
    return Solution(
        sets=tuple(frozenset(s) for s in doc["sets"]),
        objective=doc["objective"],
        trace=tuple(frozenset(c) for c in doc["trace"]),
        stats=stats,
    )


# Non-Betweenness


def load_nb_instance(text: str) -> NonBetweennessInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"instance is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "ground" not in doc or "triples" not in doc:
        raise InputError("instance must be an object with 'ground' and 'triples'")
    ground = doc["ground"]
    if isinstance(ground, int):
        ground = [str(i) for i in range(ground)]
    return NonBetweennessInstance(tuple(str(a) for a in ground), tuple(tuple(str(a) for a in t) for t in doc["triples"]))


def dump_nb_instance(inst: NonBetweennessInstance) -> str:
    return json.dumps({"ground": list(inst.ground_set), "triples": [list(t) for t in inst.triples]})


def json_safe(x):
    """Replace infinities so that documents stay strict JSON."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {k: json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [json_safe(v) for v in x]
    return x
