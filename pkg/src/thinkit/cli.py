"""Command line interface.

Every command prints one JSON document on stdout; logging goes to stderr.
Exit status: 0 success, 1 infeasible or absent, 2 input error, 3 size cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable

from . import families, problems, widths
from .dp import solve, solve_on_complement, solve_proper, validate_spec
from .errors import InputError, SizeCapExceeded
from .graph import Mode, complete_graph, cycle_graph, is_consistent, is_strongly_consistent, path_graph
from .io import (
    json_safe,
    load_nb_instance,
    load_spec,
    parse_graph,
    parse_ordering,
    parse_partition,
    parse_rep,
    parse_rep_fields,
    rep_to_dict,
    solution_to_dict,
    write_graph,
    write_rep,
)
from .representations import (
    consistent_order_for_partition,
    min_consistent_partition,
    proper_thinness_exact,
    reduce_non_betweenness,
    solve_non_betweenness_bruteforce,
    thinness_exact,
)

log = logging.getLogger("thinkit")

OK, ABSENT, INPUT_ERROR, SIZE_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": message}))
        raise SystemExit(INPUT_ERROR)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args):
    return parse_graph(_read(args.graph))


def _rep_or_search(g, path: str | None, strong: bool, limit: int | None):
    if path:
        rep = parse_rep(_read(path), g)
        if strong and not is_strongly_consistent(g, rep.ordering, rep.partition):
            raise InputError("representation is not strongly consistent")
        return rep
    return (proper_thinness_exact if strong else thinness_exact)(g, limit)[1]


def cmd_thinness(args) -> tuple[int, dict]:
    g = _graph(args)
    k, rep = thinness_exact(g, args.limit)
    return OK, {"thinness": k, **rep_to_dict(rep)}


def cmd_pthinness(args) -> tuple[int, dict]:
    g = _graph(args)
    k, rep = proper_thinness_exact(g, args.limit)
    return OK, {"proper_thinness": k, **rep_to_dict(rep)}


def cmd_check_rep(args) -> tuple[int, dict]:
    g = _graph(args)
    mode, order, part = parse_rep_fields(_read(args.rep))
    if len(order) != g.n or len(part) != g.n:
        raise InputError(f"representation covers {len(order)} vertices, graph has {g.n}")
    strong = args.strong or mode is Mode.STRONG
    ok = (is_strongly_consistent if strong else is_consistent)(g, order, part)
    return (OK if ok else ABSENT), {"consistent": ok, "mode": "strong" if strong else "weak", "k": part.k}


def cmd_min_partition(args) -> tuple[int, dict]:
    g = _graph(args)
    order = parse_ordering(_read(args.order))
    if len(order) != g.n:
        raise InputError(f"ordering covers {len(order)} vertices, graph has {g.n}")
    part = min_consistent_partition(g, order, args.strong)
    return OK, {"k": part.k, "classes": list(part.class_of), "mode": "strong" if args.strong else "weak"}


def cmd_order_for_partition(args) -> tuple[int, dict]:
    g = _graph(args)
    part = parse_partition(_read(args.partition))
    order = consistent_order_for_partition(g, part, args.strong, args.limit)
    if order is None:
        return ABSENT, {"ordering": None}
    return OK, {"ordering": list(order.sequence)}


def _solve_common(args, proper: bool) -> tuple[int, dict]:
    g = _graph(args)
    spec, nb = load_spec(_read(args.spec), g.n)
    validate_spec(spec, g, nb)
    if proper:
        if nb is None:
            raise InputError("solve-proper needs 'neighborhoodBounds' in the --spec document")
        rep = _rep_or_search(g, args.rep, True, args.limit)
        sol = solve_proper(g, rep, spec, nb)
    else:
        if nb is not None and not nb.is_trivial():
            raise InputError("neighbourhood bounds need the solve-proper command")
        rep = _rep_or_search(g, args.rep, False, args.limit)
        sol = solve_on_complement(g, rep, spec) if args.complement else solve(g, rep, spec)
    if sol is None:
        return ABSENT, {"feasible": False}
    return OK, {"feasible": True, **solution_to_dict(sol)}


def cmd_solve(args):
    return _solve_common(args, False)


def cmd_solve_proper(args):
    return _solve_common(args, True)


GENERATORS: dict[str, tuple[int, Callable[..., Any]]] = {
    "complement-matching": (1, families.gen_complement_matching),
    "claw": (1, families.gen_claw_h),
    "gk": (1, families.gen_Gk),
    "grid": (1, families.gen_grid),
    "mary-tree": (2, families.gen_mary_tree),
    "path": (1, path_graph),
    "cycle": (1, cycle_graph),
    "complete": (1, complete_graph),
}


def cmd_generate(args) -> tuple[int, dict]:
    arity, build = GENERATORS[args.family]
    if len(args.params) != arity:
        raise InputError(f"family {args.family} takes {arity} integer parameter(s), got {len(args.params)}")
    made = build(*args.params)
    g, rep = made if isinstance(made, tuple) else (made, None)
    doc: dict[str, Any] = {"family": args.family, "params": args.params, "n": g.n, "m": g.m, "edges": g.edge_list()}
    if rep is not None:
        doc["representation"] = rep_to_dict(rep)
    if args.out:
        Path(args.out).write_text(write_graph(g))
    if args.rep_out:
        if rep is None:
            raise InputError(f"family {args.family} ships no representation")
        Path(args.rep_out).write_text(write_rep(rep))
    return OK, doc


def cmd_widths(args) -> tuple[int, dict]:
    g = _graph(args)
    if args.which == "cutw":
        return OK, {"cutwidth": widths.cutwidth_bruteforce(g, args.limit)}
    if args.which == "lmimw":
        return OK, {"lmimw": widths.lmimw_bruteforce(g, args.limit)}
    return OK, {"isoperimetric_peak": widths.isoperimetric_peak(g, args.limit)}


def cmd_reduce_nb(args) -> tuple[int, dict]:
    inst = load_nb_instance(_read(args.instance))
    g, part = reduce_non_betweenness(inst)
    doc: dict[str, Any] = {"n": g.n, "edges": g.edge_list(), "classes": list(part.class_of)}
    if args.out:
        Path(args.out).write_text(write_graph(g))
    if args.partition_out:
        Path(args.partition_out).write_text("classes " + " ".join(map(str, part.class_of)) + "\n")
    if args.solve:
        order = consistent_order_for_partition(g, part, args.strong, args.limit)
        witness = solve_non_betweenness_bruteforce(inst)
        doc["ordering"] = None if order is None else list(order.sequence)
        doc["satisfiable"] = witness is not None
        doc["witness"] = witness
        if order is None:
            return ABSENT, doc
    return OK, doc


def cmd_rainbow(args) -> tuple[int, dict]:
    g = _graph(args)
    rep = _rep_or_search(g, args.rep, False, args.limit)
    res = problems.t_rainbow_domination(g, rep, args.t)
    return OK, {"weight": res.weight, "labels": [sorted(x) for x in res.labels], "route": res.route}


def cmd_problem(args) -> tuple[int, dict]:
    g = _graph(args)
    weights = args.weights
    if args.name == "clique":
        clique, value = problems.max_weight_clique(g, weights)
        return OK, {"value": value, "witness": sorted(clique)}
    if args.name == "mwss":
        enc = problems.encode_max_weight_stable_set(g, weights)
    elif args.name == "coloring":
        caps = args.capacities or [g.n] * args.colors
        enc = problems.encode_capacitated_coloring(g, args.colors, caps)
    else:
        enc = problems.encode_domination_variant(g, args.variant, weights)
    rep = _rep_or_search(g, args.rep, enc.needs_strong, args.limit)
    answer = problems.brute_force_oracle(enc, args.limit) if args.oracle else problems.run_encoding(g, rep, enc)
    if answer is None:
        return ABSENT, {"feasible": False, "problem": enc.name}
    witness = answer.witness
    if isinstance(witness, frozenset):
        witness = sorted(witness)
    return OK, {"feasible": True, "problem": enc.name, "value": answer.value, "witness": list(witness)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thinkit", description="Thinness and proper thinness toolkit.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, func, help_text, graph=True):
        sp = sub.add_parser(name, help=help_text)
        if graph:
            sp.add_argument("graph", help="graph file")
        sp.add_argument("--limit", type=int, default=None, help="size cap for exhaustive searches")
        sp.set_defaults(func=func)
        return sp

    cmd("thinness", cmd_thinness, "exact thinness with a witness")
    cmd("pthinness", cmd_pthinness, "exact proper thinness with a witness")
    sp = cmd("check-rep", cmd_check_rep, "check a representation file")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--strong", action="store_true")
    sp = cmd("min-partition", cmd_min_partition, "minimum consistent partition for an ordering")
    sp.add_argument("--order", required=True)
    sp.add_argument("--strong", action="store_true")
    sp = cmd("order-for-partition", cmd_order_for_partition, "consistent ordering for a partition")
    sp.add_argument("--partition", required=True)
    sp.add_argument("--strong", action="store_true")
    for name, func in (("solve", cmd_solve), ("solve-proper", cmd_solve_proper)):
        sp = cmd(name, func, "optimise a problem spec with the layered program")
        sp.add_argument("--spec", required=True)
        sp.add_argument("--rep", help="representation file; searched exactly if omitted")
        if name == "solve":
            sp.add_argument("--complement", action="store_true", help="solve the --spec problem on the complement")
    sp = cmd("generate", cmd_generate, "build a named graph family", graph=False)
    sp.add_argument("--family", required=True, choices=sorted(GENERATORS))
    sp.add_argument("--params", type=int, nargs="*", default=[])
    sp.add_argument("--out", help="write the graph file here")
    sp.add_argument("--rep-out", help="write the representation file here")
    sp = cmd("widths", cmd_widths, "exact width parameters")
    sp.add_argument("--which", required=True, choices=["cutw", "lmimw", "isop"])
    sp = cmd("reduce-nb", cmd_reduce_nb, "reduce a Non-Betweenness instance", graph=False)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--strong", action="store_true")
    sp.add_argument("--solve", action="store_true", help="also search an ordering and brute-force the instance")
    sp.add_argument("--out", help="write the reduced graph here")
    sp.add_argument("--partition-out", help="write the partition here")
    sp = cmd("rainbow", cmd_rainbow, "minimum t-rainbow domination")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--rep")
    sp = cmd("problem", cmd_problem, "solve a named problem")
    sp.add_argument("--name", required=True, choices=["mwss", "clique", "coloring", "domination"])
    sp.add_argument("--variant", default="plain", choices=list(problems.DOMINATION_VARIANTS))
    sp.add_argument("--weights", type=int, nargs="*")
    sp.add_argument("--colors", type=int, default=2)
    sp.add_argument("--capacities", type=int, nargs="*")
    sp.add_argument("--rep")
    sp.add_argument("--oracle", action="store_true", help="use exhaustive enumeration instead of the solver")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    start = time.perf_counter()
    try:
        code, doc = args.func(args)
    except SizeCapExceeded as exc:
        log.error("%s", exc)
        code, doc = SIZE_CAP, {"error": str(exc)}
    except InputError as exc:
        log.error("%s", exc)
        code, doc = INPUT_ERROR, {"error": str(exc)}
    doc["seconds"] = round(time.perf_counter() - start, 6)
    print(json.dumps(json_safe(doc)))
    return code


if __name__ == "__main__":
    sys.exit(main())
