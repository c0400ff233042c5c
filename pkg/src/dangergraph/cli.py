"""Command-line front end.

Exit codes mirror verdicts so shell pipelines can branch on them:
0 = Safe (or the command simply succeeded), 10 = Dangerous, 11 = Unknown,
2 = unusable input.  The DANGER_BUDGET environment variable supplies the
default search budget wherever --budget is accepted.

Graph arguments name a registry generator first (ray, binary-tree, yablo,
cycle-at-origin, shifted-cycle-<s>); anything containing a slash, or not in
the registry, is read as an edge-list file.  Prefix a path with ./ to force
the file reading even if the name collides with the registry.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .danger import (
    DEFAULT_ORACLE_BUDGET,
    DEFAULT_PROBE,
    DangerVerdict,
    brute_force_dangerous,
    classify,
    classify_generator,
    verify_small,
    yablo_report,
)
from .digraph import DirectedGraph, EdgeListParseError, load_edge_list
from .fixedpoint import (
    ClosureBudgetError,
    DEFAULT_CLOSURE_BUDGET,
    FixedPointReport,
    PrefixFixedPointRequest,
    dag_fixed_point,
    find_fixed_points,
    prefix_fixed_point,
    refine_to_fixed_point,
)
from .generators import (
    GeneratorGraph,
    NotLocallyFiniteError,
    get_generator,
    is_registry_name,
    registry_names,
)
from .digraph import has_directed_cycle
from .rules import (
    LocalRule,
    LocalRuleFamily,
    count_families,
    family_to_json_dict,
    generator_rules,
    load_family,
    RNG_NAME,
    sample_family,
    save_family,
)

__version__ = "0.1.0"

_VERDICT_EXIT = {"Safe": 0, "Dangerous": 10, "Unknown": 11}
_RULE_KINDS = ("copy-first", "negate-first", "const-0", "const-1", "random")


class _InputError(Exception):
    pass


def _budget(args: argparse.Namespace, fallback: int) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    raw = os.environ.get("DANGER_BUDGET")
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise _InputError(f"DANGER_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise _InputError("DANGER_BUDGET must be positive")
    return value


def _resolve_graph(ref: str) -> tuple[str, DirectedGraph | GeneratorGraph]:
    """("finite", DirectedGraph) for files, ("generator", GeneratorGraph) for registry names."""
    if "/" not in ref and is_registry_name(ref):
        return "generator", get_generator(ref)
    if "/" not in ref and not os.path.exists(ref):
        names = ", ".join(registry_names())
        raise _InputError(
            f"{ref!r} is not a registry generator and no such file exists; registry: {names}"
        )
    return "finite", load_edge_list(ref)


def _emit(args: argparse.Namespace, doc: dict, human: str) -> None:
    if args.format == "json":
        if getattr(args, "stamp", False):
            doc = dict(doc)
            doc["stamp"] = {"tool": "dangergraph", "version": __version__}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = human if human.endswith("\n") else human + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cycle_text(cycle: tuple[int, ...]) -> str:
    return " -> ".join(str(v) for v in cycle) + f" -> {cycle[0]}"


def _verdict_human(v: DangerVerdict) -> str:
    lines = [v.verdict, f"provenance: {v.provenance}"]
    if v.certificate is not None:
        lines.append(f"certificate: {v.certificate}")
    if v.cycle is not None:
        lines.append(f"cycle: {_cycle_text(v.cycle)}")
    if v.witness is not None:
        scope = (
            f"truncation to {v.truncation_k} vertices"
            if v.truncation_k is not None
            else f"{v.witness.graph.n} vertices"
        )
        lines.append(f"witness: verified fixed-point-free family over {scope}")
    if v.oracle_nodes is not None:
        lines.append(f"nodes: {v.oracle_nodes}")
    return "\n".join(lines)


def _finish_verdict(args: argparse.Namespace, verdict: DangerVerdict) -> int:
    family_file = getattr(args, "family_out", None)
    if family_file and verdict.witness is not None:
        save_family(family_file, verdict.witness)
    elif family_file:
        family_file = None
    _emit(args, verdict.to_json_dict(family_file), _verdict_human(verdict))
    return _VERDICT_EXIT[verdict.verdict]


def _yablo_exit(args: argparse.Namespace) -> int:
    report = yablo_report(
        prefix_bound=getattr(args, "prefix_bound", 12),
        discontinuity_depth=getattr(args, "depth", 32),
    )
    human = [
        "Dangerous (symbolic-analysis)",
        f"scanned {report.candidates_scanned} eventually-constant points "
        f"(prefix bound {report.prefix_bound}): {report.fixed_points_found} fixed",
        "discontinuity at the all-zero point:",
    ]
    for k, din, dout in report.discontinuity:
        human.append(f"  k={k}: inputs at {din}, images at {dout}")
    _emit(args, report.to_json_dict(), "\n".join(human))
    return _VERDICT_EXIT["Dangerous"]


# ---- subcommand handlers ---------------------------------------------------------


def _cmd_classify(args: argparse.Namespace) -> int:
    kind, g = _resolve_graph(args.graph)
    if kind == "finite":
        return _finish_verdict(args, classify(g))
    if g.name == "yablo":
        return _yablo_exit(args)
    verdict = classify_generator(g, probe=args.probe, budget=_budget(args, 100_000))
    return _finish_verdict(args, verdict)


def _cmd_oracle(args: argparse.Namespace) -> int:
    kind, g = _resolve_graph(args.graph)
    if kind != "finite":
        raise _InputError("the exhaustive oracle needs a finite edge-list file")
    verdict = brute_force_dangerous(g, budget=_budget(args, DEFAULT_ORACLE_BUDGET))
    return _finish_verdict(args, verdict)


def _cmd_witness(args: argparse.Namespace) -> int:
    kind, g = _resolve_graph(args.graph)
    if kind == "generator" and g.name == "yablo":
        raise _InputError(
            "no finite witness exists for this graph (every truncation is acyclic); "
            "run the yablo subcommand for the symbolic analysis"
        )
    if kind == "finite":
        verdict = classify(g)
    else:
        verdict = classify_generator(g, probe=args.probe, budget=_budget(args, 100_000))
    if verdict.witness is None:
        return _finish_verdict(args, verdict)
    meta: dict = {"cycle": list(verdict.cycle)}
    if verdict.truncation_k is not None:
        meta["truncation_k"] = verdict.truncation_k
    doc = family_to_json_dict(verdict.witness, meta=meta)
    if getattr(args, "family_out", None):
        save_family(args.family_out, verdict.witness, meta=meta)
    human = [
        "Dangerous",
        f"cycle: {_cycle_text(verdict.cycle)}",
    ]
    if verdict.truncation_k is not None:
        human.append(f"truncation: first {verdict.truncation_k} vertices")
    for r in verdict.witness.rules:
        nbrs = " ".join(str(u) for u in r.neighbors)
        human.append(f"rule {r.vertex}: neighbors [{nbrs}] table 0x{r.table:x}")
    _emit(args, doc, "\n".join(human))
    return _VERDICT_EXIT["Dangerous"]


def _finite_rules(g: DirectedGraph, source: str, seed: int) -> LocalRuleFamily:
    if "/" in source or os.path.exists(source):
        return load_family(source, g)
    if source == "random":
        return sample_family(g, seed)
    if source not in _RULE_KINDS:
        raise _InputError(f"unknown rule kind {source!r}; known: {', '.join(_RULE_KINDS)}")
    rules = []
    for v in range(g.n):
        nbrs = g.out[v]
        if source == "copy-first":
            rules.append(LocalRule.constant(v, nbrs, 0) if not nbrs else LocalRule.copying(v, nbrs, nbrs[0]))
        elif source == "negate-first":
            rules.append(LocalRule.constant(v, nbrs, 1) if not nbrs else LocalRule.negating(v, nbrs, nbrs[0]))
        elif source == "const-0":
            rules.append(LocalRule.constant(v, nbrs, 0))
        else:
            rules.append(LocalRule.constant(v, nbrs, 1))
    return LocalRuleFamily(g, tuple(rules))


def _cmd_fixpoint(args: argparse.Namespace) -> int:
    kind, g = _resolve_graph(args.graph)
    if kind != "finite":
        raise _InputError("fixpoint scans finite graphs; use approx for generator graphs")
    family = _finite_rules(g, args.rules, args.seed)
    points = find_fixed_points(family)
    propagated = None if has_directed_cycle(g) else dag_fixed_point(family).to_string()
    doc = {
        "n": g.n,
        "rules": args.rules,
        "fixed_points": [p.to_string() for p in points],
        "count": len(points),
        "propagated": propagated,
    }
    if args.rules == "random":
        # sampled families must stay reproducible from the emitted document
        doc["seed"] = args.seed
        doc["rng"] = RNG_NAME
    human = [f"fixed points: {len(points)}"] + [f"  {p.to_string()}" for p in points]
    if propagated is not None:
        human.append(f"propagated: {propagated}")
    _emit(args, doc, "\n".join(human))
    return 0


def _cmd_approx(args: argparse.Namespace) -> int:
    kind, g = _resolve_graph(args.graph)
    if kind != "generator":
        raise _InputError("approx works on registry generator graphs; use fixpoint for files")
    rules = generator_rules(g, args.rules, args.seed)
    budget = _budget(args, DEFAULT_CLOSURE_BUDGET)
    if args.k is not None:
        req = PrefixFixedPointRequest(base=g, rules=rules, k=args.k, tail=args.tail, budget=budget)
        point = prefix_fixed_point(req)
        doc: dict = {"k": args.k, "tail": args.tail, "point": point.to_text()}
        if args.rules == "random":
            doc["seed"] = args.seed
            doc["rng"] = RNG_NAME
        human = f"k: {args.k}\ntail: {args.tail}\npoint: {point.to_text()}"
        _emit(args, doc, human)
        return 0
    report = refine_to_fixed_point(g, rules, k_limit=args.k_limit, tail=args.tail, budget=budget)
    _emit(args, report.to_json_dict(), _report_human(report))
    return 0 if report.kind == "exact" else 11


def _report_human(report: FixedPointReport) -> str:
    lines = [
        f"kind: {report.kind}",
        f"point: {'-' if report.point is None else report.point.to_text()}",
        f"verified_upto: {report.verified_upto}",
        "trace:",
    ]
    lines += [f"  k={k}: {point.to_text()}" for k, point in report.trace]
    return "\n".join(lines)


def _cmd_count(args: argparse.Namespace) -> int:
    kind, g = _resolve_graph(args.graph)
    if kind != "finite":
        raise _InputError("count needs a finite edge-list file; generator graphs have infinitely many")
    bits = sum(1 << g.out_degree(v) for v in range(g.n))
    doc = {"n": g.n, "table_bits": bits, "families": count_families(g)}
    human = f"vertices: {g.n}\ntable bits: {bits}\nfamilies: {count_families(g)}"
    _emit(args, doc, human)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    summary = verify_small(max_n=args.max_n, budget=_budget(args, DEFAULT_ORACLE_BUDGET))
    doc = summary.to_json_dict()
    human = (
        f"graphs checked: {summary.graphs_checked}\n"
        f"disagreements: {summary.disagreements}\n"
        f"monotonicity violations: {summary.monotonicity_violations}\n"
        f"oracle nodes: {summary.oracle_nodes_total}\n"
        f"clean: {'yes' if summary.clean else 'NO'}"
    )
    _emit(args, doc, human)
    return 0 if summary.clean else 1


def _cmd_yablo(args: argparse.Namespace) -> int:
    return _yablo_exit(args)


# ---- parser ----------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    sub.add_argument("--stamp", action="store_true", help="include tool name and version in JSON output")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dangergraph",
        description="decide whether directed graphs support fixed-point-free rule families",
    )
    parser.add_argument("--version", action="version", version=f"dangergraph {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="structural verdict with evidence")
    p.add_argument("graph")
    p.add_argument("--probe", type=int, default=DEFAULT_PROBE)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--family-out", metavar="PATH", help="write the witness family here")
    p.add_argument("--prefix-bound", type=int, default=12, help="scan bound when the graph is yablo")
    p.add_argument("--depth", type=int, default=32, help="discontinuity rows when the graph is yablo")
    _add_common(p)
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser("oracle", help="exhaustive truth-table search, independent of structure")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--family-out", metavar="PATH")
    _add_common(p)
    p.set_defaults(handler=_cmd_oracle)

    p = subs.add_parser("witness", help="produce and verify a fixed-point-free family")
    p.add_argument("graph")
    p.add_argument("--probe", type=int, default=DEFAULT_PROBE)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--family-out", metavar="PATH")
    _add_common(p)
    p.set_defaults(handler=_cmd_witness)

    p = subs.add_parser("fixpoint", help="all fixed points of a family over a finite graph")
    p.add_argument("graph")
    p.add_argument("--rules", required=True, help="copy-first | negate-first | const-0 | const-1 | random | family file")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(handler=_cmd_fixpoint)

    p = subs.add_parser("approx", help="prefix-refine toward a fixed point over a generator graph")
    p.add_argument("graph")
    p.add_argument("--rules", required=True, help="copy-first | negate-first | const-0 | const-1 | random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=None, help="solve one region for this k instead of refining")
    p.add_argument("--k-limit", type=int, default=16)
    p.add_argument("--tail", type=int, choices=(0, 1), default=0)
    p.add_argument("--budget", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_approx)

    p = subs.add_parser("count", help="exact number of rule families over a finite graph")
    p.add_argument("graph")
    _add_common(p)
    p.set_defaults(handler=_cmd_count)

    p = subs.add_parser("verify", help="cross-check classifier against the oracle on all small graphs")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("yablo", help="symbolic analysis of the acyclic dangerous graph")
    p.add_argument("--prefix-bound", type=int, default=12)
    p.add_argument("--depth", type=int, default=32)
    _add_common(p)
    p.set_defaults(handler=_cmd_yablo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (_InputError, EdgeListParseError, NotLocallyFiniteError, ClosureBudgetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())
