"""Command-line interface.

Every subcommand prints one JSON report (or CSV rows for ``count --format
csv``).  Exit codes: 0 ran to completion, 2 usage error, 3 input error,
4 guardrail refusal.  Verification outcomes live in the report's ``status``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .antimagic import count_weak_antimagic_ie, search_strict_antimagic, search_weak_antimagic
from .cones import GRADINGS, build_system, extreme_rays, polytope_facts
from .directed import search_directed_antimagic
from .errors import InputError, LabcountError, UsageError
from .labelings import (
    ENGINES,
    POSITIVITIES,
    count_block_magic,
    count_magic_by_index,
    count_strict_antimagic,
    count_weak_antimagic_direct,
    vertex_sums,
)
from .multigraph import (
    Multigraph,
    component_analysis,
    format_graph,
    loopless_is_bipartite,
    magic_quotient,
    parse_blocks,
    read_graph,
)
from .quasipoly import detect_minimal, parse_rational, to_generating_function
from .suites import (
    SUITES,
    SURVEY_CHECKS,
    Scope,
    directed_family,
    family_graphs,
    run_verification_suite,
)

COUNT_MODES = ("block", "magic", "weak", "weak-ie", "strict")
SEARCH_KINDS = ("strict", "weak", "directed")


def parse_int_list(text: str) -> list[int]:
    """``"3"``, ``"0..6"`` or ``"1,4,9"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"not an integer list or range: {text!r}") from None


def parse_sequence(text: str) -> list:
    values = [parse_rational(t.strip()) for t in text.split(",") if t.strip()]
    return [int(v) if v.denominator == 1 else v for v in values]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="labcount", description="Count and search magic and antimagic labelings.")
    p.add_argument("--version", action="version", version=f"labcount {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp, required=True):
        sp.add_argument("--graph", required=required, help="graph file")

    def force_arg(sp):
        sp.add_argument("--force", action="store_true", help="override resource guardrails")

    c = sub.add_parser("count", help="counting sequences")
    graph_arg(c)
    c.add_argument("--mode", choices=COUNT_MODES, default="block")
    c.add_argument("--blocks", default="", help='blocks like "0,2|1,3"')
    c.add_argument("--k", default="0..6", help="k (or r for --mode magic): 5, 0..6 or 1,3,5")
    c.add_argument("--positivity", choices=POSITIVITIES, default="nonneg")
    c.add_argument("--engine", choices=ENGINES, default="dp")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    force_arg(c)

    f = sub.add_parser("fit", help="fit a quasi-polynomial to a sequence starting at argument 0")
    f.add_argument("--sequence", required=True)
    f.add_argument("--max-period", type=int, default=6)
    f.add_argument("--degree-bound", type=int, default=None)
    f.add_argument("--max-offset", type=int, default=0)

    r = sub.add_parser("rays", help="extreme rays of a constraint cone")
    graph_arg(r)
    r.add_argument("--blocks", default="")
    r.add_argument("--grading", choices=GRADINGS, default="maxlabel")
    force_arg(r)

    fa = sub.add_parser("facts", help="polytope facts of the maxlabel system")
    graph_arg(fa)
    fa.add_argument("--blocks", default="")
    force_arg(fa)

    s = sub.add_parser("search", help="search for an antimagic-type labeling")
    graph_arg(s)
    s.add_argument("--kind", choices=SEARCH_KINDS, default="strict")
    s.add_argument("--bound", type=int, default=None, help="label bound for --kind weak (default 2|E|)")
    force_arg(s)

    q = sub.add_parser("quotient", help="the graph G_S")
    graph_arg(q)
    q.add_argument("--subset", required=True, help='vertices like "0,1,2"')

    def scope_args(sp):
        sp.add_argument("--family", choices=("connected", "directed"), default="connected")
        sp.add_argument("--max-vertices", type=int, default=4)
        sp.add_argument("--min-vertices", type=int, default=1)
        sp.add_argument("--max-edges", type=int, default=None)
        sp.add_argument("--include-multi", action="store_true")

    sv = sub.add_parser("survey", help="run a conjecture check over a graph family")
    scope_args(sv)
    sv.add_argument("--check", choices=SURVEY_CHECKS, required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    graph_arg(v, required=False)
    scope_args(v)
    v.add_argument("--blocks", default=None, help="fixed blocks; default every subset of size >= 2")
    v.add_argument("--r-max", type=int, default=20)
    v.add_argument("--k-max", type=int, default=None)
    v.add_argument("--t-max", type=int, default=7)
    v.add_argument("--max-period", type=int, default=12)
    v.add_argument("--lengths", default="2..6")
    return p


# ---------------------------------------------------------------------------
# subcommands


def _load(args) -> Multigraph:
    return read_graph(args.graph)


def cmd_count(args) -> dict:
    g = _load(args)
    ks = parse_int_list(args.k)
    if any(k < 0 for k in ks):
        raise UsageError("k values must be nonnegative")
    blocks = parse_blocks(args.blocks)
    out = []
    for k in ks:
        if args.mode == "block":
            value = count_block_magic(g, blocks, k, args.positivity, args.engine, args.force)
        elif args.mode == "magic":
            value = count_magic_by_index(g, k, args.engine, args.force)
        elif args.mode == "weak":
            value = count_weak_antimagic_direct(g, k, args.force)
        elif args.mode == "weak-ie":
            value = count_weak_antimagic_ie(g, k)
        else:
            value = count_strict_antimagic(g, k, args.force)
        out.append({"k": k, "count": str(value)})
    return {"graph": g.to_dict(), "records": out, "status": "ok"}


def cmd_fit(args) -> dict:
    seq = parse_sequence(args.sequence)
    degree_bound = args.degree_bound if args.degree_bound is not None else max(0, len(seq) - 2)
    fit = detect_minimal(seq, args.max_period, degree_bound, args.max_offset)
    record = fit.to_json()
    if fit.found:
        transient = [int(x) for x in seq[: fit.offset]] if all(isinstance(x, int) for x in seq) else seq[: fit.offset]
        record["generating_function"] = to_generating_function(fit.qp, transient).to_json()
    return {"records": [record], "status": fit.status}


def cmd_rays(args) -> dict:
    g = _load(args)
    sys_ = build_system(g, parse_blocks(args.blocks), args.grading)
    rays = extreme_rays(sys_, args.force)
    return {
        "graph": g.to_dict(),
        "system": sys_.to_json(),
        "records": [r.to_json() for r in rays],
        "status": "ok",
    }


def cmd_facts(args) -> dict:
    g = _load(args)
    sys_ = build_system(g, parse_blocks(args.blocks), "maxlabel")
    facts = polytope_facts(sys_, args.force)
    return {"graph": g.to_dict(), "records": [facts.to_json()], "status": "ok"}


def cmd_search(args) -> dict:
    g = _load(args)
    if args.kind == "directed":
        witness = search_directed_antimagic(g, args.force)
    elif args.kind == "weak":
        bound = args.bound if args.bound is not None else 2 * g.num_edges
        witness = search_weak_antimagic(g, bound, args.force)
    else:
        witness = search_strict_antimagic(g, args.force)
    record = {"found": witness is not None, "witness": list(witness) if witness else None}
    if witness:
        record["sums"] = [str(s) for s in vertex_sums(g, witness)]
    if not g.directed:
        analysis = component_analysis(g)
        record["k2_components"] = analysis["k2_components"]
        record["sum_tied_components"] = analysis["sum_tied_components"]
        record["bipartite"] = loopless_is_bipartite(g)
    return {"graph": g.to_dict(), "records": [record], "status": "found" if witness else "none"}


def cmd_quotient(args) -> dict:
    g = _load(args)
    subset = parse_int_list(args.subset)
    h = magic_quotient(g, subset)
    return {"graph": g.to_dict(), "records": [{"quotient": h.to_dict(), "text": format_graph(h)}], "status": "ok"}


def _scope_graphs(args) -> tuple[Multigraph, ...]:
    if getattr(args, "graph", None):
        return (read_graph(args.graph),)
    if args.family == "directed":
        return directed_family(args.max_edges if args.max_edges is not None else 3)
    return family_graphs(args.max_vertices, args.min_vertices, args.max_edges, args.include_multi)


def cmd_survey(args) -> dict:
    graphs = _scope_graphs(args)
    if args.check == "directed-antimagic" and not all(g.directed for g in graphs):
        raise UsageError("directed-antimagic needs --family directed")
    if args.check != "directed-antimagic" and any(g.directed for g in graphs):
        raise UsageError(f"{args.check} needs undirected graphs")
    report = run_verification_suite(args.check, Scope(graphs=graphs))
    report["warnings"] = ["search guardrails are bypassed inside surveys"]
    return report


def cmd_verify(args) -> dict:
    graphs = () if args.suite == "directed-period" else _scope_graphs(args)
    blocks = parse_blocks(args.blocks) if args.blocks is not None else None
    scope = Scope(
        graphs=graphs,
        blocks=blocks,
        r_max=args.r_max,
        k_max=args.k_max,
        t_max=args.t_max,
        max_period=args.max_period,
        lengths=tuple(parse_int_list(args.lengths)),
    )
    return run_verification_suite(args.suite, scope)


COMMANDS = {
    "count": cmd_count,
    "fit": cmd_fit,
    "rays": cmd_rays,
    "facts": cmd_facts,
    "search": cmd_search,
    "quotient": cmd_quotient,
    "survey": cmd_survey,
    "verify": cmd_verify,
}


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "command"}


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "count"])
    for rec in report["records"]:
        writer.writerow([rec["k"], rec["count"]])
    return buf.getvalue()


def execute(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        body = COMMANDS[args.command](args)
    except LabcountError as exc:
        error = {"command": args.command, "error": type(exc).__name__, "message": str(exc), "version": __version__}
        stderr.write(json.dumps(error, sort_keys=True) + "\n")
        return exc.exit_code
    if args.command == "count" and args.format == "csv":
        stdout.write(render_csv(body))
        return 0
    report = {"command": args.command, "params": _params(args), "version": __version__, **body}
    stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
