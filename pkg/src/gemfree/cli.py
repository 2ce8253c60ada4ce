"""Command-line front end.

Every subcommand prints a human-readable table and, except ``enumerate``,
appends JSON-lines run records to ``--records``.  Exit status is 0 on
success, 1 when a check fails (a bound violation inside the theorem's range,
a failed lemma check or a broken transform), and 2 on usage errors.

CSV layouts (``--csv``):

* compare: ``m,t,n,rho,margin``
* sweep: ``m,parity,bound,max_rho,gap,verdict,scanned,maximizer_g6``
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import Sequence

from . import __version__
from .canon import canonical_form, is_isomorphic
from .enumeration import EnumerationTask, enumerate_graphs
from .errors import ConvergenceError, GemfreeError
from .graph import FamilyParams, Graph, build_family, is_connected, is_isolated_free
from .graph6 import from_graph6, to_graph6
from .patterns import is_fan_free
from .records import RunRecord, append_records, verdict_for, write_csv
from .search import TIE_RHO, AnnealConfig, anneal_max, in_theorem_range, verify_bound_sweep, verify_lemma_suite
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, bound_odd, certificate, parity_bound, perron
from .transforms import (
    RotationSpec,
    check_rotation_lemma,
    compare_families,
    cross_gap,
    family_member,
    plan_surgery,
    rotate,
    surgery_family_member,
    surgery_stages,
)

THREADS_ENV = "GEMFREE_THREADS"
DEFAULT_RECORDS = "gemfree_records.jsonl"

FAMILIES = {
    "s-nk": "S_nk",
    "s-minus": "S_n2_minus_t",
    "fan": "H_t",
    "path": "path",
    "cycle": "cycle",
    "complete": "complete",
    "star": "star",
    "empty": "empty",
}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def resolve_threads(flag: int | None) -> int:
    """Flag, then the GEMFREE_THREADS environment variable, then cpu count."""
    if flag is not None:
        if flag < 1:
            raise UsageError("--threads must be >= 1")
        return flag
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise UsageError(f"{THREADS_ENV} must be >= 1")
        return value
    return os.cpu_count() or 1


def _bound_for(m: int) -> float | None:
    if m < 1:
        return None
    if m % 2 == 0 and m < 4:
        return None
    return parity_bound(m) if m % 2 == 0 else bound_odd(m)


def _graph_record(command: str, g: Graph, rho: float, start: float, tol: float, fan_t: int = 5) -> RunRecord:
    """Record for a single graph; verdicts apply to H_t-free graphs without isolated vertices."""
    bound = _bound_for(g.m)
    applicable = bound is not None and is_isolated_free(g) and is_fan_free(g, fan_t)
    return RunRecord(
        command=command,
        m=g.m,
        bound_value=bound,
        achieved_max_rho=rho,
        maximizer_graph6=to_graph6(g).decode(),
        num_graphs_scanned=1,
        seed=None,
        elapsed_ms=_ms(start),
        verdict=verdict_for(rho, bound, tol) if applicable else "not_applicable",
        coverage="single",
    )


def _ms(start: float) -> int:
    return int(round((time.perf_counter() - start) * 1000))


def _is_failure(rec: RunRecord) -> bool:
    return rec.verdict == "violation" and rec.m is not None and in_theorem_range(rec.m)


def _fmt(value, digits: int = 12) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{digits}f}"
    return str(value)


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in header]] + [[_fmt(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _read_graph(text: str) -> Graph:
    return from_graph6(text.strip())


def _parse_moved(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"--moved expects comma-separated vertex indices, got {text!r}") from None


# subcommands ----------------------------------------------------------------------------

def cmd_construct(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    g = build_family(FamilyParams(FAMILIES[args.family], n=args.n, k=args.k, t=args.t))
    pr = perron(g, args.tol, args.max_iter)
    print(f"graph6  {to_graph6(g).decode()}", file=out)
    print(f"n={g.n} m={g.m} rho={pr.rho:.12f}", file=out)
    return EXIT_OK, [_graph_record("construct", g, pr.rho, start, args.verdict_tol)]


def cmd_spectral(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    g = _read_graph(args.g6)
    pr = perron(g, args.tol, args.max_iter)
    print(f"rho = {pr.rho:.12f}  (n={g.n}, m={g.m}, iterations={pr.iterations}, residual={pr.residual:.2e})", file=out)
    if args.vector:
        print("x = " + " ".join(f"{v:.10f}" for v in pr.x), file=out)
    if args.certificate:
        if not is_connected(g):
            raise UsageError("--certificate needs a connected graph")
        c = certificate(g, pr)
        rows = [
            ("u*", c.u_star),
            ("|U|", len(c.U)),
            ("|W|", len(c.W)),
            ("e(U)", c.eU),
            ("e(W)", c.eW),
            ("e(U,W)", c.eUW),
            ("eta1(U)", c.eta1_U),
            ("classes", " ".join(c.component_classes)),
            ("identity residual (rho^2)", c.identity2_residual),
            ("identity residual (rho^2-rho)", c.identity3_residual),
            ("row-sum residual", c.row_sum_residual),
        ]
        print(_table(("quantity", "value"), rows), file=out)
    return EXIT_OK, [_graph_record("spectral", g, pr.rho, start, args.verdict_tol)]


def cmd_gemfree(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    g = _read_graph(args.g6)
    free = is_fan_free(g, args.fan_t)
    name = "gem" if args.fan_t == 5 else f"H_{args.fan_t}"
    print(f"{name}-free: {'yes' if free else 'no'}  (n={g.n}, m={g.m})", file=out)
    rho = perron(g, args.tol, args.max_iter).rho
    rec = _graph_record("gemfree", g, rho, start, args.verdict_tol, args.fan_t)
    if rec.verdict != "not_applicable":
        print(f"rho = {rho:.12f}  bound = {rec.bound_value:.12f}  verdict = {rec.verdict}", file=out)
    return (EXIT_FAIL if _is_failure(rec) else EXIT_OK), [rec]


def cmd_rotate(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    g = _read_graph(args.g6)
    spec = RotationSpec(args.u, args.v, _parse_moved(args.moved))
    if not is_connected(g):
        raise UsageError("rotate needs a connected graph")
    rep = check_rotation_lemma(g, spec, args.tol)
    g2 = rotate(g, spec)
    rows = [
        ("result", to_graph6(g2).decode()),
        ("x_u", rep.x_u),
        ("x_v", rep.x_v),
        ("rho before", rep.rho_before),
        ("rho after", rep.rho_after),
        ("margin", rep.margin),
        ("status", rep.status),
    ]
    print(_table(("quantity", "value"), rows), file=out)
    rec = _graph_record("rotate", g2, rep.rho_after, start, args.verdict_tol)
    return (EXIT_FAIL if rep.status == "violated" else EXIT_OK), [rec]


def cmd_surgery(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    g = _read_graph(args.g6)
    if not is_connected(g):
        raise UsageError("surgery needs a connected graph")
    plan = plan_surgery(g, args.u_star, args.center)
    stages = surgery_stages(g, plan)
    result = stages.result
    target = surgery_family_member(plan)
    before = perron(stages.g_c, args.tol, args.max_iter)
    after = perron(stages.g_c_prime, args.tol, args.max_iter)
    gap = cross_gap(stages.g_c, stages.g_c_prime, before.x, after.x)
    rho_before = perron(g, args.tol, args.max_iter).rho
    rho_after = perron(result, args.tol, args.max_iter).rho
    same_m = result.m == g.m
    gem_free = is_fan_free(result, 5)
    matches = is_isomorphic(result, target)
    rows = [
        ("u*", plan.u_star),
        ("centre", plan.center),
        ("a (leaves)", len(plan.leaves)),
        ("b (isolated in U)", len(plan.isolated)),
        ("W degrees", " ".join(map(str, plan.degrees)) or "-"),
        ("realised t", plan.realized_t),
        ("result", to_graph6(result).decode()),
        ("edges preserved", same_m),
        ("gem-free", gem_free),
        (f"isomorphic to S_({target.n},2)^-{plan.realized_t}", matches),
        ("rho before", rho_before),
        ("rho after", rho_after),
        ("cross gap", gap),
    ]
    print(_table(("quantity", "value"), rows), file=out)
    rec = _graph_record("surgery", result, rho_after, start, args.verdict_tol)
    ok = same_m and gem_free and matches
    return (EXIT_OK if ok else EXIT_FAIL), [rec]


def cmd_compare(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    cmp = compare_families(args.m, args.t_max, tol=args.tol)
    margins = cmp.margins
    rows = [(args.m, t, n, rho, margins.get(t)) for t, n, rho in cmp.rows]
    print(_table(("m", "t", "n", "rho", "margin"), rows), file=out)
    holds = cmp.holds(args.margin)
    print(f"reference t={cmp.reference_t}; strict ordering {'holds' if holds else 'FAILS'} (margin > {args.margin:g})", file=out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, ("m", "t", "n", "rho", "margin"), [(m, t, n, rho, "" if mg is None else mg) for m, t, n, rho, mg in rows])
    top_t, top_n, top_rho = cmp.rows[0]
    bound = _bound_for(args.m)
    rec = RunRecord(
        command="compare",
        m=args.m,
        bound_value=bound,
        achieved_max_rho=top_rho,
        maximizer_graph6=to_graph6(family_member(args.m, top_t)).decode(),
        num_graphs_scanned=len(cmp.rows),
        seed=None,
        elapsed_ms=_ms(start),
        verdict=verdict_for(top_rho, bound, args.verdict_tol) if bound is not None else "not_applicable",
        coverage="family",
    )
    return (EXIT_OK if holds else EXIT_FAIL), [rec]


def cmd_enumerate(args, out) -> tuple[int, list[RunRecord]]:
    if (args.n is None) == (args.edges is None):
        raise UsageError("enumerate needs exactly one of --n or --edges")
    filters = dict(gem_free=args.gem_free, connected=args.connected, no_isolated=args.no_isolated, method=args.method)
    if args.n is not None:
        task = EnumerationTask.by_vertices(args.n, edges=args.m, **filters)
    else:
        task = EnumerationTask.by_edges(args.edges, **filters)
    count = 0
    for g in enumerate_graphs(task):
        count += 1
        if args.list:
            print(canonical_form(g).decode() if args.canonical else to_graph6(g).decode(), file=out)
    print(f"count = {count}", file=out)
    return EXIT_OK, []


def cmd_sweep(args, out) -> tuple[int, list[RunRecord]]:
    result = verify_bound_sweep(args.nmax, tol=args.verdict_tol, m_min=args.m_min)
    rows = []
    for r in result.records:
        rows.append((r.m, r.parity, r.bound_value, r.achieved_max_rho, r.bound_value - r.achieved_max_rho, r.verdict, r.num_graphs_scanned, r.maximizer_graph6))
    header = ("m", "parity", "bound", "max_rho", "gap", "verdict", "scanned", "maximizer_g6")
    print(_table(header, rows), file=out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, header, rows)
    violations = result.violations
    print(f"scanned {result.scanned} graphs (n <= {args.nmax}, coverage partial); violations: {len(violations)}", file=out)
    for f in result.findings:
        print(f"FINDING: m={f.m} outside the theorem's range exceeds the parity bound ({f.achieved_max_rho:.12f} > {f.bound_value:.12f}), graph {f.maximizer_graph6}", file=out)
    return (EXIT_FAIL if violations else EXIT_OK), result.records


def cmd_anneal(args, out) -> tuple[int, list[RunRecord]]:
    moves = tuple(tok.strip() for tok in args.moves.split(",") if tok.strip())
    config = AnnealConfig(
        m=args.m,
        restarts=args.restarts,
        steps=args.steps,
        t_start=args.t_start,
        t_end=args.t_end,
        seed=args.seed,
        moves=moves,
        workers=resolve_threads(args.threads),
        quench=not args.no_quench,
    )
    rec = anneal_max(config)
    rows = [
        ("m", rec.m),
        ("bound", rec.bound_value),
        ("best rho", rec.achieved_max_rho),
        ("gap", rec.bound_value - rec.achieved_max_rho),
        ("maximizer", rec.maximizer_graph6),
        ("matches extremal graph", rec.extra.get("matches_extremal")),
        ("states evaluated", rec.num_graphs_scanned),
        ("verdict", rec.verdict),
    ]
    print(_table(("quantity", "value"), rows), file=out)
    return (EXIT_FAIL if _is_failure(rec) else EXIT_OK), [rec]


def cmd_lemmas(args, out) -> tuple[int, list[RunRecord]]:
    start = time.perf_counter()
    report = verify_lemma_suite(args.seed, args.trials, invert_hypothesis=args.invert_hypothesis)
    rows = [(name, passed, total, report.skipped.get(name, 0)) for name, (passed, total) in report.checks.items()]
    for name, skipped in report.skipped.items():
        if name not in report.checks:
            rows.append((name, 0, 0, skipped))
    print(_table(("check", "passed", "total", "skipped"), rows), file=out)
    for name, g6 in report.counterexamples:
        print(f"COUNTEREXAMPLE {name}: {g6}", file=out)
    rec = RunRecord(
        command="lemmas",
        m=None,
        bound_value=None,
        achieved_max_rho=None,
        maximizer_graph6=report.counterexamples[0][1] if report.counterexamples else "",
        num_graphs_scanned=sum(total for _, total in report.checks.values()),
        seed=args.seed,
        elapsed_ms=_ms(start),
        verdict="bound_holds" if report.ok else "violation",
        coverage="randomized",
    )
    return (EXIT_OK if report.ok else EXIT_FAIL), [rec]


# parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--records", default=DEFAULT_RECORDS, help=f"JSON-lines file that run records are appended to (default {DEFAULT_RECORDS})")
    common.add_argument("--no-records", action="store_true", help="do not write run records")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help=f"power-iteration residual tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, help=f"power-iteration cap (default {DEFAULT_MAX_ITER})")
    common.add_argument("--verdict-tol", type=float, default=TIE_RHO, help=f"slack when comparing rho with a bound (default {TIE_RHO:g})")
    common.add_argument("--threads", type=int, default=None, help=f"worker processes (default: ${THREADS_ENV}, else cpu count)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="gemfree", description="Spectral extremal checks for gem-free graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("construct", parents=[common], help="build a named graph and print its graph6")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, help="vertex count (star: number of leaves)")
    p.add_argument("--k", type=int, help="clique size for s-nk")
    p.add_argument("--t", type=int, help="deleted edges for s-minus, order for fan")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectral", parents=[common], help="Perron root, vector and certificate of a graph")
    p.add_argument("--g6", required=True)
    p.add_argument("--vector", action="store_true", help="print the Perron vector")
    p.add_argument("--certificate", action="store_true", help="print the u*/U/W certificate")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("gemfree", parents=[common], help="test a graph for gem (or H_t) containment")
    p.add_argument("--g6", required=True)
    p.add_argument("--fan-t", type=int, default=5)
    p.set_defaults(func=cmd_gemfree)

    p = sub.add_parser("rotate", parents=[common], help="apply an edge rotation and check the spectral increase")
    p.add_argument("--g6", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--moved", required=True, help="comma-separated neighbours of v moved to u")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("surgery", parents=[common], help="W-elimination surgery on a graph")
    p.add_argument("--g6", required=True)
    p.add_argument("--u-star", type=int, default=None)
    p.add_argument("--center", type=int, default=None)
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("compare", parents=[common], help="order the S_{n,2}^{-t} members with m edges")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t-max", type=int, default=8)
    p.add_argument("--margin", type=float, default=1e-10)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("enumerate", parents=[common], help="isomorph-free enumeration")
    p.add_argument("--n", type=int, default=None, help="vertex count")
    p.add_argument("--edges", type=int, default=None, help="edge count (connected graphs, n <= m+1)")
    p.add_argument("--m", type=int, default=None, help="exact edge count with --n")
    p.add_argument("--gem-free", action="store_true")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--no-isolated", action="store_true")
    p.add_argument("--method", choices=("auto", "dedupe", "augment"), default="auto")
    p.add_argument("--list", action="store_true", help="print one graph6 line per class")
    p.add_argument("--canonical", action="store_true", help="with --list, print canonical forms")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sweep", parents=[common], help="exhaustive bound check on small gem-free graphs")
    p.add_argument("--nmax", type=int, default=9)
    p.add_argument("--m-min", type=int, default=11)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("anneal", parents=[common], help="simulated annealing for the largest rho at fixed m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--t-start", type=float, default=0.05)
    p.add_argument("--t-end", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", default="swap,rotate")
    p.add_argument("--no-quench", action="store_true", help="skip the zero-temperature descent")
    p.set_defaults(func=cmd_anneal)

    p = sub.add_parser("lemmas", parents=[common], help="randomized lemma suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--invert-hypothesis", action="store_true", help="orient rotations against the hypothesis")
    p.set_defaults(func=cmd_lemmas)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        code, records = args.func(args, out)
    except ConvergenceError as exc:
        print(f"gemfree {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, GemfreeError) as exc:
        # malformed graph6, bad family parameters, capacity overflow, structural mismatch
        parser.print_usage(sys.stderr)
        print(f"gemfree {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if records and not args.no_records:
        append_records(args.records, records)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
