"""Command-line front end.

Subcommands ``static``, ``fluc`` and ``seg`` rank a temporal edge list and
write the ranking (tab-separated) plus a ``key<TAB>value`` statistics
record.  ``sweep`` solves the fluctuating problem over a grid of penalties
and writes CSV.  ``stats`` scores an existing ranking file.

Exit codes: 0 success, 2 unreadable or malformed input, 3 infeasible level
cap, 4 invalid flags.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys
import time
from collections.abc import Iterator, Sequence
from typing import TextIO

import numpy as np

from .gen_agony import InfeasibleError
from .graph import COLUMN_MODES, ParseError, TemporalGraph, read_edge_list
from .metrics import RankingStats, stats
from .ranking import NO_CHANGE, RankAssignment, RankSegmentation
from .seg import solve_seg
from .solvers import solve_fluc, solve_static

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def parse_lambda_grid(text: str) -> list[int]:
    """``"a..b"`` (inclusive integer range) or a comma-separated list."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad lambda grid {text!r}") from None
    if not values:
        raise UsageError(f"empty lambda grid {text!r}")
    if min(values) < 0:
        raise UsageError("lambda values must be non-negative")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="temporal-agony", description="Rank vertices of a temporal directed graph by minimizing agony.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="edge list, one 'u v [w] t' per line")
        p.add_argument("--columns", choices=COLUMN_MODES, default="uvwt", help="input column layout")
        p.add_argument("--bin", type=int, default=None, metavar="D", help="floor-divide timestamps by D")
        p.add_argument("--output", default="-", help="ranking output file (default: stdout)")

    def solver(p: argparse.ArgumentParser) -> None:
        p.add_argument("--k", type=int, default=None, help="allow at most k rank levels")
        p.add_argument("--stats", default=None, help="statistics output file (default: stderr)")
        p.add_argument("--no-runtime", action="store_true", help="omit runtime_ms from the statistics")

    p = sub.add_parser("static", help="one rank per vertex")
    common(p)
    solver(p)
    p = sub.add_parser("fluc", help="ranks may change over time at cost lambda per unit")
    common(p)
    solver(p)
    p.add_argument("--lambda", dest="lam", type=int, default=None, help="penalty per unit of rank change")
    p = sub.add_parser("seg", help="each vertex may change rank once")
    common(p)
    solver(p)
    p.add_argument("--max-iters", type=int, default=50)
    p = sub.add_parser("sweep", help="fluctuating ranks over a grid of lambda values, CSV out")
    common(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--lambda-grid", default=None, help="'a..b' or 'a,b,c'")
    p = sub.add_parser("stats", help="score an existing ranking file")
    common(p)
    p.add_argument("--ranking", required=True, help="output of static, fluc or seg")
    return parser


@contextlib.contextmanager
def _open_out(path: str | None, default: TextIO) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield default
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _load(args: argparse.Namespace) -> TemporalGraph:
    try:
        return read_edge_list(args.input, args.columns, args.bin)
    except (OSError, ParseError, ValueError) as exc:
        raise InputError(f"{args.input}: {exc}") from None


def write_static(graph: TemporalGraph, assignment: RankAssignment, out: TextIO) -> None:
    for v, label in enumerate(graph.labels):
        # constant in time, so any timestamp will do
        out.write(f"{label}\t{assignment.rank(v, 0)}\n")


def write_fluc(graph: TemporalGraph, assignment: RankAssignment, out: TextIO) -> None:
    for v, label in enumerate(graph.labels):
        for t, r in assignment.series(v):
            out.write(f"{label}\t{t}\t{r}\n")


def write_seg(graph: TemporalGraph, seg: RankSegmentation, out: TextIO) -> None:
    for v, label in enumerate(graph.labels):
        tau = "-" if seg.tau[v] == NO_CHANGE else str(int(seg.tau[v]))
        out.write(f"{label}\t{int(seg.r1[v])}\t{int(seg.r2[v])}\t{tau}\n")


def read_ranking(graph: TemporalGraph, path: str) -> RankAssignment:
    """Parse any of the three ranking formats written by this tool.

    The layout is recognised by the number of fields: 2 static, 3 per
    active pair, 4 segmentation.
    """
    rows = []
    try:
        with open(path, encoding="utf-8") as fh:
            rows = [line.split() for line in fh if line.strip()]
    except OSError as exc:
        raise InputError(f"{path}: {exc}") from None
    widths = {len(r) for r in rows}
    if len(widths) > 1 or not widths <= {2, 3, 4}:
        raise InputError(f"{path}: rows must all have 2, 3 or 4 fields")
    width = widths.pop() if widths else 2

    def num(text: str, lineno: int) -> int:
        try:
            return int(text)
        except ValueError:
            raise InputError(f"{path}: line {lineno}: {text!r} is not an integer") from None

    def vid(label: str) -> int:
        try:
            return graph.vertex(label)
        except KeyError:
            raise InputError(f"{path}: unknown vertex {label!r}") from None

    n = graph.n
    if width in (2, 4):
        seen = np.zeros(n, dtype=bool)
        r1 = np.zeros(n, dtype=np.int64)
        r2 = np.zeros(n, dtype=np.int64)
        tau = np.full(n, NO_CHANGE, dtype=np.int64)
        for i, row in enumerate(rows, start=1):
            v = vid(row[0])
            seen[v] = True
            r1[v] = num(row[1], i)
            r2[v] = r1[v] if width == 2 else num(row[2], i)
            if width == 4 and row[3] != "-":
                tau[v] = num(row[3], i)
        if not seen.all():
            raise InputError(f"{path}: no rank for {graph.labels[int(np.flatnonzero(~seen)[0])]!r}")
        if width == 2:
            return RankAssignment.constant(graph, r1)
        try:
            return RankSegmentation(r1, r2, tau).assignment(graph)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None

    p = graph.pairs
    slot = {(int(v), int(t)): i for i, (v, t) in enumerate(zip(p.vertex, p.time))}
    values = np.zeros(len(p), dtype=np.int64)
    filled = np.zeros(len(p), dtype=bool)
    for i, row in enumerate(rows, start=1):
        key = (vid(row[0]), num(row[1], i))
        if key not in slot:
            raise InputError(f"{path}: line {i}: {row[0]} is not active at {row[1]}")
        values[slot[key]] = num(row[2], i)
        filled[slot[key]] = True
    if not filled.all():
        raise InputError(f"{path}: ranks missing for {int((~filled).sum())} active pairs")
    return RankAssignment(graph, values)


def _emit_stats(args: argparse.Namespace, record: RankingStats) -> None:
    with _open_out(args.stats, sys.stderr) as out:
        out.write(record.to_text(timing=not args.no_runtime))


def _check_k(k: int | None) -> None:
    if k is not None and k < 1:
        raise UsageError("--k must be at least 1")


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except UsageError as exc:
        print(f"temporal-agony: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"temporal-agony: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"temporal-agony: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


def _dispatch(args: argparse.Namespace) -> int:
    if args.bin is not None and args.bin < 1:
        raise UsageError("--bin must be a positive integer")
    cmd = args.command
    if cmd in ("static", "fluc", "seg", "sweep"):
        _check_k(args.k)
    if cmd == "fluc" and args.lam is None:
        raise UsageError("fluc requires --lambda")
    if cmd == "fluc" and args.lam < 0:
        raise UsageError("--lambda must be non-negative")
    if cmd == "seg" and args.max_iters < 1:
        raise UsageError("--max-iters must be at least 1")
    if cmd == "sweep" and args.lambda_grid is None:
        raise UsageError("sweep requires --lambda-grid")
    grid = parse_lambda_grid(args.lambda_grid) if cmd == "sweep" else None

    graph = _load(args)

    if cmd == "sweep":
        with _open_out(args.output, sys.stdout) as out:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["lambda", "score", "avg_flux"])
            for lam in grid:
                sol = solve_fluc(graph, lam, args.k)
                writer.writerow([lam, sol.score, f"{stats(graph, sol.assignment).avg_flux:.6g}"])
        return EXIT_OK

    if cmd == "stats":
        assignment = read_ranking(graph, args.ranking)
        with _open_out(args.output, sys.stdout) as out:
            out.write(stats(graph, assignment).to_text(timing=False))
        return EXIT_OK

    start = time.perf_counter()
    iterations = None
    if cmd == "static":
        assignment = solve_static(graph, args.k).assignment
        result: RankAssignment | RankSegmentation = assignment
    elif cmd == "fluc":
        assignment = solve_fluc(graph, args.lam, args.k).assignment
        result = assignment
    else:
        state = solve_seg(graph, args.k, args.max_iters)
        result = state.segmentation
        iterations = state.iterations
    elapsed = (time.perf_counter() - start) * 1000.0

    with _open_out(args.output, sys.stdout) as out:
        if cmd == "static":
            write_static(graph, result, out)
        elif cmd == "fluc":
            write_fluc(graph, result, out)
        else:
            write_seg(graph, result, out)
    _emit_stats(args, stats(graph, result, iterations=iterations, runtime_ms=round(elapsed, 3)))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
