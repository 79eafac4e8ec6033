"""Command line interface.

Subcommands:

``stats``        build the graph set of each input and report size statistics
``residualize``  print the residual program of a selected process graph
``enumerate``    list process graphs of a graph set with their sizes
``check``        compare residual programs against the original on random inputs
``eval``         evaluate the input's expression directly

Exit codes: 0 success, 1 input or usage error, 2 failed check or stuck
evaluation, 3 resource cap reached (depth cap, fuel, or an enumeration that
would exceed the limit without --force).
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
import time
from pathlib import Path
from typing import Optional

from .driving import DriveError
from .graphs import SizeMode, gset2graphs, count_graphs, graph_size
from .interp import DEFAULT_FUEL, observe, random_value, signature_of
from .lang import Expression, LangError, Program, free_vars, substitute
from .parser import ParseError, parse_program
from .queries import first_graph, last_graph, max_size_graph, min_size_graph
from .report import StatsRow, plot_stats, render_csv, render_text
from .residualize import residualize
from .supercompile import BudgetExceeded, DepthCapError, mrscp

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2
EXIT_RESOURCE = 3


class InputError(Exception):
    pass


def _load(path: str) -> tuple[Program, Expression]:
    try:
        program, root = parse_program(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    if root is None:
        raise InputError(f"{path}: no expression directive")
    return program, root


def _mode(name: str) -> SizeMode:
    return SizeMode.SKIP_UNFOLD if name == "skip-unfold" else SizeMode.STANDARD


def _select_graph(gs, query: str, mode: SizeMode):
    if query == "first":
        return first_graph(gs)
    if query == "last":
        return last_graph(gs)
    result = min_size_graph(gs, mode) if query == "min" else max_size_graph(gs, mode)
    return result.graph if result is not None else None


def cmd_stats(args: argparse.Namespace) -> int:
    rows = []
    for path in args.files:
        program, root = _load(path)
        started = time.perf_counter()
        gs = mrscp(program, root, max_depth=args.max_depth)
        built = time.perf_counter()
        first = first_graph(gs)
        last = last_graph(gs)
        smallest = min_size_graph(gs)
        largest = max_size_graph(gs)
        smallest_skip = min_size_graph(gs, SizeMode.SKIP_UNFOLD)
        largest_skip = max_size_graph(gs, SizeMode.SKIP_UNFOLD)
        count = count_graphs(gs)
        finished = time.perf_counter()
        rows.append(
            StatsRow(
                example=Path(path).stem,
                first=graph_size(first) if first is not None else None,
                last=graph_size(last) if last is not None else None,
                min=smallest.size if smallest is not None else None,
                max=largest.size if largest is not None else None,
                min_skip_unfold=(
                    smallest_skip.size if smallest_skip is not None else None
                ),
                max_skip_unfold=(
                    largest_skip.size if largest_skip is not None else None
                ),
                count=count,
                build_ms=(built - started) * 1000.0,
                query_ms=(finished - built) * 1000.0,
            )
        )
    render = render_csv if args.format == "csv" else render_text
    sys.stdout.write(render(rows, include_timings=not args.no_timings))
    if args.plot is not None:
        plot_stats(rows, args.plot)
    return EXIT_OK


def cmd_residualize(args: argparse.Namespace) -> int:
    program, root = _load(args.file)
    gs = mrscp(program, root, max_depth=args.max_depth)
    graph = _select_graph(gs, args.query, _mode(args.mode))
    if graph is None:
        print("no finished process graph", file=sys.stderr)
        return EXIT_INPUT
    print(residualize(graph))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    program, root = _load(args.file)
    gs = mrscp(program, root, max_depth=args.max_depth)
    count = count_graphs(gs)
    print(f"count: {count}")
    if count > args.limit and not args.force:
        print(
            f"refusing to enumerate {count} graphs (limit {args.limit}); "
            "pass --force to list the first ones",
            file=sys.stderr,
        )
        return EXIT_RESOURCE
    for i, graph in enumerate(itertools.islice(gset2graphs(gs), args.limit)):
        standard = graph_size(graph)
        skip = graph_size(graph, SizeMode.SKIP_UNFOLD)
        print(f"{i}\t{standard}\t{skip}")
    return EXIT_OK


def _random_inputs(
    program: Program, roots: list[Expression], size_bound: int, seed: int, n: int
):
    """Deterministic sequence of variable bindings for the free variables."""
    signature = signature_of(program, *roots)
    names = free_vars(roots[0])
    master = random.Random(seed)
    for _ in range(n):
        yield {
            name: random_value(signature, size_bound, master.randrange(2**32))
            for name in names
        }


def cmd_check(args: argparse.Namespace) -> int:
    program, root = _load(args.file)
    gs = mrscp(program, root, max_depth=args.max_depth)
    selections = [
        ("first", SizeMode.STANDARD),
        ("last", SizeMode.STANDARD),
        ("min", SizeMode.STANDARD),
        ("max", SizeMode.STANDARD),
        ("min", SizeMode.SKIP_UNFOLD),
        ("max", SizeMode.SKIP_UNFOLD),
    ]
    if args.samples <= 0:
        print("warning: 0 samples requested, check passes vacuously", file=sys.stderr)
        return EXIT_OK
    failures = 0
    for query, mode in selections:
        graph = _select_graph(gs, query, mode)
        if graph is None:
            print(f"{query} ({mode.value}): no graph", file=sys.stderr)
            failures += 1
            continue
        residual = residualize(graph)
        agreements = 0
        for env in _random_inputs(
            program, [root, residual.root], args.size_bound, args.seed, args.samples
        ):
            expected = observe(program, substitute(root, env), args.fuel)
            actual = observe(residual.program, substitute(residual.root, env), args.fuel)
            if expected.kind == "value" and (
                actual.kind != "value" or actual.value != expected.value
            ):
                print(
                    f"{query} ({mode.value}): disagreement on {env}: "
                    f"{expected.kind} vs {actual.kind}",
                    file=sys.stderr,
                )
                failures += 1
                break
            agreements += 1
        else:
            print(f"{query} ({mode.value}): ok ({agreements} samples)")
    return EXIT_CHECK if failures else EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    program, root = _load(args.file)
    outcome = observe(program, root, args.fuel)
    if outcome.kind == "value":
        print(outcome.value)
        return EXIT_OK
    print(f"evaluation {outcome.kind}", file=sys.stderr)
    return EXIT_CHECK if outcome.kind == "stuck" else EXIT_RESOURCE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrsc", description="Multi-result supercompiler for call-by-name programs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_depth(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--max-depth",
            type=int,
            default=None,
            help="abort when the graph set grows deeper than this",
        )

    p = sub.add_parser("stats", help="size statistics of the whole graph set")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument(
        "--no-timings", action="store_true", help="omit timing columns"
    )
    p.add_argument("--plot", metavar="PNG", help="also render a bar chart")
    add_depth(p)
    p.set_defaults(run=cmd_stats)

    p = sub.add_parser("residualize", help="print a selected residual program")
    p.add_argument("file", metavar="FILE")
    p.add_argument(
        "--query", choices=("first", "last", "min", "max"), default="min"
    )
    p.add_argument("--mode", choices=("standard", "skip-unfold"), default="standard")
    add_depth(p)
    p.set_defaults(run=cmd_residualize)

    p = sub.add_parser("enumerate", help="list process graphs with their sizes")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--limit", type=int, default=100)
    p.add_argument(
        "--force", action="store_true", help="enumerate even past the limit"
    )
    add_depth(p)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser(
        "check", help="compare residual programs against the original"
    )
    p.add_argument("file", metavar="FILE")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--size-bound", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    add_depth(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("eval", help="evaluate the input's expression")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p.set_defaults(run=cmd_eval)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (None, 0):
            return EXIT_OK
        return EXIT_INPUT
    try:
        return args.run(args)
    except InputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, LangError, DriveError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except DepthCapError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RESOURCE
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
