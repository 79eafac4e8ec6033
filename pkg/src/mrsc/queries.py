"""Queries answered directly on a graph set, without enumeration.

Each query runs in time linear in the graph set.  Viability matters
throughout: a dead-end child poisons its whole alternative, and an
alternative only counts when every child has at least one finished graph.

Ties in the size queries resolve toward the earliest alternative and, within
an alternative, the earliest witness of every child, so the returned graph is
the first one of optimal size in enumeration order.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Optional

from .graphs import CGFold, ConfGraph, SizeMode, build_graph
from .supercompile import GSFold, GSNone, GraphSet


@dataclass(frozen=True)
class QueryResult:
    size: int
    graph: ConfGraph


def _with_recursion_room(f: Callable[[], object]) -> object:
    limit = sys.getrecursionlimit()
    if limit < 100_000:
        sys.setrecursionlimit(100_000)
    try:
        return f()
    finally:
        sys.setrecursionlimit(limit)


def _pick(gs: GraphSet, last: bool) -> Optional[ConfGraph]:
    if isinstance(gs, GSNone):
        return None
    if isinstance(gs, GSFold):
        return CGFold(gs.conf, gs.back, gs.renaming)
    alts = reversed(gs.alts) if last else gs.alts
    for step, children in alts:
        picked = []
        for child in children:
            sub = _pick(child, last)
            if sub is None:
                break
            picked.append(sub)
        else:
            return build_graph(step, gs.conf, tuple(picked))
    return None


def first_graph(gs: GraphSet) -> Optional[ConfGraph]:
    """The first finished graph in enumeration order, or None if none exist."""
    return _with_recursion_room(lambda: _pick(gs, last=False))


def last_graph(gs: GraphSet) -> Optional[ConfGraph]:
    """The last finished graph in enumeration order, or None if none exist."""
    return _with_recursion_room(lambda: _pick(gs, last=True))


def _optimum(
    gs: GraphSet, mode: SizeMode, maximize: bool
) -> Optional[QueryResult]:
    if isinstance(gs, GSNone):
        return None
    if isinstance(gs, GSFold):
        return QueryResult(1, CGFold(gs.conf, gs.back, gs.renaming))
    best: Optional[QueryResult] = None
    for step, children in gs.alts:
        size = mode.node_cost(step)
        picked = []
        for child in children:
            sub = _optimum(child, mode, maximize)
            if sub is None:
                break
            size += sub.size
            picked.append(sub.graph)
        else:
            if best is None or (size > best.size if maximize else size < best.size):
                best = QueryResult(size, build_graph(step, gs.conf, tuple(picked)))
    return best


def min_size_graph(
    gs: GraphSet, mode: SizeMode = SizeMode.STANDARD
) -> Optional[QueryResult]:
    """A smallest finished graph under ``mode``, with its size."""
    return _with_recursion_room(lambda: _optimum(gs, mode, maximize=False))


def max_size_graph(
    gs: GraphSet, mode: SizeMode = SizeMode.STANDARD
) -> Optional[QueryResult]:
    """A largest finished graph under ``mode``, with its size."""
    return _with_recursion_room(lambda: _optimum(gs, mode, maximize=True))
