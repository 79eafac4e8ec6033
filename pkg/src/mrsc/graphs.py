"""Process graphs and the lazy enumeration of a graph set.

A process graph is one finished supercompilation result: a tree of driving
and generalization nodes whose back edges (fold nodes) point to an ancestor
that the folded configuration renames.  ``gset2graphs`` enumerates every
process graph a graph set stands for, lazily, without ever materializing the
whole sequence; ``count_graphs`` computes how many there are without
enumerating them at all.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .driving import (
    MDSRCases,
    MDSRCon,
    MDSRLeaf,
    MDSRUnfold,
    MultiDriveStepResult,
    mdsr_sub_exps,
)
from .lang import Expression, Pattern
from .supercompile import GSFold, GSNone, GraphSet


@dataclass(frozen=True)
class CGLeaf:
    conf: Expression


@dataclass(frozen=True)
class CGCon:
    conf: Expression
    name: str
    children: tuple["ConfGraph", ...]


@dataclass(frozen=True)
class CGUnfold:
    conf: Expression
    child: "ConfGraph"


@dataclass(frozen=True)
class CGCases:
    conf: Expression
    scrutinee: str
    branches: tuple[tuple[Pattern, "ConfGraph"], ...]


@dataclass(frozen=True)
class CGLet:
    conf: Expression
    bindings: tuple[tuple[str, "ConfGraph"], ...]
    body: "ConfGraph"


@dataclass(frozen=True)
class CGFold:
    conf: Expression
    back: int
    renaming: tuple[tuple[str, str], ...]

    @property
    def renaming_map(self) -> dict[str, str]:
        return dict(self.renaming)


ConfGraph = Union[CGLeaf, CGCon, CGUnfold, CGCases, CGLet, CGFold]


def build_graph(
    step: MultiDriveStepResult, conf: Expression, children: tuple[ConfGraph, ...]
) -> ConfGraph:
    """Assemble a graph node from a step and its child graphs, which are given
    in ``mdsr_sub_exps`` order (for a generalization: body first)."""
    expected = len(mdsr_sub_exps(step))
    if len(children) != expected:
        raise ValueError(
            f"step expects {expected} children, got {len(children)}"
        )
    if isinstance(step, MDSRLeaf):
        return CGLeaf(conf)
    if isinstance(step, MDSRCon):
        return CGCon(conf, step.name, children)
    if isinstance(step, MDSRUnfold):
        return CGUnfold(conf, children[0])
    if isinstance(step, MDSRCases):
        branches = tuple(
            (pattern, child)
            for (pattern, _), child in zip(step.branches, children)
        )
        return CGCases(conf, step.scrutinee, branches)
    bindings = tuple(
        (name, child) for (name, _), child in zip(step.bindings, children[1:])
    )
    return CGLet(conf, bindings, children[0])


def children_of(graph: ConfGraph) -> tuple[ConfGraph, ...]:
    if isinstance(graph, (CGLeaf, CGFold)):
        return ()
    if isinstance(graph, CGCon):
        return graph.children
    if isinstance(graph, CGUnfold):
        return (graph.child,)
    if isinstance(graph, CGCases):
        return tuple(child for _, child in graph.branches)
    return (graph.body, *(child for _, child in graph.bindings))


class SizeMode(enum.Enum):
    """How process graphs are measured.

    ``STANDARD`` counts every node.  ``SKIP_UNFOLD`` counts transient unfold
    nodes as free, so only branching structure, leaves, generalizations and
    back edges weigh in; minimizing under it favors graphs that reach their
    loops through longer transient chains.
    """

    STANDARD = "standard"
    SKIP_UNFOLD = "skip-unfold"

    def node_cost(self, step_or_graph: object) -> int:
        if self is SizeMode.SKIP_UNFOLD and isinstance(
            step_or_graph, (MDSRUnfold, CGUnfold)
        ):
            return 0
        return 1


def graph_size(graph: ConfGraph, mode: SizeMode = SizeMode.STANDARD) -> int:
    total = 0
    stack = [graph]
    while stack:
        node = stack.pop()
        total += mode.node_cost(node)
        stack.extend(children_of(node))
    return total


def count_graphs(gs: GraphSet) -> int:
    """How many process graphs the graph set represents."""
    limit = sys.getrecursionlimit()
    if limit < 100_000:
        sys.setrecursionlimit(100_000)
    try:
        return _count(gs)
    finally:
        sys.setrecursionlimit(limit)


def _count(gs: GraphSet) -> int:
    if isinstance(gs, GSNone):
        return 0
    if isinstance(gs, GSFold):
        return 1
    total = 0
    for _, children in gs.alts:
        product = 1
        for child in children:
            product *= _count(child)
            if product == 0:
                break
        total += product
    return total


def _lazy_product(
    factories: tuple[Callable[[], Iterator[ConfGraph]], ...],
) -> Iterator[tuple[ConfGraph, ...]]:
    """Cartesian product of restartable iterators, leftmost component most
    significant, materializing nothing."""
    if not factories:
        yield ()
        return
    head, rest = factories[0], factories[1:]
    for first in head():
        for others in _lazy_product(rest):
            yield (first, *others)


def gset2graphs(gs: GraphSet) -> Iterator[ConfGraph]:
    """Enumerate every process graph in the graph set, in alternative order:
    earlier alternatives first, and within an alternative the leftmost child
    varies slowest."""
    if isinstance(gs, GSNone):
        return
    if isinstance(gs, GSFold):
        yield CGFold(gs.conf, gs.back, gs.renaming)
        return
    for step, children in gs.alts:
        factories = tuple(
            (lambda c=child: gset2graphs(c)) for child in children
        )
        for combo in _lazy_product(factories):
            yield build_graph(step, gs.conf, combo)


def dump(graph: ConfGraph, indent: int = 0) -> str:
    """Indented one node per line, for debugging and inspection."""
    pad = "  " * indent
    if isinstance(graph, CGLeaf):
        return f"{pad}Leaf {graph.conf}"
    if isinstance(graph, CGCon):
        lines = [f"{pad}Con {graph.name} {graph.conf}"]
        lines += [dump(c, indent + 1) for c in graph.children]
        return "\n".join(lines)
    if isinstance(graph, CGUnfold):
        return f"{pad}Unfold {graph.conf}\n{dump(graph.child, indent + 1)}"
    if isinstance(graph, CGCases):
        lines = [f"{pad}Cases {graph.conf} on {graph.scrutinee}"]
        for pattern, child in graph.branches:
            lines.append(f"{pad}  {pattern}:")
            lines.append(dump(child, indent + 2))
        return "\n".join(lines)
    if isinstance(graph, CGLet):
        lines = [f"{pad}Let {graph.conf}"]
        for name, child in graph.bindings:
            lines.append(f"{pad}  {name} =")
            lines.append(dump(child, indent + 2))
        lines.append(f"{pad}  in")
        lines.append(dump(graph.body, indent + 2))
        return "\n".join(lines)
    pairs = ", ".join(f"{a}->{b}" for a, b in graph.renaming)
    return f"{pad}Fold back {graph.back} [{pairs}] {graph.conf}"
