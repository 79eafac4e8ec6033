"""The multi-result supercompiler.

``mrscp`` explores every driving and generalization alternative offered by
``multi_drive_steps`` and returns the whole space of finished process graphs
at once, represented compactly as a graph set: a tree whose build nodes list
the alternatives tried at a configuration and, per alternative, one graph set
per child configuration.  A single graph set of a few thousand nodes can
stand for billions of distinct process graphs.

Termination is the classical supercompilation argument.  Before a
configuration is expanded it is checked against its history: if some ancestor
configuration maps onto it by substituting variables for variables the branch
folds back to that ancestor, and if it embeds an ancestor (homeomorphically,
restricted to the relevant part of the history) the branch is abandoned as a
dead end.  Configurations are classified as global when their step is a case
split and local otherwise; a global configuration is compared against the
global part of the history, a local one only against the most recent run of
local entries.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Optional, Union

from .driving import (
    MDSRCases,
    MDSRLet,
    MultiDriveStepResult,
    mdsr_sub_exps,
    multi_drive_steps,
)
from .lang import (
    Expression,
    NameSupply,
    Program,
    embeds,
    match_variable_mapping,
    rename,
    supply_for,
)


class DepthCapError(Exception):
    """The configured depth cap was reached before the graph set closed."""


class BudgetExceeded(Exception):
    """The configured node budget was spent before the graph set closed."""


class Kind(enum.Enum):
    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class HistoryEntry:
    kind: Kind
    level: int
    conf: Expression


History = tuple[HistoryEntry, ...]  # most recent entry first


@dataclass(frozen=True)
class GSNone:
    """A dead end: no finished graph completes this branch."""


@dataclass(frozen=True)
class GSFold:
    """The ancestor ``back`` levels up maps onto this configuration.

    ``renaming`` sends each variable of the ancestor configuration to a
    variable of this one; it need not be injective, so the configuration may
    be an instance of the ancestor in which some variables coincide.
    """

    conf: Expression
    back: int
    renaming: tuple[tuple[str, str], ...]

    @property
    def renaming_map(self) -> dict[str, str]:
        return dict(self.renaming)


@dataclass(frozen=True)
class GSBuild:
    """One alternative per step tried here; each child is a graph set."""

    conf: Expression
    alts: tuple[tuple[MultiDriveStepResult, tuple["GraphSet", ...]], ...]


GraphSet = Union[GSNone, GSFold, GSBuild]


def _fold_back(history: History, conf: Expression, level: int) -> Optional[GSFold]:
    for entry in history:
        renaming = match_variable_mapping(entry.conf, conf)
        if renaming is not None:
            pairs = tuple(sorted(renaming.items()))
            return GSFold(conf, level - entry.level, pairs)
    return None


def _relevant(history: History, kind: Kind) -> list[Expression]:
    if kind is Kind.GLOBAL:
        return [h.conf for h in history if h.kind is Kind.GLOBAL]
    confs = []
    for h in history:
        if h.kind is not Kind.LOCAL:
            break
        confs.append(h.conf)
    return confs


class _Supercompiler:
    def __init__(
        self,
        program: Program,
        supply: NameSupply,
        propagate_spliced: bool,
        max_depth: Optional[int],
        budget: Optional[int],
    ):
        self.program = program
        self.supply = supply
        self.propagate_spliced = propagate_spliced
        self.max_depth = max_depth
        self.budget = budget
        self.nodes = 0

    def run(self, level: int, history: History, conf: Expression) -> GraphSet:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} configurations expanded")
        if self.max_depth is not None and level > self.max_depth:
            raise DepthCapError(f"depth cap {self.max_depth} reached")
        fold = _fold_back(history, conf, level)
        if fold is not None:
            return fold
        results = multi_drive_steps(
            self.program, conf, self.supply, self.propagate_spliced
        )
        kind = (
            Kind.GLOBAL
            if any(isinstance(r, MDSRCases) for r in results)
            else Kind.LOCAL
        )
        if any(embeds(c, conf) for c in _relevant(history, kind)):
            return GSNone()
        extended = (HistoryEntry(kind, level, conf), *history)
        alts = tuple(
            (
                r,
                tuple(
                    self.run(level + 1, extended, sub) for sub in mdsr_sub_exps(r)
                ),
            )
            for r in results
        )
        return GSBuild(conf, alts)


def mrscp(
    program: Program,
    conf: Expression,
    *,
    propagate_spliced: bool = True,
    max_depth: Optional[int] = None,
    budget: Optional[int] = None,
) -> GraphSet:
    """Supercompile ``conf`` against ``program`` into a graph set."""
    supply = supply_for(program, conf)
    engine = _Supercompiler(program, supply, propagate_spliced, max_depth, budget)
    limit = sys.getrecursionlimit()
    if limit < 100_000:
        sys.setrecursionlimit(100_000)
    try:
        return engine.run(0, (), conf)
    finally:
        sys.setrecursionlimit(limit)


def validate_graph_set(gs: GraphSet) -> None:
    """Check structural invariants; raises ``AssertionError`` on violation.

    Every fold resolves to an ancestor build node whose configuration the
    fold's renaming maps onto the folded configuration, and whenever a build
    node offers more than one alternative the first one is a generalization.
    """
    stack: list[Expression] = []

    def walk(node: GraphSet) -> None:
        if isinstance(node, GSNone):
            return
        if isinstance(node, GSFold):
            assert 1 <= node.back <= len(stack), "fold target out of range"
            target = stack[-node.back]
            assert rename(target, node.renaming_map) == node.conf, (
                "fold renaming does not map the ancestor onto the configuration"
            )
            return
        assert node.alts, "build node with no alternatives"
        if len(node.alts) > 1:
            assert isinstance(node.alts[0][0], MDSRLet), (
                "first of several alternatives is not a generalization"
            )
        for step, children in node.alts:
            assert len(children) == len(mdsr_sub_exps(step)), (
                "child count does not match the step's sub-expressions"
            )
            stack.append(node.conf)
            for child in children:
                walk(child)
            stack.pop()

    limit = sys.getrecursionlimit()
    if limit < 100_000:
        sys.setrecursionlimit(100_000)
    try:
        walk(gs)
    finally:
        sys.setrecursionlimit(limit)
