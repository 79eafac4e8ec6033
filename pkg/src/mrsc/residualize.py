"""Extraction of residual programs from process graphs.

The translation has three stages.  First the graph becomes an extended
expression: every node some fold points back to turns into a recursive
definition named after the node's path from the root, fold nodes become calls
to those definitions, unfold nodes vanish, and case splits and
generalizations become intermediate case and let forms.  Second, lifting
turns every case form into a pattern-matching definition and every let form
into an ordinary definition, leaving plain first-order expressions.  Third, a
cleanup pass inlines trivial single-use definitions and merges definitions
that are equal up to renaming, which is what makes small residual programs
come out small.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .graphs import (
    CGCases,
    CGCon,
    CGFold,
    CGLeaf,
    CGLet,
    CGUnfold,
    ConfGraph,
)
from .lang import (
    Clause,
    Ctr,
    Expression,
    FCall,
    FunDef,
    Matching,
    Ordinary,
    Pattern,
    Program,
    Var,
    free_vars,
    substitute,
    subterms,
    var_occurrences,
)
from .parser import print_program


@dataclass(frozen=True)
class Case:
    """An in-place case split, later lifted to a pattern-matching definition."""

    scrutinee: Expression
    branches: tuple[tuple[Pattern, "ExtExpression"], ...]


@dataclass(frozen=True)
class Let:
    """An in-place generalization, later lifted to an ordinary definition."""

    bindings: tuple[tuple[str, "ExtExpression"], ...]
    body: "ExtExpression"


ExtExpression = Union[Expression, Case, Let]


@dataclass(frozen=True)
class TargetDef:
    """A definition extracted for a fold target, body still in extended form."""

    name: str
    params: tuple[str, ...]
    body: ExtExpression


@dataclass(frozen=True)
class Residual:
    """A finished residual program with its entry expression."""

    program: Program
    root: Expression

    def __str__(self) -> str:
        return print_program(self.program, self.root)


def _with_recursion_room(f: Callable[[], object]) -> object:
    limit = sys.getrecursionlimit()
    if limit < 100_000:
        sys.setrecursionlimit(100_000)
    try:
        return f()
    finally:
        sys.setrecursionlimit(limit)


# ---------------------------------------------------------------------------
# Stage one: graph to extended expression
# ---------------------------------------------------------------------------


def _child_slots(graph: ConfGraph) -> tuple[tuple[int, ConfGraph], ...]:
    """Children with their path components.  For a generalization node the
    bindings take components 0..n-1 and the body takes component n."""
    if isinstance(graph, (CGLeaf, CGFold)):
        return ()
    if isinstance(graph, CGCon):
        return tuple(enumerate(graph.children))
    if isinstance(graph, CGUnfold):
        return ((0, graph.child),)
    if isinstance(graph, CGCases):
        return tuple((i, child) for i, (_, child) in enumerate(graph.branches))
    slots = tuple((i, child) for i, (_, child) in enumerate(graph.bindings))
    return slots + ((len(graph.bindings), graph.body),)


def _path_name(path: tuple[int, ...]) -> str:
    return "f_" + "_".join(str(i) for i in reversed(path))


def graph_to_ext(
    graph: ConfGraph,
) -> tuple[ExtExpression, tuple[TargetDef, ...]]:
    """Translate a process graph into an extended expression plus one
    definition per fold target, in first-encounter order."""
    targets: dict[int, tuple[str, tuple[str, ...]]] = {}
    fold_to_target: dict[int, int] = {}

    def locate(node: ConfGraph, path: tuple[int, ...], stack: list[ConfGraph]) -> None:
        if isinstance(node, CGFold):
            target = stack[-node.back]
            tid = id(target)
            if tid not in targets:
                target_path = path[: len(path) - node.back]
                targets[tid] = (_path_name(target_path), free_vars(target.conf))
            fold_to_target[id(node)] = tid
            return
        stack.append(node)
        for slot, child in _child_slots(node):
            locate(child, path + (slot,), stack)
        stack.pop()

    emitted: list[TargetDef] = []
    emitted_ids: set[int] = set()

    def translate(node: ConfGraph) -> ExtExpression:
        tid = id(node)
        if tid in targets:
            name, params = targets[tid]
            if tid not in emitted_ids:
                emitted_ids.add(tid)
                slot = len(emitted)
                emitted.append(TargetDef(name, params, Var("pending")))
                emitted[slot] = TargetDef(name, params, content(node))
            return FCall(name, tuple(Var(p) for p in params))
        return content(node)

    def content(node: ConfGraph) -> ExtExpression:
        if isinstance(node, CGLeaf):
            return node.conf
        if isinstance(node, CGCon):
            return Ctr(node.name, tuple(translate(c) for c in node.children))
        if isinstance(node, CGUnfold):
            return translate(node.child)
        if isinstance(node, CGCases):
            branches = tuple(
                (pattern, translate(child)) for pattern, child in node.branches
            )
            return Case(Var(node.scrutinee), branches)
        if isinstance(node, CGLet):
            bindings = tuple(
                (name, translate(child)) for name, child in node.bindings
            )
            return Let(bindings, translate(node.body))
        name, params = targets[fold_to_target[id(node)]]
        renaming = node.renaming_map
        return FCall(name, tuple(Var(renaming[p]) for p in params))

    def run() -> tuple[ExtExpression, tuple[TargetDef, ...]]:
        locate(graph, (), [])
        root = translate(graph)
        return root, tuple(emitted)

    return _with_recursion_room(run)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Stage two: lifting case and let forms into definitions
# ---------------------------------------------------------------------------


def lift_case_let(
    root_ext: ExtExpression, target_defs: tuple[TargetDef, ...]
) -> tuple[Program, Expression]:
    """Lift every case and let form into a fresh definition.

    Generated names are ``<owner>_case<k>`` and ``<owner>_let<k>`` with
    per-owner, per-kind counters assigned in pre-order; the entry expression
    is owned by ``main``.
    """
    out: list[FunDef] = []

    def lift(e: ExtExpression, owner: str, counters: dict[str, int]) -> Expression:
        if isinstance(e, Var):
            return e
        if isinstance(e, Ctr):
            return Ctr(e.name, tuple(lift(a, owner, counters) for a in e.args))
        if isinstance(e, FCall):
            return FCall(e.name, tuple(lift(a, owner, counters) for a in e.args))
        if isinstance(e, Case):
            k = counters["case"]
            counters["case"] += 1
            name = f"{owner}_case{k}"
            scrutinee = lift(e.scrutinee, owner, counters)
            branches = [
                (pattern, lift(body, owner, counters))
                for pattern, body in e.branches
            ]
            extras: list[str] = []
            for pattern, body in branches:
                bound = set(pattern.vars)
                for v in free_vars(body):
                    if v not in bound and v not in extras:
                        extras.append(v)
            params = tuple(extras)
            out.append(
                Matching(
                    name,
                    tuple(
                        Clause(pattern, params, body) for pattern, body in branches
                    ),
                )
            )
            return FCall(name, (scrutinee, *(Var(v) for v in params)))
        k = counters["let"]
        counters["let"] += 1
        name = f"{owner}_let{k}"
        bound = [lift(expr, owner, counters) for _, expr in e.bindings]
        body = lift(e.body, owner, counters)
        bind_vars = tuple(v for v, _ in e.bindings)
        extras = tuple(v for v in free_vars(body) if v not in bind_vars)
        out.append(Ordinary(name, (*bind_vars, *extras), body))
        return FCall(name, (*bound, *(Var(v) for v in extras)))

    def run() -> tuple[Program, Expression]:
        for target in target_defs:
            counters = {"case": 0, "let": 0}
            body = lift(target.body, target.name, counters)
            out.append(Ordinary(target.name, target.params, body))
        root = lift(root_ext, "main", {"case": 0, "let": 0})
        return Program(out), root

    return _with_recursion_room(run)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Stage three: cleanup
# ---------------------------------------------------------------------------


def _rewrite(e: Expression, visit: Callable[[Expression], Expression]) -> Expression:
    if isinstance(e, Var):
        return visit(e)
    if isinstance(e, Ctr):
        return visit(Ctr(e.name, tuple(_rewrite(a, visit) for a in e.args)))
    return visit(FCall(e.name, tuple(_rewrite(a, visit) for a in e.args)))


def _rewrite_def(d: FunDef, visit: Callable[[Expression], Expression]) -> FunDef:
    if isinstance(d, Ordinary):
        return Ordinary(d.name, d.params, _rewrite(d.body, visit))
    return Matching(
        d.name,
        tuple(
            Clause(c.pattern, c.params, _rewrite(c.body, visit)) for c in d.clauses
        ),
    )


def _def_bodies(d: FunDef) -> tuple[Expression, ...]:
    if isinstance(d, Ordinary):
        return (d.body,)
    return tuple(c.body for c in d.clauses)


def _call_counts(defs: list[FunDef], root: Expression) -> dict[str, int]:
    counts: dict[str, int] = {}
    for e in [root, *(b for d in defs for b in _def_bodies(d))]:
        for sub in subterms(e):
            if isinstance(sub, FCall):
                counts[sub.name] = counts.get(sub.name, 0) + 1
    return counts


def _inline_once(defs: list[FunDef], root: Expression) -> Optional[Expression]:
    """Inline or prune one single-use ordinary definition; returns the new
    root if anything changed.  A parameter is inlined when its argument is a
    variable or when it occurs at most once in the body; a definition whose
    parameters all go away is substituted at its call site and dropped."""
    counts = _call_counts(defs, root)
    for i, d in enumerate(defs):
        if not isinstance(d, Ordinary) or counts.get(d.name, 0) != 1:
            continue
        if any(
            isinstance(s, FCall) and s.name == d.name for s in subterms(d.body)
        ):
            continue
        site = next(
            s
            for e in [root, *(b for dd in defs for b in _def_bodies(dd))]
            for s in subterms(e)
            if isinstance(s, FCall) and s.name == d.name
        )
        occurrences = {p: var_occurrences(d.body, p) for p in d.params}
        inlined = {
            p: a
            for p, a in zip(d.params, site.args)
            if isinstance(a, Var) or occurrences[p] <= 1
        }
        if len(inlined) < len(d.params) and not inlined:
            continue
        if len(inlined) == len(d.params):
            replacement = substitute(d.body, inlined)

            def visit(e: Expression) -> Expression:
                if isinstance(e, FCall) and e.name == d.name:
                    return replacement
                return e

            del defs[i]
        else:
            kept = tuple(p for p in d.params if p not in inlined)
            defs[i] = Ordinary(d.name, kept, substitute(d.body, inlined))

            def visit(e: Expression) -> Expression:
                if isinstance(e, FCall) and e.name == d.name:
                    args = tuple(
                        a for p, a in zip(d.params, e.args) if p not in inlined
                    )
                    return FCall(d.name, args)
                return e

        defs[:] = [_rewrite_def(dd, visit) for dd in defs]
        return _rewrite(root, visit)
    return None


def _canonical_expr(
    e: Expression,
    var_map: dict[str, str],
    name_map: Callable[[str], str],
) -> str:
    if isinstance(e, Var):
        return var_map.get(e.name, e.name)
    args = ", ".join(_canonical_expr(a, var_map, name_map) for a in e.args)
    head = e.name if isinstance(e, Ctr) else name_map(e.name)
    return f"{head}({args})"


def _canonical_def(d: FunDef, name_map: Callable[[str], str]) -> str:
    if isinstance(d, Ordinary):
        var_map = {p: f"v{i}" for i, p in enumerate(d.params)}
        body = _canonical_expr(d.body, var_map, name_map)
        return f"ordinary/{len(d.params)} {body}"
    lines = []
    for c in sorted(d.clauses, key=lambda c: c.pattern.ctr):
        var_map = {
            v: f"v{i}" for i, v in enumerate(c.pattern.vars + c.params)
        }
        body = _canonical_expr(c.body, var_map, name_map)
        lines.append(f"{c.pattern.ctr}/{len(c.pattern.vars)} {body}")
    return f"matching/{len(d.clauses[0].params)} " + " | ".join(lines)


def _dedup(defs: list[FunDef], root: Expression) -> Optional[Expression]:
    """Merge definitions equal up to renaming of bound variables and
    consistent renaming of generated definitions; returns the new root if
    anything merged.  Runs partition refinement so mutually recursive
    families merge as a whole."""
    names = [d.name for d in defs]
    class_of = {n: 0 for n in names}
    previous: Optional[list[list[str]]] = None
    while True:
        # The zero-padded class prefix keeps the sort order aligned with the
        # class numbering, and termination is decided on the partition
        # itself: since each round only ever refines it, a repeat means a
        # fixed point even if the numbering of classes still moves around.
        keys = {
            d.name: f"{class_of[d.name]:06d}|"
            + _canonical_def(d, lambda n: f"@{class_of[n]}" if n in class_of else n)
            for d in defs
        }
        grouped: dict[str, list[str]] = {}
        for n in names:
            grouped.setdefault(keys[n], []).append(n)
        partition = sorted(grouped.values())
        if partition == previous:
            break
        previous = partition
        class_of = {}
        for cls, (_, members) in enumerate(sorted(grouped.items())):
            for n in members:
                class_of[n] = cls
    renames: dict[str, str] = {}
    by_class: dict[int, str] = {}
    for n in names:
        keeper = by_class.setdefault(class_of[n], n)
        if keeper != n:
            renames[n] = keeper
    if not renames:
        return None

    def visit(e: Expression) -> Expression:
        if isinstance(e, FCall) and e.name in renames:
            return FCall(renames[e.name], e.args)
        return e

    defs[:] = [_rewrite_def(d, visit) for d in defs if d.name not in renames]
    return _rewrite(root, visit)


def _sweep(defs: list[FunDef], root: Expression) -> bool:
    """Drop definitions unreachable from the entry expression."""
    by_name = {d.name: d for d in defs}
    reachable: set[str] = set()
    queue = [root]
    while queue:
        for sub in subterms(queue.pop()):
            if isinstance(sub, FCall) and sub.name not in reachable:
                reachable.add(sub.name)
                queue.extend(_def_bodies(by_name[sub.name]))
    if len(reachable) == len(defs):
        return False
    defs[:] = [d for d in defs if d.name in reachable]
    return True


def cleanup(program: Program, root: Expression) -> tuple[Program, Expression]:
    """Simplify a lifted residual program; idempotent and size non-increasing."""
    defs = list(program.defs)
    changed = True
    while changed:
        changed = False
        while (new_root := _inline_once(defs, root)) is not None:
            root, changed = new_root, True
        if (new_root := _dedup(defs, root)) is not None:
            root, changed = new_root, True
        if _sweep(defs, root):
            changed = True
    return Program(defs), root


def residualize(graph: ConfGraph) -> Residual:
    """Extract, lift and clean the residual program of a process graph."""
    root_ext, target_defs = graph_to_ext(graph)
    program, root = lift_case_let(root_ext, target_defs)
    program, root = cleanup(program, root)
    return Residual(program, root)


# ---------------------------------------------------------------------------
# Canonical form, for comparing programs up to renaming
# ---------------------------------------------------------------------------


def canonical_text(program: Program, root: Expression) -> str:
    """A canonical rendering invariant under renaming of definitions and
    bound variables: definitions are numbered in first-encounter order from
    the entry expression, bound variables positionally, clauses sorted by
    constructor.  Free variables of the entry expression keep their names."""
    order: list[str] = []
    seen: set[str] = set()

    def note(e: Expression) -> None:
        for sub in subterms(e):
            if isinstance(sub, FCall) and sub.name in program and sub.name not in seen:
                seen.add(sub.name)
                order.append(sub.name)

    note(root)
    i = 0
    while i < len(order):
        d = program.lookup(order[i])
        if isinstance(d, Ordinary):
            note(d.body)
        else:
            for c in sorted(d.clauses, key=lambda c: c.pattern.ctr):
                note(c.body)
        i += 1
    name_map = {n: f"F{i}" for i, n in enumerate(order)}
    lines = [
        name_map[n] + " = " + _canonical_def(program.lookup(n), lambda m: name_map.get(m, m))
        for n in order
    ]
    lines.append("expression: " + _canonical_expr(root, {}, lambda m: name_map.get(m, m)))
    return "\n".join(lines)


def alpha_equivalent(
    a: tuple[Program, Expression], b: tuple[Program, Expression]
) -> bool:
    """Whether two programs with entry expressions are equal up to renaming."""
    return canonical_text(*a) == canonical_text(*b)
