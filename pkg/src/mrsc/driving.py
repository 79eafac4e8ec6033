"""Single-result and multi-result driving steps.

``drive_step`` performs one step of classical driving: unfold a call, or
split on the unknown scrutinee of a pattern-matching call, propagating the
matched pattern into each branch.  ``multi_drive_steps`` returns the list of
alternatives explored by the multi-result supercompiler: for every call it
offers, ahead of the driving alternative, a generalization that binds the
call's argument expressions to fresh variables, which is what lets the
supercompiler avoid duplicating work when an argument is about to be copied.

A pattern-matching call whose scrutinee is itself a call is driven by driving
the inner call and splicing every resulting alternative back into the outer
call.  When the inner step is a case split, the outer context mentions the
scrutinee variable, and two splice policies exist: substituting the branch
pattern into the spliced context (the default) or leaving the context
untouched.  The policy is configurable because it changes which foldings
become possible later.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .lang import (
    Clause,
    Ctr,
    Expression,
    FCall,
    Matching,
    NameSupply,
    Ordinary,
    Pattern,
    Program,
    Var,
    substitute,
)


class DriveError(Exception):
    """Driving hit a pattern-matching call with no clause for a constructor."""


# ---------------------------------------------------------------------------
# Step results
# ---------------------------------------------------------------------------

Branch = tuple[Pattern, Expression]
Binding = tuple[str, Expression]


@dataclass(frozen=True)
class DSRNone:
    pass


@dataclass(frozen=True)
class DSRCon:
    name: str
    args: tuple[Expression, ...]


@dataclass(frozen=True)
class DSRUnfold:
    expr: Expression


@dataclass(frozen=True)
class DSRCases:
    scrutinee: str
    branches: tuple[Branch, ...]


DriveStepResult = Union[DSRNone, DSRCon, DSRUnfold, DSRCases]


@dataclass(frozen=True)
class MDSRLeaf:
    expr: Var


@dataclass(frozen=True)
class MDSRCon:
    name: str
    args: tuple[Expression, ...]


@dataclass(frozen=True)
class MDSRUnfold:
    expr: Expression


@dataclass(frozen=True)
class MDSRCases:
    scrutinee: str
    branches: tuple[Branch, ...]


@dataclass(frozen=True)
class MDSRLet:
    bindings: tuple[Binding, ...]
    body: Expression


MultiDriveStepResult = Union[MDSRLeaf, MDSRCon, MDSRUnfold, MDSRCases, MDSRLet]


def mdsr_sub_exps(result: MultiDriveStepResult) -> tuple[Expression, ...]:
    """The child configurations of an alternative; for a generalization the
    body comes first, then the bound expressions in binding order."""
    if isinstance(result, MDSRLeaf):
        return ()
    if isinstance(result, MDSRCon):
        return result.args
    if isinstance(result, MDSRUnfold):
        return (result.expr,)
    if isinstance(result, MDSRCases):
        return tuple(body for _, body in result.branches)
    return (result.body, *(expr for _, expr in result.bindings))


# ---------------------------------------------------------------------------
# Driving
# ---------------------------------------------------------------------------


def propagate(
    scrutinee: str,
    clause: Clause,
    extras: tuple[Expression, ...],
    supply: NameSupply,
) -> Branch:
    """Instantiate a clause for a variable scrutinee.

    Pattern variables are freshened, the extra arguments are substituted for
    the clause parameters, and finally the pattern itself is substituted for
    the scrutinee variable so the positive information also reaches any
    occurrence of it inside the extras.
    """
    fresh = tuple(supply.fresh(v) for v in clause.pattern.vars)
    pattern = Pattern(clause.pattern.ctr, fresh)
    mapping: dict[str, Expression] = {
        old: Var(new) for old, new in zip(clause.pattern.vars, fresh)
    }
    mapping.update(zip(clause.params, extras))
    body = substitute(clause.body, mapping)
    body = substitute(body, {scrutinee: pattern.as_expression()})
    return pattern, body


def _instantiate_known(
    d: Matching, call_name: str, scrutinee: Ctr, extras: tuple[Expression, ...]
) -> tuple[Clause, dict[str, Expression]]:
    clause = d.clause_for(scrutinee.name)
    if clause is None:
        raise DriveError(f"{call_name} has no clause for {scrutinee.name}")
    if len(clause.pattern.vars) != len(scrutinee.args):
        raise DriveError(
            f"{call_name}: pattern {clause.pattern} does not fit "
            f"{scrutinee.name}/{len(scrutinee.args)}"
        )
    mapping: dict[str, Expression] = dict(zip(clause.pattern.vars, scrutinee.args))
    mapping.update(zip(clause.params, extras))
    return clause, mapping


def _splice(ctx_name: str, extras: tuple[Expression, ...], hole: Expression) -> FCall:
    return FCall(ctx_name, (hole, *extras))


def dsr_map(
    ctx_name: str,
    extras: tuple[Expression, ...],
    result: DriveStepResult,
    propagate_spliced: bool = True,
) -> DriveStepResult:
    """Splice a driving step of an inner call into ``ctx_name(hole, *extras)``."""
    if isinstance(result, DSRUnfold):
        return DSRUnfold(_splice(ctx_name, extras, result.expr))
    if isinstance(result, DSRCases):
        branches = []
        for pattern, body in result.branches:
            spliced: Expression = _splice(ctx_name, extras, body)
            if propagate_spliced:
                spliced = substitute(
                    spliced, {result.scrutinee: pattern.as_expression()}
                )
            branches.append((pattern, spliced))
        return DSRCases(result.scrutinee, tuple(branches))
    raise DriveError(f"cannot splice a {type(result).__name__} into a context")


def drive_step(
    program: Program,
    e: Expression,
    supply: NameSupply,
    propagate_spliced: bool = True,
) -> DriveStepResult:
    if isinstance(e, Var):
        return DSRNone()
    if isinstance(e, Ctr):
        return DSRCon(e.name, e.args)
    d = program.lookup(e.name)
    if isinstance(d, Ordinary):
        return DSRUnfold(substitute(d.body, dict(zip(d.params, e.args))))
    scrutinee, extras = e.args[0], e.args[1:]
    if isinstance(scrutinee, Ctr):
        clause, mapping = _instantiate_known(d, e.name, scrutinee, extras)
        return DSRUnfold(substitute(clause.body, mapping))
    if isinstance(scrutinee, Var):
        branches = tuple(
            propagate(scrutinee.name, c, extras, supply) for c in d.clauses
        )
        return DSRCases(scrutinee.name, branches)
    inner = drive_step(program, scrutinee, supply, propagate_spliced)
    return dsr_map(e.name, extras, inner, propagate_spliced)


# ---------------------------------------------------------------------------
# Multi-result driving
# ---------------------------------------------------------------------------


def mdsr_map(
    ctx_name: str,
    extras: tuple[Expression, ...],
    result: MultiDriveStepResult,
    propagate_spliced: bool = True,
) -> MultiDriveStepResult:
    if isinstance(result, MDSRUnfold):
        return MDSRUnfold(_splice(ctx_name, extras, result.expr))
    if isinstance(result, MDSRLet):
        return MDSRLet(result.bindings, _splice(ctx_name, extras, result.body))
    if isinstance(result, MDSRCases):
        branches = []
        for pattern, body in result.branches:
            spliced: Expression = _splice(ctx_name, extras, body)
            if propagate_spliced:
                spliced = substitute(
                    spliced, {result.scrutinee: pattern.as_expression()}
                )
            branches.append((pattern, spliced))
        return MDSRCases(result.scrutinee, tuple(branches))
    raise DriveError(f"cannot splice a {type(result).__name__} into a context")


def _generalize_call(
    hints: tuple[str, ...],
    args: tuple[Expression, ...],
    body: Expression,
    body_vars: tuple[str, ...],
    supply: NameSupply,
) -> MDSRLet:
    """Bind every argument to a fresh variable and rebuild the body over them."""
    fresh = tuple(supply.fresh(h) for h in hints)
    bindings = tuple(zip(fresh, args))
    rebound = substitute(body, {v: Var(w) for v, w in zip(body_vars, fresh)})
    return MDSRLet(bindings, rebound)


def multi_drive_steps(
    program: Program,
    e: Expression,
    supply: NameSupply,
    propagate_spliced: bool = True,
) -> list[MultiDriveStepResult]:
    """All alternatives for one supercompilation step, generalizations first.

    The last alternative always corresponds to the plain driving step.  A
    generalization that would bind nothing (a nullary call) is omitted.
    """
    if isinstance(e, Var):
        return [MDSRLeaf(e)]
    if isinstance(e, Ctr):
        return [MDSRCon(e.name, e.args)]
    d = program.lookup(e.name)
    if isinstance(d, Ordinary):
        drive = MDSRUnfold(substitute(d.body, dict(zip(d.params, e.args))))
        if not e.args:
            return [drive]
        gen = _generalize_call(d.params, e.args, d.body, d.params, supply)
        return [gen, drive]
    scrutinee, extras = e.args[0], e.args[1:]
    if isinstance(scrutinee, Ctr):
        clause, mapping = _instantiate_known(d, e.name, scrutinee, extras)
        drive = MDSRUnfold(substitute(clause.body, mapping))
        bound_vars = clause.pattern.vars + clause.params
        bound_args = scrutinee.args + extras
        if not bound_args:
            return [drive]
        gen = _generalize_call(bound_vars, bound_args, clause.body, bound_vars, supply)
        return [gen, drive]
    if isinstance(scrutinee, Var):
        branches = tuple(
            propagate(scrutinee.name, c, extras, supply) for c in d.clauses
        )
        return [MDSRCases(scrutinee.name, branches)]
    # Scrutinee is an inner call: generalize the whole call, then splice every
    # alternative of driving the inner call into the outer context.
    fresh = tuple(supply.fresh("x") for _ in e.args)
    gen = MDSRLet(
        tuple(zip(fresh, e.args)), FCall(e.name, tuple(Var(v) for v in fresh))
    )
    inner = multi_drive_steps(program, scrutinee, supply, propagate_spliced)
    spliced = [mdsr_map(e.name, extras, r, propagate_spliced) for r in inner]
    return [gen, *spliced]
