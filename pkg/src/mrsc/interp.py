"""A call-by-name interpreter for closed expressions.

Evaluation substitutes argument expressions unevaluated into ordinary
definitions; a pattern-matching call forces its first argument only to a head
constructor before selecting a clause.  Results are fully normalized values
(constructor terms).  Fuel counts function unfoldings; running out raises
``OutOfFuel``, while a pattern-matching call with no matching clause raises
``Stuck``.  Both are also available as non-raising outcomes via ``observe``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .lang import (
    Ctr,
    Expression,
    FCall,
    LangError,
    Ordinary,
    Program,
    Var,
    substitute,
)

DEFAULT_FUEL = 100_000


class Stuck(Exception):
    """A pattern-matching call had no clause for the scrutinee's constructor."""


class OutOfFuel(Exception):
    """The unfolding budget was exhausted before a value was reached."""


@dataclass
class EvalStats:
    unfoldings: int = 0


@dataclass(frozen=True)
class Outcome:
    """The observable result of an evaluation: a value, stuck, or a timeout."""

    kind: str  # "value" | "stuck" | "timeout"
    value: Optional[Expression] = None

    def __str__(self) -> str:
        if self.kind == "value":
            return str(self.value)
        return self.kind


class _Evaluator:
    def __init__(self, program: Program, fuel: int, stats: EvalStats):
        self.program = program
        self.fuel = fuel
        self.stats = stats

    def whnf(self, e: Expression) -> Ctr:
        while True:
            if isinstance(e, Var):
                raise LangError(f"cannot evaluate open expression: free {e.name}")
            if isinstance(e, Ctr):
                return e
            e = self.unfold(e)

    def unfold(self, call: FCall) -> Expression:
        if self.stats.unfoldings >= self.fuel:
            raise OutOfFuel()
        self.stats.unfoldings += 1
        d = self.program.lookup(call.name)
        if isinstance(d, Ordinary):
            return substitute(d.body, dict(zip(d.params, call.args)))
        scrutinee = self.whnf(call.args[0])
        clause = d.clause_for(scrutinee.name)
        if clause is None:
            raise Stuck(f"{call.name} has no clause for {scrutinee.name}")
        if len(clause.pattern.vars) != len(scrutinee.args):
            raise LangError(
                f"{call.name}: pattern {clause.pattern} does not fit {scrutinee.name}"
                f"/{len(scrutinee.args)}"
            )
        mapping = dict(zip(clause.pattern.vars, scrutinee.args))
        mapping.update(zip(clause.params, call.args[1:]))
        return substitute(clause.body, mapping)

    def normalize(self, e: Expression) -> Expression:
        head = self.whnf(e)
        return Ctr(head.name, tuple(self.normalize(a) for a in head.args))


def evaluate(
    program: Program,
    e: Expression,
    fuel: int = DEFAULT_FUEL,
    stats: Optional[EvalStats] = None,
) -> Expression:
    """Normalize a closed expression to a constructor value."""
    return _Evaluator(program, fuel, stats or EvalStats()).normalize(e)


def observe(
    program: Program,
    e: Expression,
    fuel: int = DEFAULT_FUEL,
    stats: Optional[EvalStats] = None,
) -> Outcome:
    """Like ``evaluate`` but reporting stuck and timeout as outcomes."""
    try:
        return Outcome("value", evaluate(program, e, fuel, stats))
    except Stuck:
        return Outcome("stuck")
    except OutOfFuel:
        return Outcome("timeout")


# ---------------------------------------------------------------------------
# Random closed values for testing
# ---------------------------------------------------------------------------


def signature_of(program: Program, *exprs: Expression) -> dict[str, int]:
    """Constructor names with arities appearing in the program and expressions."""
    sig: dict[str, int] = {}

    def note(name: str, arity: int) -> None:
        known = sig.get(name)
        if known is not None and known != arity:
            raise LangError(f"constructor {name} used with arities {known} and {arity}")
        sig[name] = arity

    def walk(e: Expression) -> None:
        if isinstance(e, Ctr):
            note(e.name, len(e.args))
        if isinstance(e, (Ctr, FCall)):
            for a in e.args:
                walk(a)

    for d in program.defs:
        if isinstance(d, Ordinary):
            walk(d.body)
        else:
            for c in d.clauses:
                note(c.pattern.ctr, len(c.pattern.vars))
                walk(c.body)
    for e in exprs:
        walk(e)
    return sig


def random_value(signature: dict[str, int], size_bound: int, seed: int) -> Ctr:
    """A deterministic random constructor value of size at most ``size_bound``.

    The signature must contain at least one nullary constructor, and the
    bound must be positive, otherwise no value can be produced.
    """
    if size_bound <= 0:
        raise LangError("size bound must be positive")
    nullary = sorted(name for name, arity in signature.items() if arity == 0)
    if not nullary:
        raise LangError("signature has no nullary constructor")
    rng = random.Random(seed)
    names = sorted(signature)

    def build(budget: int) -> tuple[Ctr, int]:
        choices = [n for n in names if signature[n] + 1 <= budget] or nullary
        name = rng.choice(choices)
        used = 1
        args = []
        for _ in range(signature[name]):
            remaining_slots = signature[name] - len(args)
            sub, spent = build(max(1, (budget - used) - (remaining_slots - 1)))
            args.append(sub)
            used += spent
        return Ctr(name, tuple(args)), used

    value, _ = build(size_bound)
    return value
