"""Object-language AST and the term-level operations everything else builds on.

The language is first-order: expressions are variables, constructor
applications, and function calls; programs are ordinary definitions
``f(x1, ..., xn) = e`` plus pattern-matching definitions given clause by
clause ``g(C(x1, ..., xm), y1, ..., yn) = e`` with flat, non-overlapping
patterns.  Constructor names start with an uppercase letter, variable and
function names with a lowercase letter or underscore.

Besides the AST this module provides simultaneous substitution, free-variable
collection, renaming detection (``match_renaming``), the homeomorphic
embedding relation (``embeds``), and a deterministic fresh-name supply.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union


class LangError(Exception):
    """An ill-formed program or expression."""


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Ctr:
    name: str
    args: tuple["Expression", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class FCall:
    name: str
    args: tuple["Expression", ...] = ()

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.args))})"


Expression = Union[Var, Ctr, FCall]


def is_constructor_name(name: str) -> bool:
    return name[:1].isupper()


# ---------------------------------------------------------------------------
# Patterns, definitions, programs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """A flat constructor pattern ``C(x1, ..., xn)`` with distinct variables."""

    ctr: str
    vars: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.vars)) != len(self.vars):
            raise LangError(f"pattern {self.ctr} repeats a variable: {self.vars}")

    def as_expression(self) -> Ctr:
        return Ctr(self.ctr, tuple(Var(v) for v in self.vars))

    def __str__(self) -> str:
        if not self.vars:
            return self.ctr
        return f"{self.ctr}({', '.join(self.vars)})"


@dataclass(frozen=True)
class Clause:
    pattern: Pattern
    params: tuple[str, ...]
    body: Expression


@dataclass(frozen=True)
class Ordinary:
    name: str
    params: tuple[str, ...]
    body: Expression


@dataclass(frozen=True)
class Matching:
    name: str
    clauses: tuple[Clause, ...]

    @property
    def arity(self) -> int:
        return 1 + len(self.clauses[0].params)

    def clause_for(self, ctr: str) -> Optional[Clause]:
        for clause in self.clauses:
            if clause.pattern.ctr == ctr:
                return clause
        return None


FunDef = Union[Ordinary, Matching]


class Program:
    """A validated collection of definitions with name lookup.

    Validation: unique definition names; per clause, distinct binders and no
    free variables in the body beyond them; clauses of one definition have
    pairwise distinct constructor heads and equally many extra parameters;
    every call in any body resolves to a definition of matching arity.
    Pattern exhaustiveness is not checked (no datatype declarations exist);
    a missing clause surfaces later as an evaluation or driving error.
    """

    def __init__(self, defs: Iterable[FunDef]):
        self.defs: tuple[FunDef, ...] = tuple(defs)
        self._by_name: dict[str, FunDef] = {}
        for d in self.defs:
            if d.name in self._by_name:
                raise LangError(f"duplicate definition of {d.name}")
            if is_constructor_name(d.name):
                raise LangError(f"function name {d.name} must start lowercase")
            self._by_name[d.name] = d
        for d in self.defs:
            self._validate_def(d)

    def _validate_def(self, d: FunDef) -> None:
        if isinstance(d, Ordinary):
            if len(set(d.params)) != len(d.params):
                raise LangError(f"{d.name}: repeated parameter")
            self._validate_body(d.name, d.body, set(d.params))
            return
        if not d.clauses:
            raise LangError(f"{d.name}: no clauses")
        heads = [c.pattern.ctr for c in d.clauses]
        if len(set(heads)) != len(heads):
            raise LangError(f"{d.name}: overlapping clauses on {heads}")
        extras = {len(c.params) for c in d.clauses}
        if len(extras) != 1:
            raise LangError(f"{d.name}: clauses disagree on parameter count")
        for c in d.clauses:
            binders = c.pattern.vars + c.params
            if len(set(binders)) != len(binders):
                raise LangError(f"{d.name}: repeated binder in clause {c.pattern}")
            self._validate_body(d.name, c.body, set(binders))

    def _validate_body(self, fname: str, body: Expression, bound: set[str]) -> None:
        for sub in subterms(body):
            if isinstance(sub, Var) and sub.name not in bound:
                raise LangError(f"{fname}: free variable {sub.name} in body")
            if isinstance(sub, FCall):
                target = self._by_name.get(sub.name)
                if target is None:
                    raise LangError(f"{fname}: call to unknown function {sub.name}")
                arity = (
                    len(target.params)
                    if isinstance(target, Ordinary)
                    else target.arity
                )
                if len(sub.args) != arity:
                    raise LangError(
                        f"{fname}: {sub.name} called with {len(sub.args)} "
                        f"arguments, expected {arity}"
                    )

    def lookup(self, name: str) -> FunDef:
        try:
            return self._by_name[name]
        except KeyError:
            raise LangError(f"unknown function {name}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Program) and self.defs == other.defs

    def __hash__(self) -> int:
        return hash(self.defs)

    def __str__(self) -> str:
        return "\n".join(print_def(d) for d in self.defs)


def print_def(d: FunDef) -> str:
    if isinstance(d, Ordinary):
        args = ", ".join(d.params)
        return f"{d.name}({args}) = {d.body};"
    lines = []
    for c in d.clauses:
        head_args = ", ".join([str(c.pattern), *c.params])
        lines.append(f"{d.name}({head_args}) = {c.body};")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Term operations
# ---------------------------------------------------------------------------


def subterms(e: Expression) -> Iterator[Expression]:
    """Pre-order traversal of an expression, the expression itself first."""
    yield e
    if isinstance(e, (Ctr, FCall)):
        for a in e.args:
            yield from subterms(a)


def substitute(e: Expression, mapping: Mapping[str, Expression]) -> Expression:
    """Simultaneous substitution of expressions for variables."""
    if not mapping:
        return e
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    args = tuple(substitute(a, mapping) for a in e.args)
    return type(e)(e.name, args)


def free_vars(e: Expression) -> tuple[str, ...]:
    """Variables of an expression in order of first occurrence."""
    seen: dict[str, None] = {}
    for sub in subterms(e):
        if isinstance(sub, Var):
            seen.setdefault(sub.name)
    return tuple(seen)


def var_occurrences(e: Expression, name: str) -> int:
    return sum(
        1 for sub in subterms(e) if isinstance(sub, Var) and sub.name == name
    )


def expression_size(e: Expression) -> int:
    return sum(1 for _ in subterms(e))


def _match_vars(
    upper: Expression, lower: Expression, injective: bool
) -> Optional[dict[str, str]]:
    mapping: dict[str, str] = {}
    taken: set[str] = set()

    def go(a: Expression, b: Expression) -> bool:
        if isinstance(a, Var):
            if not isinstance(b, Var):
                return False
            bound = mapping.get(a.name)
            if bound is None:
                if injective and b.name in taken:
                    return False
                mapping[a.name] = b.name
                taken.add(b.name)
                return True
            return bound == b.name
        if type(a) is not type(b) or a.name != b.name or len(a.args) != len(b.args):
            return False
        return all(go(x, y) for x, y in zip(a.args, b.args))

    return mapping if go(upper, lower) else None


def match_renaming(upper: Expression, lower: Expression) -> Optional[dict[str, str]]:
    """A functional, injective variable renaming rho with upper[rho] == lower.

    Structure must match exactly: only variables of ``upper`` may be remapped,
    and no two of them to the same variable of ``lower``.  Returns None when
    no such renaming exists.
    """
    return _match_vars(upper, lower, injective=True)


def match_variable_mapping(
    upper: Expression, lower: Expression
) -> Optional[dict[str, str]]:
    """A functional variable mapping rho with upper[rho] == lower.

    Like ``match_renaming`` but the mapping need not be injective: two
    variables of ``upper`` may map to the same variable of ``lower``, so
    ``lower`` may be an instance of ``upper`` in which variables coincide.
    This is the relation used for folding: running ``lower`` is a special
    case of running ``upper``, so a back edge with repeated arguments is
    sound.
    """
    return _match_vars(upper, lower, injective=False)


def rename(e: Expression, renaming: Mapping[str, str]) -> Expression:
    return substitute(e, {v: Var(w) for v, w in renaming.items()})


def embeds(smaller: Expression, larger: Expression) -> bool:
    """Homeomorphic embedding with all variables in one equivalence class.

    Coupling: same head symbol and arity with pairwise embedded arguments.
    Diving: the smaller term embeds in some argument of the larger.
    Any variable embeds in any variable.
    """
    if isinstance(smaller, Var) and isinstance(larger, Var):
        return True
    if (
        type(smaller) is type(larger)
        and not isinstance(smaller, Var)
        and smaller.name == larger.name
        and len(smaller.args) == len(larger.args)
        and all(embeds(a, b) for a, b in zip(smaller.args, larger.args))
    ):
        return True
    if isinstance(larger, (Ctr, FCall)):
        return any(embeds(smaller, a) for a in larger.args)
    return False


# ---------------------------------------------------------------------------
# Fresh names
# ---------------------------------------------------------------------------


class NameSupply:
    """Deterministic fresh variable names: hint ``x`` yields x0, x1, ...

    One counter per hint stem (trailing digits are stripped from hints), all
    produced names are recorded so no name is ever produced twice, and the
    supply is seeded with every identifier of the program and the root
    expression so fresh names cannot capture existing ones.
    """

    def __init__(self, forbidden: Iterable[str] = ()):
        self._forbidden: set[str] = set(forbidden)
        self._counters: dict[str, int] = {}

    def fresh(self, hint: str = "v") -> str:
        stem = hint.rstrip("0123456789") or "v"
        n = self._counters.get(stem, 0)
        while f"{stem}{n}" in self._forbidden:
            n += 1
        name = f"{stem}{n}"
        self._counters[stem] = n + 1
        self._forbidden.add(name)
        return name


def expression_identifiers(e: Expression) -> set[str]:
    return {sub.name for sub in subterms(e)}


def program_identifiers(program: Program) -> set[str]:
    names: set[str] = set()
    for d in program.defs:
        names.add(d.name)
        if isinstance(d, Ordinary):
            names.update(d.params)
            names.update(expression_identifiers(d.body))
        else:
            for c in d.clauses:
                names.add(c.pattern.ctr)
                names.update(c.pattern.vars)
                names.update(c.params)
                names.update(expression_identifiers(c.body))
    return names


def supply_for(program: Program, *exprs: Expression) -> NameSupply:
    forbidden = program_identifiers(program)
    for e in exprs:
        forbidden |= expression_identifiers(e)
    return NameSupply(forbidden)
