"""Concrete syntax for programs and expressions.

Definitions are written ``name(arg, ...) = expression ;`` where each
argument of a pattern-matching definition's first position is a flat pattern
``C(x1, ..., xn)`` or a bare constructor ``C``.  Whitespace is insignificant,
``--`` starts a line comment, and a file may end with an optional directive
``expression: e`` naming a root expression.  Trailing commas inside argument
lists are tolerated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

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
    is_constructor_name,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # "name", "punct", "end"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
      (?P<ws> \s+ | --[^\n]* )
    | (?P<name> [A-Za-z_][A-Za-z_0-9]* )
    | (?P<punct> [(),=;:] )
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        if m.lastgroup != "ws":
            tokens.append(
                _Token(m.lastgroup, m.group(), line, m.start() - line_start + 1)
            )
        newlines = text.count("\n", m.start(), m.end())
        if newlines:
            line += newlines
            line_start = text.rindex("\n", m.start(), m.end()) + 1
        pos = m.end()
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def fail(self, message: str) -> "ParseError":
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)

    # -- expressions --------------------------------------------------------

    def expression(self) -> Expression:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(f"expected an expression, found {tok.text!r}", tok.line, tok.column)
        if self.peek().text == "(":
            args = self.argument_list(self.expression)
            if is_constructor_name(tok.text):
                return Ctr(tok.text, args)
            return FCall(tok.text, args)
        if is_constructor_name(tok.text):
            return Ctr(tok.text)
        return Var(tok.text)

    def argument_list(self, parse_item):
        self.expect("(")
        items = []
        if self.peek().text == ")":
            self.next()
            return tuple(items)
        while True:
            items.append(parse_item())
            tok = self.next()
            if tok.text == ",":
                if self.peek().text == ")":  # tolerated trailing comma
                    self.next()
                    return tuple(items)
                continue
            if tok.text == ")":
                return tuple(items)
            raise ParseError(f"expected ',' or ')', found {tok.text!r}", tok.line, tok.column)

    # -- definitions --------------------------------------------------------

    def head_argument(self) -> Union[Pattern, str]:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(f"expected a parameter or pattern, found {tok.text!r}", tok.line, tok.column)
        if is_constructor_name(tok.text):
            if self.peek().text == "(":
                vars_ = self.argument_list(self.pattern_var)
                return Pattern(tok.text, vars_)
            return Pattern(tok.text)
        return tok.text

    def pattern_var(self) -> str:
        tok = self.next()
        if tok.kind != "name" or is_constructor_name(tok.text):
            raise ParseError(f"expected a pattern variable, found {tok.text!r}", tok.line, tok.column)
        return tok.text

    def definition_line(self) -> tuple[str, tuple, Expression]:
        tok = self.next()
        if tok.kind != "name" or is_constructor_name(tok.text):
            raise ParseError(f"expected a definition name, found {tok.text!r}", tok.line, tok.column)
        head = self.argument_list(self.head_argument)
        self.expect("=")
        body = self.expression()
        self.expect(";")
        return tok.text, head, body


def parse_expression(text: str) -> Expression:
    parser = _Parser(text)
    e = parser.expression()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)
    return e


def parse_program_text(text: str) -> tuple[Program, Optional[Expression]]:
    """Parse definitions plus an optional ``expression:`` directive."""
    parser = _Parser(text)
    lines: list[tuple[str, tuple, Expression, _Token]] = []
    root: Optional[Expression] = None
    while parser.peek().kind != "end":
        tok = parser.peek()
        if tok.text == "expression" and parser.peek(1).text == ":":
            parser.next()
            parser.next()
            root = parser.expression()
            if parser.peek().text == ";":
                parser.next()
            trailing = parser.peek()
            if trailing.kind != "end":
                raise ParseError(
                    f"unexpected input after the expression directive: {trailing.text!r}",
                    trailing.line,
                    trailing.column,
                )
            break
        where = parser.peek()
        name, head, body = parser.definition_line()
        lines.append((name, head, body, where))

    defs: list[FunDef] = []
    grouped: dict[str, list[tuple[tuple, Expression, _Token]]] = {}
    order: list[str] = []
    for name, head, body, where in lines:
        if name not in grouped:
            grouped[name] = []
            order.append(name)
        grouped[name].append((head, body, where))

    for name in order:
        entries = grouped[name]
        kinds = {isinstance(head[0], Pattern) if head else False for head, _, _ in entries}
        if len(kinds) > 1:
            where = entries[0][2]
            raise ParseError(
                f"{name} mixes pattern-matching and ordinary definition lines",
                where.line,
                where.column,
            )
        if kinds == {True}:
            clauses = []
            for head, body, where in entries:
                pattern = head[0]
                params = []
                for extra in head[1:]:
                    if isinstance(extra, Pattern):
                        raise ParseError(
                            f"{name}: only the first argument may be a pattern",
                            where.line,
                            where.column,
                        )
                    params.append(extra)
                clauses.append(Clause(pattern, tuple(params), body))
            defs.append(Matching(name, tuple(clauses)))
        else:
            if len(entries) > 1:
                where = entries[1][2]
                raise ParseError(f"{name} defined more than once", where.line, where.column)
            head, body, where = entries[0]
            for p in head:
                if isinstance(p, Pattern):
                    raise ParseError(
                        f"{name}: only the first argument may be a pattern",
                        where.line,
                        where.column,
                    )
            defs.append(Ordinary(name, tuple(head), body))

    return Program(defs), root


def parse_program(path: Union[str, Path]) -> tuple[Program, Optional[Expression]]:
    return parse_program_text(Path(path).read_text())


def print_program(program: Program, root: Optional[Expression] = None) -> str:
    text = str(program)
    if root is not None:
        text = f"{text}\nexpression: {root}" if text else f"expression: {root}"
    return text + "\n"
