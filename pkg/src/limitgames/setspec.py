"""Textual expressions for eventually periodic sets.

Grammar (whitespace insensitive)::

    expr   := term (('|' term) | ('\\' term))*     left associative
    term   := factor ('&' factor)*
    factor := atom | '(' expr ')'
    atom   := 'I' | 'O' | 'E' | 'N'
            | 'Y' '(' int ')'          argument -a with a >= 0
            | 'Q' '(' int ')'          argument -b with b >= 1
            | 'Ray' '(' int ',' int ')'    start, nonzero step (sign = direction)
            | 'Fin' '{' [int (',' int)*] '}'

``parse`` turns an expression into a canonical PeriodicSet and ``format_set``
prints any PeriodicSet as a parseable expression; the round trip is exact.
"""

from __future__ import annotations

import re

from .algebra import (
    PeriodicSet,
    all_integers,
    even_nonnegatives,
    negative_integers,
    odd_positives,
    q_set,
    y_set,
)


class SetSpecError(ValueError):
    """Raised for malformed set expressions."""


_TOKEN = re.compile(r"\s*(-?\d+|[A-Za-z]+|[(){},|&\\])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise SetSpecError(f"unexpected character at position {pos}: {text[pos]!r}")
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, expect: str | None = None) -> str:
        if self.i >= len(self.tokens):
            raise SetSpecError(f"unexpected end of expression: {self.text!r}")
        tok, at = self.tokens[self.i]
        if expect is not None and tok != expect:
            raise SetSpecError(f"expected {expect!r} at position {at}, got {tok!r}")
        self.i += 1
        return tok

    def take_int(self) -> int:
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            raise SetSpecError(f"expected an integer, got {tok!r}") from None

    def parse(self) -> PeriodicSet:
        result = self.expr()
        if self.i < len(self.tokens):
            tok, at = self.tokens[self.i]
            raise SetSpecError(f"trailing input at position {at}: {tok!r}")
        return result

    def expr(self) -> PeriodicSet:
        acc = self.term()
        while self.peek() in ("|", "\\"):
            op = self.take()
            rhs = self.term()
            acc = acc | rhs if op == "|" else acc - rhs
        return acc

    def term(self) -> PeriodicSet:
        acc = self.factor()
        while self.peek() == "&":
            self.take()
            acc = acc & self.factor()
        return acc

    def factor(self) -> PeriodicSet:
        tok = self.peek()
        if tok == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        return self.atom()

    def atom(self) -> PeriodicSet:
        tok = self.take()
        if tok == "I":
            return all_integers()
        if tok == "O":
            return odd_positives()
        if tok == "E":
            return even_nonnegatives()
        if tok == "N":
            return negative_integers()
        if tok == "Y":
            self.take("(")
            arg = self.take_int()
            self.take(")")
            if arg > 0:
                raise SetSpecError("Y argument must be <= 0")
            return y_set(-arg)
        if tok == "Q":
            self.take("(")
            arg = self.take_int()
            self.take(")")
            if arg > -1:
                raise SetSpecError("Q argument must be <= -1")
            return q_set(-arg)
        if tok == "Ray":
            self.take("(")
            start = self.take_int()
            self.take(",")
            step = self.take_int()
            self.take(")")
            if step == 0:
                raise SetSpecError("Ray step must be nonzero")
            return PeriodicSet.ray(start, step)
        if tok == "Fin":
            self.take("{")
            values: list[int] = []
            if self.peek() != "}":
                values.append(self.take_int())
                while self.peek() == ",":
                    self.take()
                    values.append(self.take_int())
            self.take("}")
            return PeriodicSet.finite(values)
        raise SetSpecError(f"unknown atom {tok!r}")


def parse(text: str) -> PeriodicSet:
    """Parse a set expression into a canonical PeriodicSet."""
    return _Parser(text).parse()


def format_set(s: PeriodicSet) -> str:
    """Print a canonical expression for ``s``; parse(format_set(s)) == s."""
    parts: list[str] = []
    for r in sorted(s.neg_residues):
        # Highest value below the window with this residue, descending ray.
        v = s.lo - 1 - ((s.lo - 1 - r) % s.neg_period)
        parts.append(f"Ray({v},{-s.neg_period})")
    if s.window:
        parts.append("Fin{" + ",".join(str(x) for x in sorted(s.window)) + "}")
    for r in sorted(s.pos_residues):
        v = s.hi + 1 + ((r - s.hi - 1) % s.pos_period)
        parts.append(f"Ray({v},{s.pos_period})")
    return " | ".join(parts) if parts else "Fin{}"
