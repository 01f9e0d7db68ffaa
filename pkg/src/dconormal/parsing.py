"""Text formats: polynomial expressions, ``.var``/``.zvar`` files, scalars.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*        # "/" only by constants
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | NAME | "(" expr ")"

A variety file starts with a ``vars:`` header naming the variables; an
optional ``n:`` line before it states the ambient dimension, which callers
check (for ``.var`` files it is the variable count, for ``.zvar`` files the
number of leading z-variables).  Each further non-blank line holds one
polynomial.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .exactpoly import Polynomial, VariableSet, to_rational

__all__ = ["ParseError", "VarietyText", "parse_polynomial", "parse_variety_text",
           "parse_scalar", "parse_point"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str, line: int):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("int", m.group(1), col))
        elif m.group(2):
            out.append(("name", m.group(2), col))
        else:
            out.append(("op", m.group(3), col))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, vs: VariableSet, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.vs = vs
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.error("division only by nonzero constants", op)
                p = p / q.constant_value()
        return p

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if t[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] in ("^", "**"):
            self.take()
            e = self.take()
            if e[0] != "int":
                self.error("exponent must be a non-negative integer", e)
            return base ** int(e[1])
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return Polynomial.constant(int(t[1]), self.vs)
        if t[0] == "name":
            if t[1] not in self.vs:
                self.error(f"unknown variable {t[1]!r}", t)
            return Polynomial.var(t[1], self.vs)
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close)
            return p
        self.error(f"unexpected token {t[1]!r}" if t[1] else "unexpected end of input", t)


def parse_polynomial(text: str, vs: VariableSet, line: int = 1) -> Polynomial:
    return _Parser(text, vs, line).parse()


@dataclass(frozen=True)
class VarietyText:
    vars: VariableSet
    polynomials: tuple
    n: int | None = None  # the declared ambient dimension, if any


def parse_variety_text(text: str) -> VarietyText:
    """Parse a ``.var``/``.zvar`` document into its ring and polynomials."""
    names = None
    n_decl = None
    polys = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        stripped = body.strip()
        if names is None:
            key, sep, rest = stripped.partition(":")
            if sep and key.strip() == "n":
                try:
                    n_decl = int(rest)
                except ValueError:
                    raise ParseError("n: expects an integer", lineno, 1) from None
                continue
            if not sep or key.strip() != "vars":
                raise ParseError("expected a 'vars:' header", lineno, 1)
            names = rest.replace(",", " ").split()
            if not names:
                raise ParseError("no variables declared", lineno, len(body))
            try:
                vs = VariableSet(tuple(names))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            continue
        polys.append(parse_polynomial(body, vs, lineno))
    if names is None:
        raise ParseError("missing 'vars:' header", 1, 1)
    return VarietyText(vs, tuple(polys), n_decl)


_GAUSS = VariableSet(("i",))


def parse_scalar(text) -> tuple[mpq, mpq]:
    """Gaussian rational ``re + im*i`` from text such as '1/2', '-i', '2+3*i'."""
    if not isinstance(text, str):
        if isinstance(text, tuple):
            return to_rational(text[0]), to_rational(text[1])
        return to_rational(text), mpq(0)
    s = re.sub(r"(\d)\s*i\b", r"\1*i", text.strip())
    p = parse_polynomial(s, _GAUSS)
    re_part, im_part = mpq(0), mpq(0)
    for (k,), c in p.terms.items():
        if k % 4 == 0:
            re_part += c
        elif k % 4 == 1:
            im_part += c
        elif k % 4 == 2:
            re_part -= c
        else:
            im_part -= c
    return re_part, im_part


def parse_point(text: str) -> list[tuple[mpq, mpq]]:
    parts = [p for p in text.split(",")]
    if not all(p.strip() for p in parts):
        raise ParseError("empty coordinate in point", 1, 1)
    return [parse_scalar(p) for p in parts]
