"""Bivariate polynomials with exact rational coefficients, and their parser.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      # "/" only by a nonzero constant
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") uint)?
    atom   := number | "x" | "y" | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..errors import GermSyntaxError, NotAGermError

__all__ = ["Poly", "PolyGerm", "parse_poly", "parse_germ", "jacobian_det"]


class Poly:
    """Sparse polynomial in ``x, y``: a map from exponent pairs to Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction | int] | None = None):
        self.terms: dict[tuple[int, int], Fraction] = {
            k: Fraction(v) for k, v in (terms or {}).items() if v != 0
        }

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({(1, 0): 1} if name == "x" else {(0, 1): 1})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[tuple[int, int], Fraction] = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * v
        return Poly(out)

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_const(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def diff(self, var: str) -> "Poly":
        out = {}
        for (a, b), c in self.terms.items():
            if var == "x" and a:
                out[(a - 1, b)] = c * a
            elif var == "y" and b:
                out[(a, b - 1)] = c * b
        return Poly(out)

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=0)

    def __call__(self, x, y):
        return sum((c * x**a * y**b for (a, b), c in self.terms.items()), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0])):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("x", a), ("y", b)) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<var>[xy])|(?P<op>\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match:
                bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise GermSyntaxError(f"unexpected character {text[bad]!r}", bad)
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), start))
            pos = match.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise GermSyntaxError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise GermSyntaxError("empty expression", 0)
        out = self.expr()
        tok = self.peek()
        if tok is not None:
            raise GermSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return out

    def expr(self) -> Poly:
        out = self.term()
        while (tok := self.peek()) and tok[1] in "+-" and tok[0] == "op":
            self.take()
            rhs = self.term()
            out = out + rhs if tok[1] == "+" else out - rhs
        return out

    def term(self) -> Poly:
        out = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in ("*", "/"):
            self.take()
            rhs = self.unary()
            if tok[1] == "*":
                out = out * rhs
            else:
                if not rhs.is_const() or rhs.constant_term() == 0:
                    raise GermSyntaxError("division only by a nonzero constant", tok[2])
                out = out * Poly.const(1 / rhs.constant_term())
        return out

    def unary(self) -> Poly:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp = self.take()
            if exp[0] != "num" or "." in exp[1]:
                raise GermSyntaxError("exponent must be a non-negative integer", exp[2])
            return base ** int(exp[1])
        return base

    def atom(self) -> Poly:
        kind, value, pos = self.take()
        if kind == "num":
            return Poly.const(Fraction(value))
        if kind == "var":
            return Poly.var(value)
        if value == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                raise GermSyntaxError("expected ')'", close[2])
            return inner
        raise GermSyntaxError(f"unexpected {value!r}", pos)


def parse_poly(text: str) -> Poly:
    return _Parser(text).parse()


@dataclass(frozen=True)
class PolyGerm:
    f1: Poly
    f2: Poly

    def __post_init__(self):
        for name, f in (("first", self.f1), ("second", self.f2)):
            if f.constant_term() != 0:
                raise NotAGermError(
                    f"{name} component {f} has constant term {f.constant_term()}: not a germ at 0"
                )

    def __str__(self) -> str:
        return f"({self.f1}, {self.f2})"


def parse_germ(text1: str, text2: str) -> PolyGerm:
    return PolyGerm(parse_poly(text1), parse_poly(text2))


def jacobian_det(g: PolyGerm) -> Poly:
    return g.f1.diff("x") * g.f2.diff("y") - g.f1.diff("y") * g.f2.diff("x")
