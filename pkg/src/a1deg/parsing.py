"""Recursive-descent parser for field descriptions, field elements and polynomials.

Polynomial grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'|'/'] factor)*        juxtaposition multiplies
    factor := '-' factor | atom ['^' INT]
    atom   := INT | SYMBOL | '(' expr ')'

Symbols are the polynomial variable plus the field's own symbols (the
rational-function variable and extension generator).  Division is only
allowed by expressions that do not involve the polynomial variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UnknownSymbol
from .fields import Extension, Field, PrimeField, Rationals, RationalFunctionField
from .poly import Poly


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "sym", "op", "end"
    text: str
    pos: int


def _tokenize(src: str, symbols: list[str]) -> list[_Tok]:
    syms = sorted(symbols, key=len, reverse=True)
    out, i = [], 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            out.append(_Tok("int", src[i:j], i))
            i = j
        elif ch in "+-*/^()":
            out.append(_Tok("op", ch, i))
            i += 1
        elif ch.isalpha() or ch == "_":
            for s in syms:
                if src.startswith(s, i):
                    out.append(_Tok("sym", s, i))
                    i += len(s)
                    break
            else:
                j = i
                while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                raise UnknownSymbol(f"unknown symbol {src[i:j]!r}", i)
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    out.append(_Tok("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, field: Field, var: str | None):
        self.field = field
        self.var = var
        self.values = {}
        if isinstance(field, RationalFunctionField):
            self.values[field.var] = field.gen
        if isinstance(field, Extension):
            if isinstance(field.base, RationalFunctionField):
                self.values[field.base.var] = field.embed(field.base.gen)
            self.values[field.sym] = field.gen
        if var is not None:
            if var in self.values:
                raise ParseError(f"variable {var!r} clashes with a field symbol", 0)
            self.values[var] = None
        self.toks = _tokenize(src, list(self.values))
        self.k = 0

    def peek(self) -> _Tok:
        return self.toks[self.k]

    def take(self) -> _Tok:
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos)

    def expect(self, text: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            self.fail(f"expected {text!r}")
        self.take()

    def parse(self) -> Poly:
        if self.peek().kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return value

    def expr(self) -> Poly:
        tok = self.peek()
        sign = 1
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self, tok: _Tok) -> bool:
        return tok.kind in ("int", "sym") or (tok.kind == "op" and tok.text == "(")

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.take()
                rhs = self.factor()
                if tok.text == "*":
                    acc = acc * rhs
                else:
                    if rhs.degree > 0:
                        self.fail("division by a non-constant polynomial", tok)
                    if rhs.is_zero():
                        self.fail("division by zero", tok)
                    acc = acc * rhs.coeff(0).inverse()
            elif self._starts_factor(tok):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            e = self.peek()
            if e.kind != "int":
                self.fail("expected a nonnegative integer exponent")
            self.take()
            base = base ** int(e.text)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        F = self.field
        if tok.kind == "int":
            return Poly(F, [F.from_int(int(tok.text))])
        if tok.kind == "sym":
            value = self.values[tok.text]
            return Poly.x(F) if value is None else Poly(F, [value])
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_poly(src: str, field: Field, var: str = "x") -> Poly:
    """Parse a polynomial in ``var`` with coefficients in ``field``."""
    return _Parser(src, field, var).parse()


def parse_element(src: str, field: Field):
    """Parse a field element (an expression in the field's own symbols)."""
    p = _Parser(src, field, None)
    value = p.parse()
    return value.coeff(0)


_FIELD_RE = re.compile(
    r"""^\s*(?:(?P<q>Q)|F(?P<p>\d+)(?:\(\s*(?P<var>[A-Za-z_]\w*)\s*\))?)\s*
        (?:\[\s*(?P<sym>[A-Za-z_]\w*)\s*\]\s*/\s*\((?P<mod>.*)\)\s*)?$""",
    re.VERBOSE,
)


def parse_field(text: str) -> Field:
    """Build a field from ``Q``, ``F<p>``, ``F<p>(<var>)`` or ``<base>[<sym>]/(<poly>)``."""
    match = _FIELD_RE.match(text)
    if not match:
        raise ParseError(f"malformed field description {text!r}", 0)
    if match["q"]:
        base = Rationals()
    elif match["var"]:
        base = RationalFunctionField(int(match["p"]), match["var"])
    else:
        base = PrimeField(int(match["p"]))
    if match["sym"] is None:
        return base
    sym = match["sym"]
    if sym in base.symbols:
        raise ParseError(f"symbol {sym!r} already used by {base}", match.start("sym"))
    modulus = parse_poly(match["mod"], base, var=sym)
    if modulus.degree < 2:
        raise ParseError(f"extension modulus must have degree >= 2, got {modulus.format(sym)}", match.start("mod"))
    if not modulus.is_monic():
        raise ParseError(f"extension modulus {modulus.format(sym)} is not monic", match.start("mod"))
    return Extension(base, modulus, sym)
