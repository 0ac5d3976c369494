"""Recursive-descent parser for ring and derivation expressions.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | var | dvar | 'u' | '(' expr ')'
    var    := 'x' ['_'] uint
    dvar   := ('d' | '∂') ['_'] uint

``u`` denotes the generator of F_{p^m} over F_p.  Derivation atoms are only
accepted when the caller asks for a derivation.
"""

from __future__ import annotations

import warnings

from ..gf.field import FieldElt
from .ring import RingCtx, RingElt, mul_overflows

__all__ = [
    "ExprSyntaxError",
    "TruncationWarning",
    "ExponentOverflowWarning",
    "on_parse",
    "parse_expression",
]


class ExprSyntaxError(SyntaxError):
    """Raised with ``offset`` set to the byte offset of the problem."""

    def __init__(self, msg: str, text: str, pos: int):
        self.byte_offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{msg} at byte {self.byte_offset}")
        self.offset = self.byte_offset
        self.text = text


class TruncationWarning(UserWarning):
    pass


class ExponentOverflowWarning(TruncationWarning):
    pass


class _Parser:
    def __init__(self, text: str, ctx: RingCtx, allow_der: bool):
        self.s = text
        self.i = 0
        self.ctx = ctx
        self.allow_der = allow_der
        self.truncated = False
        self.exponent_overflow = False

    # -- lexing helpers --------------------------------------------------------

    def error(self, msg, pos=None):
        raise ExprSyntaxError(msg, self.s, self.i if pos is None else pos)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def uint(self):
        self.skip()
        start = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected an unsigned integer")
        return int(self.s[start:self.i])

    # -- grammar -------------------------------------------------------------

    def parse(self):
        if not self.s.strip():
            self.error("empty expression")
        val = self.expr()
        self.skip()
        if self.i != len(self.s):
            self.error(f"unexpected character {self.s[self.i]!r}")
        return val

    def expr(self):
        neg = False
        if self.peek() == "-":
            self.i += 1
            neg = True
        val = self.term()
        if neg:
            val = _neg(val)
        while self.peek() in ("+", "-"):
            op_pos = self.i
            op = self.s[self.i]
            self.i += 1
            rhs = self.term()
            val = self.combine(val, rhs, op, op_pos)
        return val

    def term(self):
        val = self.factor()
        while self.peek() == "*":
            op_pos = self.i
            self.i += 1
            rhs = self.factor()
            val = self.multiply(val, rhs, op_pos)
        return val

    def factor(self):
        base_pos = self.i
        val = self.base()
        if self.peek() == "^":
            self.i += 1
            e = self.uint()
            if isinstance(val, list):
                self.error("derivations cannot be raised to powers", base_pos)
            if e >= self.ctx.p and not _is_const(val):
                self.exponent_overflow = True
            val = self.power(val, e)
        return val

    def base(self):
        c = self.peek()
        pos = self.i
        if c.isdigit():
            return self.ctx.const(self.uint())
        if c == "(":
            self.i += 1
            val = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return val
        if c == "x":
            self.i += 1
            if self.i < len(self.s) and self.s[self.i] == "_":
                self.i += 1
            k = self.uint()
            if not 1 <= k <= self.ctx.n:
                self.error(f"variable x{k} out of range 1..{self.ctx.n}", pos)
            return self.ctx.x(k)
        if c in ("d", "∂"):
            if not self.allow_der:
                self.error("derivation atom in a ring expression", pos)
            self.i += 1
            if self.i < len(self.s) and self.s[self.i] == "_":
                self.i += 1
            k = self.uint()
            if not 1 <= k <= self.ctx.n:
                self.error(f"derivation d{k} out of range 1..{self.ctx.n}", pos)
            comps = [self.ctx.zero() for _ in range(self.ctx.n)]
            comps[k - 1] = self.ctx.one()
            return comps
        if c == "u":
            f = self.ctx.field
            if f.m == 1:
                self.error("'u' needs an extension field", pos)
            self.i += 1
            return self.ctx.const(FieldElt(f, f.gen()))
        if not c:
            self.error("unexpected end of input")
        self.error(f"unexpected character {c!r}")

    # -- semantic actions ------------------------------------------------------

    def combine(self, a, b, op, pos):
        if isinstance(a, list) != isinstance(b, list):
            self.error("cannot add a ring element and a derivation", pos)
        if isinstance(a, list):
            return [x + y if op == "+" else x - y for x, y in zip(a, b)]
        return a + b if op == "+" else a - b

    def multiply(self, a, b, pos):
        if isinstance(a, list) and isinstance(b, list):
            self.error("cannot multiply two derivations", pos)
        if isinstance(a, list):
            a, b = b, a
        if isinstance(b, list):
            out = []
            for comp in b:
                if mul_overflows(a, comp):
                    self.truncated = True
                out.append(a * comp)
            return out
        if mul_overflows(a, b):
            self.truncated = True
        return a * b

    def power(self, val, e):
        result = self.ctx.one()
        for _ in range(e):
            if mul_overflows(result, val):
                self.truncated = True
            result = result * val
            if result.is_zero():
                break
        return result


def _neg(val):
    if isinstance(val, list):
        return [-x for x in val]
    return -val


def _is_const(val: RingElt) -> bool:
    return not val.c[1:].any()


def parse_expression(text: str, ctx: RingCtx, allow_der: bool = False):
    """Parse ``text``; returns (value, flags).

    ``value`` is a RingElt, or a list of n RingElt coefficients for a
    derivation.  ``flags`` is a dict with booleans ``truncated`` and
    ``exponent_overflow``.
    """
    parser = _Parser(text, ctx, allow_der)
    val = parser.parse()
    flags = {"truncated": parser.truncated, "exponent_overflow": parser.exponent_overflow}
    if parser.exponent_overflow:
        warnings.warn(
            f"exponent >= p in {text!r}; terms vanish by x_i^p = 0",
            ExponentOverflowWarning,
            stacklevel=3,
        )
    elif parser.truncated:
        warnings.warn(f"product truncated by x_i^p = 0 in {text!r}", TruncationWarning, stacklevel=3)
    return val, flags


def on_parse(text: str, ctx: RingCtx) -> RingElt:
    val, _ = parse_expression(text, ctx, allow_der=False)
    return val
