"""Dual numbers a + eps*b over a finite field, eps^2 = 0."""

from __future__ import annotations

from .field import FieldCtx, FieldElt, FieldError

__all__ = ["DualElt"]


class DualElt:
    __slots__ = ("a", "b")

    def __init__(self, a: FieldElt, b: FieldElt | None = None):
        if b is None:
            b = FieldElt(a.ctx, 0)
        if a.ctx != b.ctx:
            raise FieldError("dual components over different fields")
        self.a = a
        self.b = b

    @classmethod
    def lift(cls, ctx: FieldCtx, x) -> "DualElt":
        if isinstance(x, DualElt):
            return x
        return cls(ctx.elt(x))

    @property
    def ctx(self) -> FieldCtx:
        return self.a.ctx

    def _other(self, other):
        if isinstance(other, DualElt):
            return other
        if isinstance(other, (FieldElt, int)):
            return DualElt(self.ctx.elt(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return DualElt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return DualElt(-self.a, -self.b)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return DualElt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return DualElt(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of dual numbers are not supported")
        # (a + eps b)^e = a^e + eps e a^{e-1} b
        if e == 0:
            return DualElt(FieldElt(self.ctx, 1))
        return DualElt(self.a**e, self.a ** (e - 1) * self.b * e)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"DualElt({self.a!r}, {self.b!r})"
