"""Univariate polynomials over F_{p^m}."""

from __future__ import annotations

import random

from .field import FieldCtx, FieldElt, FieldError

__all__ = ["Poly", "separable_part", "splitting_degree", "roots", "factor_squarefree"]


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    """Polynomial with coefficient codes stored low degree first.

    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        self.c = tuple(_trim([int(x) for x in coeffs]))

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.from_int(k) for k in ints])

    @classmethod
    def from_elts(cls, ctx, elts):
        return cls(ctx, [e.v if isinstance(e, FieldElt) else ctx.from_int(e) for e in elts])

    @classmethod
    def t(cls, ctx):
        return cls(ctx, (0, 1))

    @classmethod
    def const(cls, ctx, code: int):
        return cls(ctx, (code,))

    @classmethod
    def monomial(cls, ctx, deg: int, code: int = 1):
        return cls(ctx, (0,) * deg + (code,))

    # -- basic protocol -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def coeff(self, i: int) -> FieldElt:
        return FieldElt(self.ctx, self.c[i] if i < len(self.c) else 0)

    def coeffs(self) -> list:
        return [FieldElt(self.ctx, v) for v in self.c]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.c == other.c

    def __hash__(self):
        return hash((self.ctx, self.c))

    def __repr__(self):
        return f"Poly({self.serialize()})"

    def serialize(self) -> str:
        ctx = self.ctx
        body = ",".join(ctx.digit_string(v) for v in self.c) if self.c else ctx.digit_string(0)
        return f"{ctx.tag}[t]:{body}"

    @classmethod
    def parse(cls, ctx, text: str) -> "Poly":
        head, _, body = text.partition(":")
        if head != f"{ctx.tag}[t]":
            raise FieldError(f"polynomial header {head!r} does not match {ctx.tag}")
        return cls(ctx, [ctx.parse_digit_string(s) for s in body.split(",")])

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        ctx = self.ctx
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = ctx.add(out[i], v)
        return Poly(ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, [self.ctx.neg(v) for v in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        ctx = self.ctx
        a, b = self.c, other.c
        if not a or not b:
            return Poly(ctx)
        if ctx.m == 1:
            p = ctx.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(ctx, [v % p for v in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return Poly(ctx, out)

    __rmul__ = __mul__

    def scale(self, code: int) -> "Poly":
        return Poly(self.ctx, [self.ctx.mul(code, v) for v in self.c])

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise FieldError("polynomials over different fields")
            return other
        if isinstance(other, FieldElt):
            return Poly(self.ctx, (other.v,))
        if isinstance(other, int):
            return Poly(self.ctx, (self.ctx.from_int(other),))
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        r = list(self.c)
        db = other.degree
        if len(r) - 1 < db:
            return Poly(ctx), self
        b = other.c
        inv_lead = ctx.inv(b[-1])
        quo = [0] * (len(r) - db)
        if ctx.m == 1:
            p = ctx.p
            for i in range(len(r) - 1, db - 1, -1):
                c = r[i] * inv_lead % p
                if c:
                    quo[i - db] = c
                    off = i - db
                    for j in range(db + 1):
                        r[off + j] = (r[off + j] - c * b[j]) % p
        else:
            for i in range(len(r) - 1, db - 1, -1):
                c = ctx.mul(r[i], inv_lead)
                if c:
                    quo[i - db] = c
                    off = i - db
                    for j in range(db + 1):
                        r[off + j] = ctx.sub(r[off + j], ctx.mul(c, b[j]))
        return Poly(ctx, quo), Poly(ctx, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead()))

    def derivative(self) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, [ctx.mul(ctx.from_int(i), v) for i, v in enumerate(self.c)][1:])

    def __call__(self, x):
        """Evaluate at a scalar (FieldElt or code)."""
        ctx = self.ctx
        code = x.v if isinstance(x, FieldElt) else int(x)
        acc = 0
        for v in reversed(self.c):
            acc = ctx.add(ctx.mul(acc, code), v)
        return FieldElt(ctx, acc)

    def compose_mod(self, h: "Poly", mod: "Poly") -> "Poly":
        """self(h) reduced modulo ``mod`` (Horner)."""
        acc = Poly(self.ctx)
        for v in reversed(self.c):
            acc = (acc * h + Poly(self.ctx, (v,))) % mod
        return acc

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly(self.ctx, (1,)) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def pth_root(self) -> "Poly":
        """g with g^p = self; requires every exponent to be divisible by p."""
        ctx = self.ctx
        p = ctx.p
        if any(v and i % p for i, v in enumerate(self.c)):
            raise FieldError("polynomial is not a p-th power")
        return Poly(ctx, [ctx.pth_root(v) for v in self.c[::p]])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def ext_gcd(self, other: "Poly"):
        """Return (g, s, t) with s*self + t*other = g monic."""
        ctx = self.ctx
        r0, r1 = self, self._lift(other)
        s0, s1 = Poly(ctx, (1,)), Poly(ctx)
        t0, t1 = Poly(ctx), Poly(ctx, (1,))
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = ctx.inv(r0.lead())
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def inverse_mod(self, mod: "Poly") -> "Poly":
        g, s, _ = self.ext_gcd(mod)
        if g.degree != 0:
            raise ZeroDivisionError("polynomial is not invertible modulo the given modulus")
        return s % mod


def separable_part(f: Poly) -> Poly:
    """Monic squarefree polynomial with the same roots as ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial has no separable part")
    f = f.monic()
    if f.degree <= 0:
        return Poly(f.ctx, (1,))
    df = f.derivative()
    if df.is_zero():
        return separable_part(f.pth_root())
    g = f.gcd(df)
    w = f // g  # irreducible factors of multiplicity prime to p, each once
    h = g
    while True:
        c = h.gcd(w)
        if c.degree <= 0:
            break
        h = h // c
    if h.degree <= 0:
        return w.monic()
    return (w * separable_part(h)).monic()


def splitting_degree(f: Poly) -> int:
    """Least k such that the squarefree ``f`` splits over F_{q^k}."""
    if f.degree <= 1:
        return 1
    ctx = f.ctx
    t = Poly.t(ctx)
    h = t.powmod(ctx.q, f)
    k = 1
    while h != t % f:
        h = h.powmod(ctx.q, f)
        k += 1
    return k


def roots(f: Poly, seed: int = 0) -> list:
    """Distinct roots of ``f`` in its coefficient field (Cantor-Zassenhaus splitting)."""
    ctx = f.ctx
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    t = Poly.t(ctx)
    # restrict to the product of the linear factors
    g = f.gcd(t.powmod(ctx.q, f) - t) if f.degree >= 1 else f
    rng = random.Random(seed)
    out = []

    def split(h):
        if h.degree <= 0:
            return
        if h.degree == 1:
            out.append(ctx.neg(h.c[0]))
            return
        while True:
            a = rng.randrange(ctx.q)
            shifted = Poly(ctx, (a, 1))
            w = shifted.powmod((ctx.q - 1) // 2, h) - Poly(ctx, (1,))
            d = h.gcd(w)
            if 0 < d.degree < h.degree:
                split(d)
                split(h // d)
                return

    split(g)
    return [FieldElt(ctx, v) for v in sorted(out)]


def _equal_degree_split(h: Poly, deg: int, rng) -> list:
    """Split a product of distinct irreducibles of degree ``deg`` (q odd)."""
    if h.degree == deg:
        return [h]
    ctx = h.ctx
    e = (ctx.q**deg - 1) // 2
    one = Poly(ctx, (1,))
    while True:
        a = Poly(ctx, [rng.randrange(ctx.q) for _ in range(h.degree)])
        if a.degree <= 0:
            continue
        d = h.gcd(a.powmod(e, h) - one)
        if 0 < d.degree < h.degree:
            return _equal_degree_split(d, deg, rng) + _equal_degree_split(h // d, deg, rng)


def factor_squarefree(f: Poly, seed: int = 0) -> list:
    """Monic irreducible factors of a squarefree polynomial, sorted by (degree, coefficients)."""
    ctx = f.ctx
    f = f.monic()
    t = Poly.t(ctx)
    rng = random.Random(seed)
    out = []
    h = t
    deg = 0
    rest = f
    while rest.degree > 0:
        deg += 1
        if 2 * deg > rest.degree:
            out.append(rest)
            break
        h = h.powmod(ctx.q, rest)
        g = rest.gcd(h - t)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, deg, rng))
            rest = rest // g
            h = h % rest
    return sorted(out, key=lambda g: (g.degree, g.c))
