"""The truncated polynomial ring O_n = F[x_1..x_n]/(x_1^p, ..., x_n^p)."""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

from ..gf.field import FieldCtx, FieldElt, ff_build
from ..gf.linalg import cofactor_det

__all__ = [
    "ContextMismatch",
    "NotAUnit",
    "InadmissibleRing",
    "RingCtx",
    "RingElt",
    "ring_build",
    "on_mul",
    "on_inv",
    "on_partial",
    "on_jacobian",
]


class ContextMismatch(ValueError):
    pass


class NotAUnit(ArithmeticError):
    pass


class InadmissibleRing(ValueError):
    pass


class RingCtx:
    """Monomials x^a are indexed by sum(a_i p^(i-1)), so a_1 varies fastest."""

    def __init__(self, field: FieldCtx, n: int):
        p = field.p
        if n < 1:
            raise InadmissibleRing("need at least one variable")
        if (p, n) == (3, 1):
            raise InadmissibleRing("(p, n) = (3, 1) is excluded")
        self.field = field
        self.p = p
        self.n = n
        self.N = p**n
        self.exps = np.array(
            [[(idx // p**i) % p for i in range(n)] for idx in range(self.N)], dtype=np.int64
        )
        self.degrees = self.exps.sum(axis=1)
        self.var_index = [p**i for i in range(n)]
        s, t = np.meshgrid(np.arange(self.N), np.arange(self.N), indexing="ij")
        s, t = s.ravel(), t.ravel()
        ok = ((self.exps[s] + self.exps[t]) < p).all(axis=1)
        self._ms, self._mt = s[ok], t[ok]
        self._os, self._ot = s[~ok], t[~ok]

    def __repr__(self):
        return f"RingCtx(p={self.p}, n={self.n}, m={self.field.m})"

    def __eq__(self, other):
        return isinstance(other, RingCtx) and self.n == other.n and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.n))

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def tag(self) -> str:
        return f"({self.p},{self.n})"

    def index(self, a) -> int:
        return int(sum(int(ai) * w for ai, w in zip(a, self.var_index)))

    # -- structural matrices (entries in the prime field) ---------------------

    @cached_property
    def partial_mats(self) -> list:
        """Integer matrices P_i with P_i[index(a - e_i), index(a)] = a_i."""
        mats = []
        for i in range(self.n):
            P = np.zeros((self.N, self.N), dtype=np.int64)
            cols = np.nonzero(self.exps[:, i] > 0)[0]
            P[cols - self.var_index[i], cols] = self.exps[cols, i] % self.p
            mats.append(P)
        return mats

    def mul_matrix(self, f: np.ndarray) -> np.ndarray:
        """Digit array of the multiplication-by-f operator."""
        M = self.field.zeros((self.N, self.N))
        M[self._ms + self._mt, self._mt] = f[self._ms]
        return M

    # -- elements ------------------------------------------------------------

    def zero(self) -> "RingElt":
        return RingElt(self, self.field.zeros(self.N))

    def one(self) -> "RingElt":
        return self.const(1)

    def const(self, c) -> "RingElt":
        arr = self.field.zeros(self.N)
        code = c.v if isinstance(c, FieldElt) else self.field.from_int(int(c))
        arr[0] = self.field.encode(code)
        return RingElt(self, arr)

    def x(self, i: int) -> "RingElt":
        """The variable x_i, 1-based."""
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} out of range 1..{self.n}")
        arr = self.field.zeros(self.N)
        arr[self.var_index[i - 1], 0] = 1
        return RingElt(self, arr)

    def monomial(self, a, coeff=1) -> "RingElt":
        if any(ai >= self.p or ai < 0 for ai in a):
            return self.zero()
        arr = self.field.zeros(self.N)
        code = coeff.v if isinstance(coeff, FieldElt) else self.field.from_int(int(coeff))
        arr[self.index(a)] = self.field.encode(code)
        return RingElt(self, arr)

    def top(self) -> "RingElt":
        return self.monomial([self.p - 1] * self.n)

    def from_codes(self, codes) -> "RingElt":
        codes = list(codes)
        if len(codes) != self.N:
            raise ValueError(f"expected {self.N} coefficients")
        return RingElt(self, self.field.encode(codes))

    def random(self, rng: np.random.Generator, in_max_ideal: bool = False) -> "RingElt":
        codes = rng.integers(0, self.field.q, self.N)
        if in_max_ideal:
            codes[0] = 0
        return RingElt(self, self.field.encode(codes))

    def random_unit(self, rng: np.random.Generator) -> "RingElt":
        codes = rng.integers(0, self.field.q, self.N)
        codes[0] = rng.integers(1, self.field.q)
        return RingElt(self, self.field.encode(codes))

    def monomials(self):
        for idx in range(self.N):
            yield tuple(int(v) for v in self.exps[idx])


@lru_cache(maxsize=None)
def ring_build(p: int, n: int, m: int = 1) -> RingCtx:
    return RingCtx(ff_build(p, m), n)


class RingElt:
    """Element of O_n as a dense coefficient digit array of shape (p^n, m)."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: RingCtx, c: np.ndarray):
        self.ctx = ctx
        self.c = c

    def _check(self, other) -> "RingElt":
        if isinstance(other, RingElt):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch("ring elements from different contexts")
            return other
        if isinstance(other, (int, FieldElt, np.integer)):
            if isinstance(other, FieldElt) and other.ctx != self.ctx.field:
                raise ContextMismatch("scalar from a different field")
            return self.ctx.const(other)
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return RingElt(self.ctx, (self.c + o.c) % self.ctx.p)

    __radd__ = __add__

    def __neg__(self):
        return RingElt(self.ctx, (-self.c) % self.ctx.p)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return RingElt(self.ctx, (self.c - o.c) % self.ctx.p)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(self.ctx.field.from_int(int(other)))
        if isinstance(other, FieldElt):
            if other.ctx != self.ctx.field:
                raise ContextMismatch("scalar from a different field")
            return self.scale(other.v)
        o = self._check(other)
        if o is None:
            return NotImplemented
        return RingElt(self.ctx, _mul_arrays(self.ctx, self.c, o.c))

    __rmul__ = __mul__

    def scale(self, code: int) -> "RingElt":
        return RingElt(self.ctx, self.ctx.field.ascale(self.c, code))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return bool(np.array_equal(self.c, o.c))

    def __hash__(self):
        return hash((self.ctx, self.c.tobytes()))

    def __bool__(self):
        return bool(self.c.any())

    def is_zero(self) -> bool:
        return not self.c.any()

    # -- structure ---------------------------------------------------------

    def const_term(self) -> FieldElt:
        """f(0)."""
        return FieldElt(self.ctx.field, int(self.ctx.field.decode(self.c[0])))

    def coeff(self, a) -> FieldElt:
        return FieldElt(self.ctx.field, int(self.ctx.field.decode(self.c[self.ctx.index(a)])))

    def codes(self) -> list:
        return [int(v) for v in self.ctx.field.decode(self.c)]

    def in_max_ideal(self) -> bool:
        return not self.c[0].any()

    def is_unit(self) -> bool:
        return not self.in_max_ideal()

    def inverse(self) -> "RingElt":
        """Inverse of a unit by the geometric series in its nilpotent part."""
        if self.in_max_ideal():
            raise NotAUnit("element lies in the maximal ideal")
        c0 = self.const_term()
        u = self * c0.inverse()  # 1 - h with h nilpotent
        h = self.ctx.one() - u
        acc = self.ctx.one()
        term = self.ctx.one()
        for _ in range(self.ctx.n * (self.ctx.p - 1)):
            term = term * h
            if term.is_zero():
                break
            acc = acc + term
        return acc * c0.inverse()

    def partial(self, i: int) -> "RingElt":
        """Formal partial derivative with respect to x_i (1-based)."""
        P = self.ctx.partial_mats[i - 1]
        return RingElt(self.ctx, (P @ self.c) % self.ctx.p)

    def homogeneous_part(self, deg: int) -> "RingElt":
        c = self.c.copy()
        c[self.ctx.degrees != deg] = 0
        return RingElt(self.ctx, c)

    # -- text ----------------------------------------------------------------

    def serialize(self) -> str:
        f = self.ctx.field
        return f"poly({self.ctx.p},{self.ctx.n}):" + ",".join(f.digit_string(v) for v in self.codes())

    def to_text(self) -> str:
        """Human-readable form accepted by the expression parser."""
        ctx = self.ctx
        f = ctx.field
        terms = []
        for idx, code in enumerate(self.codes()):
            if not code:
                continue
            mono = []
            for i, a in enumerate(ctx.exps[idx]):
                if a == 1:
                    mono.append(f"x{i + 1}")
                elif a > 1:
                    mono.append(f"x{i + 1}^{a}")
            coeff = _scalar_text(f, code)
            if not mono:
                terms.append(coeff)
            elif code == 1:
                terms.append("*".join(mono))
            else:
                terms.append("*".join([coeff] + mono))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return self.to_text()


def _scalar_text(f: FieldCtx, code: int) -> str:
    if f.m == 1 or code < f.p:
        return str(code)
    parts = []
    for k, d in enumerate(f.digits(code)):
        if not d:
            continue
        if k == 0:
            parts.append(str(d))
        else:
            u = "u" if k == 1 else f"u^{k}"
            parts.append(u if d == 1 else f"{d}*{u}")
    return "(" + " + ".join(parts) + ")"


def _mul_arrays(ctx: RingCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    f = ctx.field
    ms, mt = ctx._ms, ctx._mt
    prod = f.amul(a[ms], b[mt])
    out = np.zeros_like(a)
    np.add.at(out, ms + mt, prod)
    return out % ctx.p


def mul_overflows(f: RingElt, g: RingElt) -> bool:
    """True when the untruncated product has a nonzero term killed by x_i^p = 0."""
    ctx = f.ctx
    return bool((f.c[ctx._os].any(axis=-1) & g.c[ctx._ot].any(axis=-1)).any())


def parse_ring_serialized(text: str, ctx: RingCtx) -> RingElt:
    head, _, body = text.partition(":")
    if head != f"poly({ctx.p},{ctx.n})":
        raise ValueError(f"header {head!r} does not match ring {ctx.tag}")
    parts = body.split(",")
    if len(parts) != ctx.N:
        raise ValueError(f"expected {ctx.N} coefficients, got {len(parts)}")
    return ctx.from_codes([ctx.field.parse_digit_string(s) for s in parts])


# -- functional interface ------------------------------------------------------

def on_mul(f: RingElt, g: RingElt) -> RingElt:
    if f.ctx != g.ctx:
        raise ContextMismatch("ring elements from different contexts")
    return f * g


def on_inv(f: RingElt) -> RingElt:
    return f.inverse()


def on_partial(f: RingElt, i: int) -> RingElt:
    if not 1 <= i <= f.ctx.n:
        raise IndexError(f"variable index {i} out of range")
    return f.partial(i)


def on_jacobian(fs) -> RingElt:
    fs = list(fs)
    if not fs:
        raise ValueError("empty sequence")
    ctx = fs[0].ctx
    if len(fs) != ctx.n:
        raise ValueError(f"expected {ctx.n} elements, got {len(fs)}")
    rows = [[f.partial(j) for j in range(1, ctx.n + 1)] for f in fs]
    return cofactor_det(rows)
