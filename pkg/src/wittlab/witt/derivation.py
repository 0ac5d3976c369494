"""Derivations of O_n: the Lie algebra L = W_n.

A derivation D = sum_i f_i d_i is stored as the digit array of its
coefficients, shape (n, p^n, m).  Coordinates on L use the basis
x^a d_j at position j*p^n + index(a).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..gf import linalg as la
from ..gf.field import FieldElt, ff_build
from ..oring.parse import parse_expression
from ..oring.ring import ContextMismatch, RingCtx, RingElt

__all__ = [
    "Derivation",
    "der_apply",
    "der_bracket",
    "der_matrix",
    "der_ppow",
    "der_is_nilpotent",
    "der_grade",
    "basis_tensor",
    "ad_tensor",
    "center_dimension",
]


@lru_cache(maxsize=None)
def basis_tensor(ctx: RingCtx) -> np.ndarray:
    """Integer tensor B with B[:, :, k] the matrix of the k-th basis derivation."""
    N, n, p = ctx.N, ctx.n, ctx.p
    B = np.zeros((N, N, n * N), dtype=np.int64)
    exps = ctx.exps
    for j in range(n):
        P = ctx.partial_mats[j]
        cols = np.nonzero(P.any(axis=0))[0]
        rows = cols - ctx.var_index[j]
        vals = P[rows, cols]
        for a in range(N):
            # x^a * (b_j x^{b - e_j})
            ok = ((exps[rows] + exps[a]) < p).all(axis=1)
            B[rows[ok] + a, cols[ok], j * N + a] = vals[ok]
    return B


@lru_cache(maxsize=None)
def ad_tensor(ctx: RingCtx) -> np.ndarray:
    """Integer tensor T with T[:, v, k] the coordinates of [e_k, e_v]."""
    N, n, p = ctx.N, ctx.n, ctx.p
    dim = n * N
    T = np.zeros((dim, dim, dim), dtype=np.int64)
    exps = ctx.exps
    add_ok = ((exps[:, None, :] + exps[None, :, :]) < p).all(axis=2)
    for k in range(dim):
        j, a = divmod(k, N)
        for v in range(dim):
            l, b = divmod(v, N)
            # [x^a d_j, x^b d_l] = b_j x^{a+b-e_j} d_l - a_l x^{a+b-e_l} d_j
            bj = exps[b, j]
            if bj:
                bb = b - ctx.var_index[j]
                if add_ok[a, bb]:
                    T[l * N + a + bb, v, k] += bj
            al = exps[a, l]
            if al:
                aa = a - ctx.var_index[l]
                if add_ok[aa, b]:
                    T[j * N + aa + b, v, k] -= al
    return T % p


class Derivation:
    __slots__ = ("ctx", "c", "_matrix")

    def __init__(self, ctx: RingCtx, c: np.ndarray):
        self.ctx = ctx
        self.c = c
        self._matrix = None

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingCtx) -> "Derivation":
        return cls(ctx, ctx.field.zeros((ctx.n, ctx.N)))

    @classmethod
    def partial(cls, ctx: RingCtx, i: int) -> "Derivation":
        """d_i, 1-based."""
        c = ctx.field.zeros((ctx.n, ctx.N))
        c[i - 1, 0, 0] = 1
        return cls(ctx, c)

    @classmethod
    def from_components(cls, comps) -> "Derivation":
        comps = list(comps)
        ctx = comps[0].ctx
        if len(comps) != ctx.n:
            raise ValueError(f"expected {ctx.n} coefficients")
        for f in comps:
            if f.ctx != ctx:
                raise ContextMismatch("coefficients from different rings")
        return cls(ctx, np.stack([f.c for f in comps]))

    @classmethod
    def from_vector(cls, ctx: RingCtx, vec: np.ndarray) -> "Derivation":
        return cls(ctx, np.asarray(vec, dtype=np.int64).reshape(ctx.n, ctx.N, ctx.m))

    @classmethod
    def basis(cls, ctx: RingCtx, k: int) -> "Derivation":
        v = ctx.field.zeros(ctx.n * ctx.N)
        v[k, 0] = 1
        return cls.from_vector(ctx, v)

    @classmethod
    def from_matrix(cls, ctx: RingCtx, M: np.ndarray, check: bool = True) -> "Derivation":
        """Read D back from its matrix via D(x_i); optionally confirm the round trip."""
        c = np.stack([M[:, idx] for idx in ctx.var_index])
        D = cls(ctx, c.copy())
        if check and not np.array_equal(D.matrix(), M % ctx.p):
            raise ValueError("matrix is not the matrix of a derivation")
        return D

    @classmethod
    def random(cls, ctx: RingCtx, rng: np.random.Generator) -> "Derivation":
        codes = rng.integers(0, ctx.field.q, (ctx.n, ctx.N))
        return cls(ctx, ctx.field.encode(codes))

    @classmethod
    def parse(cls, text: str, ctx: RingCtx) -> "Derivation":
        """Parse an expression such as ``(1+x1)*d1 + x1^2*d2``."""
        if text.startswith("der("):
            return cls.deserialize(text, ctx)
        val, _ = parse_expression(text, ctx, allow_der=True)
        if isinstance(val, RingElt):
            if val.is_zero():
                return cls.zero(ctx)
            raise ValueError("expression denotes a ring element, not a derivation")
        return cls.from_components(val)

    # -- views -------------------------------------------------------------

    def components(self) -> list:
        return [RingElt(self.ctx, self.c[i]) for i in range(self.ctx.n)]

    def vector(self) -> np.ndarray:
        return self.c.reshape(self.ctx.n * self.ctx.N, self.ctx.m)

    def codes(self) -> np.ndarray:
        return self.ctx.field.decode(self.vector())

    def constant_part(self) -> list:
        """(f_1(0), ..., f_n(0)): the L_{-1} component."""
        f = self.ctx.field
        return [FieldElt(f, int(f.decode(self.c[i, 0]))) for i in range(self.ctx.n)]

    def matrix(self) -> np.ndarray:
        """Digit array of D acting on the monomial basis of O_n."""
        if self._matrix is None:
            B = basis_tensor(self.ctx)
            v = self.vector()
            self._matrix = np.einsum("uvk,km->uvm", B, v) % self.ctx.p
        return self._matrix

    def ad_matrix(self) -> np.ndarray:
        """Digit array of ad D on L in the x^a d_j basis."""
        T = ad_tensor(self.ctx)
        return np.einsum("uvk,km->uvm", T, self.vector()) % self.ctx.p

    # -- algebra -------------------------------------------------------------

    def _other(self, other) -> "Derivation":
        if not isinstance(other, Derivation):
            return None
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("derivations from different rings")
        return other

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Derivation(self.ctx, (self.c + o.c) % self.ctx.p)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Derivation(self.ctx, (self.c - o.c) % self.ctx.p)

    def __neg__(self):
        return Derivation(self.ctx, (-self.c) % self.ctx.p)

    def __mul__(self, other):
        """Scalar or ring-element multiple f*D."""
        f = self.ctx.field
        if isinstance(other, (int, np.integer)):
            return Derivation(self.ctx, f.ascale(self.c, f.from_int(int(other))))
        if isinstance(other, FieldElt):
            if other.ctx != f:
                raise ContextMismatch("scalar from a different field")
            return Derivation(self.ctx, f.ascale(self.c, other.v))
        if isinstance(other, RingElt):
            return Derivation.from_components([other * g for g in self.components()])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return bool(np.array_equal(self.c, o.c))

    def __hash__(self):
        return hash((self.ctx, self.c.tobytes()))

    def is_zero(self) -> bool:
        return not self.c.any()

    def apply(self, g: RingElt) -> RingElt:
        if g.ctx != self.ctx:
            raise ContextMismatch("ring element from a different ring")
        return RingElt(self.ctx, la.matvec(self.ctx.field, self.matrix(), g.c))

    __call__ = apply

    def bracket(self, other: "Derivation") -> "Derivation":
        o = self._other(other)
        if o is None:
            raise TypeError("bracket needs a Derivation")
        fctx = self.ctx.field
        MD, ME = self.matrix(), o.matrix()
        comps = [
            (la.matvec(fctx, MD, o.c[i]) - la.matvec(fctx, ME, self.c[i])) % self.ctx.p
            for i in range(self.ctx.n)
        ]
        return Derivation(self.ctx, np.stack(comps))

    def ppow(self, k: int = 1) -> "Derivation":
        """D^{[p]^k} = D^{p^k}, via the matrix representation."""
        M = self.matrix()
        for _ in range(k):
            M = la.matpow(self.ctx.field, M, self.ctx.p)
        D = Derivation.from_matrix(self.ctx, M, check=False)
        D._matrix = M
        return D

    def is_nilpotent(self) -> bool:
        return self.ppow(self.ctx.n).is_zero()

    def is_toral(self) -> bool:
        return self.ppow(1) == self

    def grade(self) -> dict:
        """Homogeneous components {degree: D_degree}, degree of x^a d_j being |a| - 1."""
        out = {}
        degs = self.ctx.degrees - 1
        for d in sorted(set(degs.tolist())):
            c = self.c.copy()
            c[:, degs != d] = 0
            if c.any():
                out[int(d)] = Derivation(self.ctx, c)
        return out

    def filtration_degree(self) -> int | None:
        """Largest k with D in L_(k); None for D = 0."""
        g = self.grade()
        return min(g) if g else None

    # -- text ----------------------------------------------------------------

    def serialize(self) -> str:
        return f"der({self.ctx.p},{self.ctx.n}):" + ";".join(f.serialize() for f in self.components())

    @classmethod
    def deserialize(cls, text: str, ctx: RingCtx) -> "Derivation":
        from ..oring.ring import parse_ring_serialized

        head, _, body = text.partition(":")
        if head != f"der({ctx.p},{ctx.n})":
            raise ValueError(f"header {head!r} does not match ring {ctx.tag}")
        parts = body.split(";")
        if len(parts) != ctx.n:
            raise ValueError(f"expected {ctx.n} components")
        return cls.from_components([parse_ring_serialized(s, ctx) for s in parts])

    def to_text(self) -> str:
        terms = []
        for i, f in enumerate(self.components()):
            if f.is_zero():
                continue
            txt = f.to_text()
            if txt == "1":
                terms.append(f"d{i + 1}")
            elif " + " in txt:
                terms.append(f"({txt})*d{i + 1}")
            else:
                terms.append(f"{txt}*d{i + 1}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Derivation({self.to_text()})"


# -- functional interface --------------------------------------------------------

def der_apply(D: Derivation, f: RingElt) -> RingElt:
    return D.apply(f)


def der_bracket(D: Derivation, E: Derivation) -> Derivation:
    return D.bracket(E)


def der_matrix(D: Derivation) -> np.ndarray:
    return D.matrix()


def der_ppow(D: Derivation, k: int) -> Derivation:
    if k < 0:
        raise ValueError("k must be non-negative")
    return D.ppow(k)


def der_is_nilpotent(D: Derivation) -> bool:
    return D.is_nilpotent()


def der_grade(D: Derivation) -> dict:
    return D.grade()


def center_dimension(ctx: RingCtx) -> int:
    """dim z(L), computed as the common kernel of ad over a basis."""
    T = ad_tensor(ctx)
    dim = T.shape[0]
    # D in z(L) iff [e_v, D] = 0 for all v; [e_v, D] = sum_k D_k T[:, k, v]
    stacked = np.transpose(T, (2, 0, 1)).reshape(dim * dim, dim)
    # structure constants lie in F_p, so the rank can be taken there
    return dim - la.rank(ff_build(ctx.p), stacked[..., None] % ctx.p)
