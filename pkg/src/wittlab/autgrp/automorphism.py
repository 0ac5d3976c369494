"""Automorphisms of O_n and their action on O_n and on L."""

from __future__ import annotations

import numpy as np

from ..gf import linalg as la
from ..gf.field import FieldElt
from ..oring.parse import ExprSyntaxError, parse_expression
from ..oring.ring import ContextMismatch, RingCtx, RingElt, on_jacobian
from ..witt.derivation import Derivation

__all__ = [
    "AutomorphismError",
    "JacobianInMaxIdeal",
    "ConstantTermPresent",
    "Automorphism",
    "aut_make",
    "aut_invert",
    "aut_apply",
    "aut_act_der",
    "aut_random",
    "aut_compose",
    "cocharacter",
    "chi0",
]


class AutomorphismError(ValueError):
    pass


class JacobianInMaxIdeal(AutomorphismError):
    pass


class ConstantTermPresent(AutomorphismError):
    pass


class Automorphism:
    """sigma determined by the images sigma(x_1), ..., sigma(x_n)."""

    __slots__ = ("ctx", "images", "linear", "_subst", "_inv")

    def __init__(self, ctx: RingCtx, images: np.ndarray, validate: bool = True):
        self.ctx = ctx
        self.images = images
        f = ctx.field
        # A[i][j] = coefficient of x_j in sigma(x_i)
        self.linear = np.stack([images[i, ctx.var_index] for i in range(ctx.n)])
        self._subst = None
        self._inv = None
        if validate:
            if images[:, 0].any():
                raise ConstantTermPresent("images must lie in the maximal ideal")
            if la.det(f, self.linear) == 0:
                raise JacobianInMaxIdeal("Jacobian of the images lies in the maximal ideal")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, ctx: RingCtx) -> "Automorphism":
        return cls(ctx, np.stack([ctx.x(i).c for i in range(1, ctx.n + 1)]))

    @classmethod
    def from_images(cls, images) -> "Automorphism":
        images = list(images)
        ctx = images[0].ctx
        if len(images) != ctx.n:
            raise ValueError(f"expected {ctx.n} images")
        for g in images:
            if g.ctx != ctx:
                raise ContextMismatch("images from different rings")
        return cls(ctx, np.stack([g.c for g in images]))

    @classmethod
    def linear_map(cls, ctx: RingCtx, A) -> "Automorphism":
        """The linear substitution x_i -> sum_j A[i][j] x_j (A given as codes)."""
        A = np.asarray(A, dtype=np.int64)
        imgs = ctx.field.zeros((ctx.n, ctx.N))
        for i in range(ctx.n):
            for j in range(ctx.n):
                imgs[i, ctx.var_index[j]] = ctx.field.encode(int(A[i, j]))
        return cls(ctx, imgs)

    @classmethod
    def parse(cls, text: str, ctx: RingCtx) -> "Automorphism":
        """Parse ``x1 -> x1 + x1^2; x2 -> x2``; unassigned variables are fixed."""
        images = {}
        offset = 0
        for part in text.split(";"):
            start = offset
            offset += len(part) + 1
            if not part.strip():
                continue
            lhs, sep, rhs = part.partition("->")
            if not sep:
                raise ExprSyntaxError("expected '->'", text, start)
            lhs = lhs.strip().replace("_", "")
            if not (lhs.startswith("x") and lhs[1:].isdigit()):
                raise ExprSyntaxError(f"bad variable {lhs!r}", text, start)
            i = int(lhs[1:])
            if not 1 <= i <= ctx.n or i in images:
                raise ExprSyntaxError(f"bad or repeated variable x{i}", text, start)
            rhs_start = start + len(part) - len(rhs)
            try:
                val, _ = parse_expression(rhs, ctx)
            except ExprSyntaxError as exc:
                local = len(rhs.encode()[: exc.byte_offset].decode(errors="ignore"))
                raise ExprSyntaxError(exc.msg.rsplit(" at byte", 1)[0], text, rhs_start + local) from None
            images[i] = val
        return cls.from_images([images.get(i, ctx.x(i)) for i in range(1, ctx.n + 1)])

    # -- views -------------------------------------------------------------

    def image(self, i: int) -> RingElt:
        return RingElt(self.ctx, self.images[i - 1])

    def image_list(self) -> list:
        return [self.image(i) for i in range(1, self.ctx.n + 1)]

    def linear_det(self) -> FieldElt:
        return FieldElt(self.ctx.field, la.det(self.ctx.field, self.linear))

    def jacobian(self) -> RingElt:
        return on_jacobian(self.image_list())

    def substitution_matrix(self) -> np.ndarray:
        """Matrix S of the ring map: column index(a) holds prod sigma(x_i)^{a_i}."""
        if self._subst is None:
            ctx = self.ctx
            pows = []
            for i in range(ctx.n):
                g = self.image(i + 1)
                row = [ctx.one()]
                for _ in range(ctx.p - 1):
                    row.append(row[-1] * g)
                pows.append(row)
            cols = []
            for idx in range(ctx.N):
                acc = pows[0][ctx.exps[idx, 0]]
                for i in range(1, ctx.n):
                    acc = acc * pows[i][ctx.exps[idx, i]]
                cols.append(acc.c)
            self._subst = np.stack(cols, axis=1)
        return self._subst

    # -- group operations ------------------------------------------------------

    def apply(self, g: RingElt) -> RingElt:
        if g.ctx != self.ctx:
            raise ContextMismatch("ring element from a different ring")
        return RingElt(self.ctx, la.matvec(self.ctx.field, self.substitution_matrix(), g.c))

    __call__ = apply

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other: x_i -> self(other(x_i))."""
        if other.ctx != self.ctx:
            raise ContextMismatch("automorphisms of different rings")
        S = self.substitution_matrix()
        f = self.ctx.field
        imgs = np.stack([la.matvec(f, S, other.images[i]) for i in range(self.ctx.n)])
        return Automorphism(self.ctx, imgs)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "Automorphism":
        """Fixpoint iteration g <- A^{-1}(x - H(g)) with H the nonlinear part of sigma."""
        if self._inv is not None:
            return self._inv
        ctx = self.ctx
        f = ctx.field
        Ainv = la.inverse(f, self.linear)
        H = self.images.copy()
        H[:, ctx.var_index] = 0
        X = np.stack([ctx.x(i).c for i in range(1, ctx.n + 1)])

        def lin_combine(vecs):
            # rows: sum_j Ainv[i][j] vecs[j]
            return np.stack(
                [sum(f.amul(vecs[j], Ainv[i, j][None, :]) for j in range(ctx.n)) % ctx.p for i in range(ctx.n)]
            )

        g = lin_combine(X)
        for _ in range(ctx.n * (ctx.p - 1) + 2):
            cand = Automorphism(ctx, g, validate=False)
            S = cand.substitution_matrix()
            Hg = np.stack([la.matvec(f, S, H[i]) for i in range(ctx.n)])
            new = lin_combine((X - Hg) % ctx.p)
            if np.array_equal(new, g):
                break
            g = new
        inv = Automorphism(ctx, g)
        if not inv.compose(self).is_identity() or not self.compose(inv).is_identity():
            raise AssertionError("inverse iteration did not converge")  # pragma: no cover
        inv._inv = self
        self._inv = inv
        return inv

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, Automorphism.identity(self.ctx).images))

    def act(self, D: Derivation) -> Derivation:
        """sigma(D) = sigma o D o sigma^{-1}, read off on the generators."""
        if D.ctx != self.ctx:
            raise ContextMismatch("derivation from a different ring")
        inv = self.inverse()
        f = self.ctx.field
        S = self.substitution_matrix()
        M = D.matrix()
        comps = [la.matvec(f, S, la.matvec(f, M, inv.images[i])) for i in range(self.ctx.n)]
        return Derivation(self.ctx, np.stack(comps))

    def chi0(self) -> FieldElt:
        """The character chi_0(sigma) = det(A_sigma)^{-1}."""
        return self.linear_det().inverse()

    def __eq__(self, other):
        return isinstance(other, Automorphism) and other.ctx == self.ctx and np.array_equal(
            self.images, other.images
        )

    def __hash__(self):
        return hash((self.ctx, self.images.tobytes()))

    def serialize(self) -> str:
        return "; ".join(f"x{i} -> {g.to_text()}" for i, g in enumerate(self.image_list(), 1))

    def __repr__(self):
        return f"Automorphism({self.serialize()})"


# -- functional interface --------------------------------------------------------

def aut_make(images) -> Automorphism:
    return Automorphism.from_images(images)


def aut_invert(sigma: Automorphism) -> Automorphism:
    return sigma.inverse()


def aut_apply(sigma: Automorphism, f: RingElt) -> RingElt:
    return sigma.apply(f)


def aut_act_der(sigma: Automorphism, D: Derivation) -> Derivation:
    return sigma.act(D)


def aut_compose(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    return sigma.compose(tau)


def chi0(sigma: Automorphism) -> FieldElt:
    return sigma.chi0()


def cocharacter(ctx: RingCtx, t) -> Automorphism:
    """lambda(t): x_i -> t x_i."""
    code = t.v if isinstance(t, FieldElt) else ctx.field.from_int(int(t))
    return Automorphism.linear_map(ctx, np.eye(ctx.n, dtype=np.int64) * code)


def aut_random(seed: int, ctx: RingCtx, linear_only: bool = False) -> Automorphism:
    """Uniform invertible linear part plus uniform higher-degree coefficients."""
    rng = np.random.default_rng(seed)
    f = ctx.field
    while True:
        A = rng.integers(0, f.q, (ctx.n, ctx.n))
        if la.det(f, f.encode(A)) != 0:
            break
    higher = rng.integers(0, f.q, (ctx.n, ctx.N))
    higher[:, ctx.degrees < 2] = 0
    if linear_only:
        higher[:] = 0
    for i in range(ctx.n):
        for j in range(ctx.n):
            higher[i, ctx.var_index[j]] = A[i, j]
    return Automorphism(ctx, f.encode(higher))
