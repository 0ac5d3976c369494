"""Scans of the fibres of D -> (psi_0(D), ..., psi_{n-1}(D))."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..gf import linalg as la
from ..gf.poly import separable_part
from ..invar.invariants import delta, psi
from ..oring.ring import RingCtx
from ..witt.derivation import Derivation
from .regularity import is_regular

__all__ = ["TooLarge", "FibreStats", "FibreReport", "fibre_scan", "EXHAUSTIVE_LIMIT"]

EXHAUSTIVE_LIMIT = 10**7


class TooLarge(ValueError):
    pass


@dataclass
class FibreStats:
    count: int = 0
    regular: int = 0
    semisimple: int = 0
    nilpotent: int = 0
    delta_nonzero: int = 0
    delta_nonzero_nonregular: int = 0
    disagreements: int = 0

    @property
    def all_regular(self) -> bool:
        return self.regular == self.count

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "regular": self.regular,
            "semisimple": self.semisimple,
            "nilpotent": self.nilpotent,
            "delta_nonzero": self.delta_nonzero,
            "delta_nonzero_nonregular": self.delta_nonzero_nonregular,
            "disagreements": self.disagreements,
        }


@dataclass
class FibreReport:
    ctx: RingCtx
    mode: str
    points: int
    fibres: dict = field(default_factory=dict)  # psi codes -> FibreStats
    eta: tuple | None = None

    def stats(self, eta) -> FibreStats:
        return self.fibres.get(tuple(eta), FibreStats())

    @staticmethod
    def predicted_smooth(eta) -> bool:
        """A fibre is predicted smooth exactly when psi_0 does not vanish on it."""
        return bool(eta[0])

    def smooth_observed(self, eta) -> bool:
        return self.stats(eta).all_regular

    def consistent(self) -> bool:
        """Criteria agree, Delta != 0 => regular, eta_0 != 0 => all regular,
        and the nilpotent points are exactly the eta = 0 fibre."""
        for eta, st in self.fibres.items():
            if st.disagreements or st.delta_nonzero_nonregular:
                return False
            if st.nilpotent != (st.count if not any(eta) else 0):
                return False
            if self.predicted_smooth(eta) and not st.all_regular:
                return False
        return True

    def as_dict(self) -> dict:
        f = self.ctx.field
        rows = []
        for eta in sorted(self.fibres):
            if self.eta is not None and eta != self.eta:
                continue
            st = self.fibres[eta]
            rows.append(
                {
                    "eta": [f.serialize(c) for c in eta],
                    **st.as_dict(),
                    "predicted_smooth": self.predicted_smooth(eta),
                    "all_regular": st.all_regular,
                }
            )
        return {
            "mode": self.mode,
            "points": self.points,
            "fibre_count": len(self.fibres),
            "consistent": self.consistent(),
            "fibres": rows,
        }


def _iter_points(ctx: RingCtx, mode: str, seed, count):
    f = ctx.field
    dim = ctx.n * ctx.N
    if mode == "exhaustive":
        if f.q**dim > EXHAUSTIVE_LIMIT:
            raise TooLarge(f"{f.q}^{dim} derivations exceed the exhaustive bound {EXHAUSTIVE_LIMIT}")
        for codes in itertools.product(range(f.q), repeat=dim):
            yield Derivation.from_vector(ctx, f.encode(list(codes)))
    elif mode == "sample":
        if seed is None or count is None:
            raise ValueError("sample mode needs a seed and a count")
        rng = np.random.default_rng(seed)
        for _ in range(count):
            yield Derivation.random(ctx, rng)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def fibre_scan(ctx: RingCtx, eta=None, mode: str = "exhaustive", seed=None, count=None) -> FibreReport:
    """Bucket derivations by psi and collect regularity data per fibre.

    ``eta`` (codes or FieldElts) restricts the report to one fibre; all
    fibres are still counted.
    """
    f = ctx.field
    if eta is not None:
        eta = tuple(f.elt(e).v for e in eta)
        if len(eta) != ctx.n:
            raise ValueError(f"expected {ctx.n} fibre coordinates")
    report = FibreReport(ctx, mode, 0, {}, eta)
    for D in _iter_points(ctx, mode, seed, count):
        key = psi(D).codes()
        st = report.fibres.setdefault(key, FibreStats())
        report.points += 1
        st.count += 1
        cert = is_regular(D)
        reg = bool(cert.consensus)
        if not cert.agree:
            st.disagreements += 1
        st.regular += reg
        st.nilpotent += D.is_nilpotent()
        st.semisimple += _is_semisimple(D)
        if delta(D):
            st.delta_nonzero += 1
            st.delta_nonzero_nonregular += not reg
    return report


def _is_semisimple(D: Derivation) -> bool:
    m = la.minpoly(D.ctx.field, D.matrix())
    return separable_part(m) == m
