"""Schubert conditions and polar varieties through the ell-conormal.

For a linear space D of dimension n - d + k - 1 the Schubert condition

    c_k(D) = { W in G(ell, n) : dim (W meet D) >= k + ell - d }

becomes a rank condition on the concatenation [W | D]: with m = k + ell - d,
dim(W meet D) >= m iff rank [W | D] <= ell + dim D - m.  The polar variety
P_k(X; D) is the image in X of the part of C_ell(X) lying over c_k(D).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from .conormal import AffineVariety, NotOnVarietyError, conormal_ideal, fiber_ideal
from .exactpoly import (
    Ideal,
    Polynomial,
    VariableSet,
    eliminate,
    ideal_dimension,
    intersect,
    minors,
)
from .grassmann import Chart, PlaneBasis, a_names, chart_cover, symbolic_plane

__all__ = [
    "EMPTY",
    "SchubertCondition",
    "PolarResult",
    "FiberCheck",
    "PolarVote",
    "random_condition",
    "schubert_ideal",
    "polar_ideal",
    "polar_all_charts",
    "polar_fiber_dimension_check",
    "polar_fiber_check_all_charts",
    "polar_draws",
]

EMPTY = "empty"


@dataclass(frozen=True)
class SchubertCondition:
    D: PlaneBasis
    k: int
    ell: int
    d: int

    def __post_init__(self):
        n = self.D.n
        if self.D.kind != "exact":
            raise TypeError("D must be given exactly")
        if not 1 <= self.k <= self.d - 1:
            raise ValueError(f"k={self.k} outside 1..{self.d - 1}")
        if not self.d <= self.ell <= n - 1:
            raise ValueError(f"ell={self.ell} outside {self.d}..{n - 1}")
        if self.D.dim != n - self.d + self.k - 1:
            raise ValueError(f"dim D must be n - d + k - 1 = {n - self.d + self.k - 1}")

    @property
    def n(self) -> int:
        return self.D.n

    @property
    def m(self) -> int:
        return self.k + self.ell - self.d

    def to_dict(self) -> dict:
        return {
            "k": self.k, "ell": self.ell, "d": self.d, "m": self.m,
            "D": [[_q(x) for x in col] for col in self.D.column_list()],
        }


def _q(x: mpq) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def random_condition(n: int, d: int, k: int, ell: int, rng: np.random.Generator) -> SchubertCondition:
    """D with entries u/q, u uniform in [-100, 100] and q uniform in [1, 10]."""
    dim = n - d + k - 1
    num = rng.integers(-100, 101, size=(dim, n))
    den = rng.integers(1, 11, size=(dim, n))
    cols = [[mpq(int(a), int(b)) for a, b in zip(r, s)] for r, s in zip(num, den)]
    return SchubertCondition(PlaneBasis(n, cols, "exact"), k, ell, d)


def schubert_ideal(S: SchubertCondition, chart: Chart, m: int | None = None) -> Ideal:
    """Ideal of c_k(D) in the chart's a-variables.

    ``m`` overrides the required intersection dimension k + ell - d; m = 0
    imposes no condition.
    """
    if chart.n != S.n or chart.d != S.ell:
        raise ValueError("chart shape does not match (n, ell)")
    ring = VariableSet(tuple(a_names(chart)))
    m = S.m if m is None else m
    size = S.ell + S.D.dim - m + 1
    if m <= 0 or size > min(S.n, S.ell + S.D.dim):
        return Ideal([], ring)
    W = symbolic_plane(chart, ring)
    Dcols = S.D.column_list()
    M = [W[r] + [Polynomial.constant(c[r], ring) for c in Dcols] for r in range(S.n)]
    return Ideal([f for f in minors(M, size) if f], ring)


@dataclass(frozen=True)
class PolarResult:
    ideal: Ideal
    dim: int | None  # None when P_k is empty
    fiber_dim_at_0: object = None
    charts: tuple = ()

    @property
    def is_empty(self) -> bool:
        return self.dim is None

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal.sorted_strings(),
            "dim": self.dim,
            "empty": self.is_empty,
            "fiber_dim_at_0": self.fiber_dim_at_0,
            "charts": list(self.charts),
        }


def _dim_or_none(I: Ideal):
    return None if I.is_unit() else ideal_dimension(I)


def polar_ideal(X: AffineVariety, S: SchubertCondition, chart: Chart,
                m: int | None = None) -> PolarResult:
    C = conormal_ideal(X, S.ell, chart)
    sch = schubert_ideal(S, chart, m).change_ring(C.ring)
    P = eliminate(C.ideal + sch, a_names(chart))
    return PolarResult(P, _dim_or_none(P), charts=(chart.label(),))


def polar_all_charts(X: AffineVariety, S: SchubertCondition) -> PolarResult:
    """P_k over the whole Grassmannian: intersection of the chart eliminations."""
    total = None
    for ch in chart_cover(X.n, S.ell):
        part = polar_ideal(X, S, ch).ideal
        if part.is_unit():
            continue
        total = part if total is None else intersect(total, part)
    if total is None:
        total = Ideal([Polynomial.constant(1, X.vars)], X.vars)
    total = total.reduced() if not total.is_zero() else total
    return PolarResult(total, _dim_or_none(total), charts=("all",))


@dataclass(frozen=True)
class FiberCheck:
    value: object  # True, False or EMPTY
    lhs: int | None
    rhs: int | None
    fiber_dim: int | None

    def to_dict(self) -> dict:
        return {"value": self.value, "lhs": self.lhs, "rhs": self.rhs,
                "fiber_dim_at_0": self.fiber_dim}


def _fiber_parts(X: AffineVariety, S: SchubertCondition, chart: Chart):
    C = conormal_ideal(X, S.ell, chart)
    if C.is_empty():
        return None, None
    try:
        F = fiber_ideal(C, [0] * X.n)
    except NotOnVarietyError:
        return None, None
    if F.is_unit():
        return None, None
    both = F + schubert_ideal(S, chart).change_ring(F.vars)
    return ideal_dimension(F), _dim_or_none(both)


def _fiber_verdict(S: SchubertCondition, fdim, lhs) -> FiberCheck:
    if fdim is None or lhs is None:
        return FiberCheck(EMPTY, None, None, fdim)
    rhs = fdim - (S.ell - S.d) * (S.n - S.ell) - S.k
    return FiberCheck(lhs == rhs, lhs, rhs, fdim)


def polar_fiber_dimension_check(X: AffineVariety, S: SchubertCondition, chart: Chart) -> FiberCheck:
    """dim(nu^-1(0) meet gamma^-1(c_k(D))) against dim nu^-1(0) - (ell-d)(n-ell) - k."""
    return _fiber_verdict(S, *_fiber_parts(X, S, chart))


def polar_fiber_check_all_charts(X: AffineVariety, S: SchubertCondition) -> FiberCheck:
    """The same check with dimensions maximized over the charts that meet each set."""
    fdims, lhss = [], []
    for ch in chart_cover(X.n, S.ell):
        f, l = _fiber_parts(X, S, ch)
        if f is not None:
            fdims.append(f)
        if l is not None:
            lhss.append(l)
    return _fiber_verdict(S, max(fdims, default=None), max(lhss, default=None))


@dataclass(frozen=True)
class PolarVote:
    dims: tuple  # per draw, None for empty
    majority: object
    non_generic: tuple  # draw indices disagreeing with the majority
    fiber_checks: tuple
    conditions: tuple

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "majority_dim": self.majority,
            "non_generic_draws": list(self.non_generic),
            "fiber_checks": [f.to_dict() for f in self.fiber_checks],
            "conditions": [c.to_dict() for c in self.conditions],
        }


def polar_draws(X: AffineVariety, ell: int, k: int, draws: int = 5, seed: int = 0,
                chart: Chart | None = None) -> PolarVote:
    """Repeat the polar construction for random D and vote on the dimension."""
    rng = np.random.default_rng(seed)
    dims, fibers, conds = [], [], []
    for _ in range(draws):
        S = random_condition(X.n, X.k, k, ell, rng)
        conds.append(S)
        if chart is None:
            dims.append(polar_all_charts(X, S).dim)
            fibers.append(polar_fiber_check_all_charts(X, S))
        else:
            dims.append(polar_ideal(X, S, chart).dim)
            fibers.append(polar_fiber_dimension_check(X, S, chart))
    majority = Counter(dims).most_common(1)[0][0]
    odd = tuple(i for i, x in enumerate(dims) if x != majority)
    return PolarVote(tuple(dims), majority, odd, tuple(fibers), tuple(conds))
