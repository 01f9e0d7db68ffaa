"""Integral subvarieties of (C^n x G(d, n), H) given by chart ideals.

Z is integral when T Z sits inside H at every smooth point.  With r the
codimension of Z, this says each distribution form omega_i lies in the row
span of the Jacobian of Z there, so every (r+1)-minor of [Jac; omega_i]
vanishes on the smooth part.  Only minors through the omega_i row can be
nonzero on the smooth part (the others are (r+1)-minors of Jac itself), and
those are expanded along that row using the r-minors of Jac.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Sequence

from .conormal import AffineVariety, ConormalChartIdeal, GenericRankError, conormal_ideal
from .distribution import forms_for_chart
from .exactpoly import (
    Ideal,
    Polynomial,
    VariableSet,
    determinant,
    eliminate,
    ideal_dimension,
    jacobian,
    normal_form,
    radical_membership,
    saturate,
)
from .grassmann import Chart, a_names, chart_ring

__all__ = [
    "ChartSubvariety",
    "IntegralityVerdict",
    "Characterization",
    "CharacterizationResult",
    "EmptySmoothLocusError",
    "projection_ideal",
    "check_integral",
    "dimension_bound_check",
    "characterize",
]


class EmptySmoothLocusError(ValueError):
    """All r-minors of the Jacobian vanish on Z (for instance, a non-reduced ideal)."""


@dataclass
class ChartSubvariety:
    chart: Chart
    ideal: Ideal
    cached_dim: int | None = field(default=None, repr=False)

    def __post_init__(self):
        names = self.ideal.vars.names
        n, tail = self.chart.n, tuple(a_names(self.chart))
        if len(names) != n + len(tail) or names[n:] != tail:
            raise ValueError(
                f"ring {names} does not match chart {self.chart.label()}: "
                f"expected {n} z-variables followed by {', '.join(tail)}"
            )
        if self.ideal.is_unit():
            raise ValueError("Z is empty: its ideal is the unit ideal")

    @classmethod
    def from_conormal(cls, C: ConormalChartIdeal) -> "ChartSubvariety":
        return cls(C.chart, C.ideal)

    @classmethod
    def from_polynomials(cls, chart: Chart, polys: Sequence[Polynomial]) -> "ChartSubvariety":
        ring = polys[0].vars
        return cls(chart, Ideal(polys, ring))

    @property
    def z_names(self) -> tuple:
        return self.ideal.vars.names[: self.chart.n]

    @property
    def dim(self) -> int:
        if self.cached_dim is None:
            self.cached_dim = ideal_dimension(self.ideal)
        return self.cached_dim


@dataclass(frozen=True)
class IntegralityVerdict:
    is_integral: bool
    dim_Z: int
    t: int | None = None
    bound: int | None = None
    witness: str | None = None
    t_within_d: bool | None = None
    bound_holds: bool | None = None
    bound_attained: bool | None = None

    def to_dict(self) -> dict:
        return {
            "is_integral": self.is_integral,
            "dim_Z": self.dim_Z,
            "t": self.t,
            "bound": self.bound,
            "t_within_d": self.t_within_d,
            "bound_holds": self.bound_holds,
            "bound_attained": self.bound_attained,
            "witness": self.witness,
        }


def projection_ideal(Z: ChartSubvariety) -> Ideal:
    """Ideal of the closure of pi(Z) in C^n."""
    return eliminate(Z.ideal, a_names(Z.chart))


def _row_minors(jac, r):
    """All r x r minors of ``jac`` keyed by (row subset, column subset)."""
    N = len(jac[0])
    out = {}
    for R in itertools.combinations(range(len(jac)), r):
        for C in itertools.combinations(range(N), r):
            out[R, C] = determinant([[jac[i][c] for c in C] for i in R])
    return out


def check_integral(Z: ChartSubvariety) -> IntegralityVerdict:
    ring = Z.ideal.vars
    N = len(ring)
    dim_Z = Z.dim
    r = N - dim_Z
    if r == 0:
        # Z is the whole chart; its tangent space is everything
        return IntegralityVerdict(False, dim_Z, witness="Z is the whole chart")
    gens = list(Z.ideal.generators)
    jac = jacobian(gens)
    if len(jac) < r:
        raise EmptySmoothLocusError("fewer generators than the codimension of Z")
    rminor = _row_minors(jac, r)
    M = [m for m in dict.fromkeys(rminor.values()) if m]
    if not any(not radical_membership(m, Z.ideal) for m in M):
        raise EmptySmoothLocusError(
            "every maximal minor of the Jacobian vanishes on Z; no smooth points detected"
        )
    gb = Z.ideal.groebner()
    sat = None
    forms = forms_for_chart(Z.chart, Z.z_names)
    for idx, omega in enumerate(forms.rows, start=1):
        omega = [w.change_ring(ring) for w in omega]
        support = [c for c in range(N) if omega[c]]
        for R in itertools.combinations(range(len(jac)), r):
            for C in itertools.combinations(range(N), r + 1):
                if not set(C) & set(support):
                    continue
                total = Polynomial.zero(ring)
                for pos, c in enumerate(C):
                    if not omega[c]:
                        continue
                    sub = rminor[R, C[:pos] + C[pos + 1:]]
                    if sub:
                        term = omega[c] * sub
                        total = total - term if (r + pos) % 2 else total + term
                if not total or not normal_form(total, gb):
                    continue
                if sat is None:
                    sat = saturate(Z.ideal, Ideal(M, ring))
                if not radical_membership(total, sat):
                    cols = ",".join(ring.names[c] for c in C)
                    witness = f"omega{idx} minor [{cols}] = {total.primitive().to_string()}"
                    return IntegralityVerdict(False, dim_Z, witness=witness)
    return IntegralityVerdict(True, dim_Z)


def dimension_bound_check(Z: ChartSubvariety, verdict: IntegralityVerdict | None = None) -> IntegralityVerdict:
    """Fill t and the bound t + (d - t)(n - d) and test both inequalities."""
    verdict = verdict or check_integral(Z)
    n, d = Z.chart.n, Z.chart.d
    t = ideal_dimension(projection_ideal(Z))
    bound = t + (d - t) * (n - d)
    return replace(
        verdict,
        t=t,
        bound=bound,
        t_within_d=t <= d,
        bound_holds=verdict.dim_Z <= bound,
        bound_attained=verdict.dim_Z == bound,
    )


class Characterization(enum.Enum):
    IS_D_CONORMAL_OF_IMAGE = "IsDConormalOfImage"
    INTEGRAL_BUT_NOT_MAXIMAL = "IntegralButNotMaximal"
    NOT_INTEGRAL = "NotIntegral"


@dataclass(frozen=True)
class CharacterizationResult:
    kind: Characterization
    verdict: IntegralityVerdict
    projection: tuple = ()
    cross_validated: bool | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind.value,
            "integrality": self.verdict.to_dict(),
            "projection_ideal": list(self.projection),
            "cross_validated": self.cross_validated,
            "note": self.note,
        }


def _mutual_radical(I: Ideal, J: Ideal) -> bool:
    return all(radical_membership(g, J) for g in I.generators) and all(
        radical_membership(g, I) for g in J.generators
    )


def characterize(Z: ChartSubvariety) -> CharacterizationResult:
    verdict = check_integral(Z)
    if not verdict.is_integral:
        return CharacterizationResult(Characterization.NOT_INTEGRAL, verdict)
    verdict = dimension_bound_check(Z, verdict)
    P = projection_ideal(Z)
    proj = tuple(P.sorted_strings())
    if not (verdict.t_within_d and verdict.bound_attained):
        return CharacterizationResult(Characterization.INTEGRAL_BUT_NOT_MAXIMAL, verdict, proj)
    # rebuild C_d of the image and compare
    note = None
    try:
        X = AffineVariety(P.change_ring(VariableSet(Z.z_names)))
        rebuilt = conormal_ideal(X, Z.chart.d, Z.chart).ideal
        ok = _mutual_radical(rebuilt.change_ring(Z.ideal.vars), Z.ideal)
        if not ok:
            note = "rebuilt d-conormal of the projection differs from Z"
    except GenericRankError as exc:
        ok = False
        note = f"projection could not be rebuilt: {exc}"
    return CharacterizationResult(Characterization.IS_D_CONORMAL_OF_IMAGE, verdict, proj, ok, note)
