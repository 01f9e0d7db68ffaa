"""d-conormal spaces C_d(X) as chart ideals.

For X = V(g_1..g_s) of dimension k and a chart (w0, w1) of G(d, n), a plane
W with coordinates a contains T_z X exactly when each linear equation

    rho_i = e*_{w1[i]} - sum_j a_ij e*_{w0[j]}

of W lies in the row span of the Jacobian at z.  With r = n - k this is the
vanishing of the (r+1)-minors of the stacked matrices [Jac; rho_i].  The
closure over the smooth locus is the saturation by the r-minors of Jac.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .exactpoly import (
    EmptyVarietyError,
    Ideal,
    Polynomial,
    VariableSet,
    determinant,
    ideal_dimension,
    jacobian,
    normal_form,
    radical_membership,
    saturate,
)
from .grassmann import Chart, a_names, chart_cover, chart_ring
from .numlin import Subspace, intersection_dim, orthonormalize
from .parsing import parse_scalar
from .sampling import PolySystem, sample_smooth_points, tangent_basis

__all__ = [
    "AffineVariety",
    "ConormalChartIdeal",
    "TransversalityVerdict",
    "NotOnVarietyError",
    "GenericRankError",
    "conormal_ideal",
    "conormal_all_charts",
    "nash_ideal",
    "fiber_ideal",
    "fiber_dimension",
    "dimension_formula_check",
    "expected_dimension",
    "conormal_dimension",
    "transversality_check",
]


class NotOnVarietyError(ValueError):
    pass


class GenericRankError(ValueError):
    """Generic Jacobian rank disagrees with n - dim X (non-reduced or mixed input)."""


class AffineVariety:
    """X = V(ideal) in C^n; the dimension k is computed once and cached."""

    def __init__(self, ideal: Ideal):
        if ideal.is_unit():
            raise EmptyVarietyError("the unit ideal defines the empty variety")
        self.ideal = ideal
        self._k = None
        self._rank_checked = False

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], variables: VariableSet | None = None):
        return cls(Ideal(polys, variables))

    @property
    def vars(self) -> VariableSet:
        return self.ideal.vars

    @property
    def n(self) -> int:
        return len(self.ideal.vars)

    @property
    def k(self) -> int:
        if self._k is None:
            self._k = ideal_dimension(self.ideal)
        return self._k

    def __repr__(self):
        return f"AffineVariety({list(map(str, self.ideal.generators))}, n={self.n})"

    def check_generic_rank(self) -> None:
        """Reject input whose generic Jacobian rank is not n - k."""
        if self._rank_checked:
            return
        r = self.n - self.k
        gens = self.ideal.generators
        if r > 0:
            jac = jacobian(gens, self.vars.names)
            if len(jac) < r or all(
                radical_membership(m, self.ideal) for m in _iter_minors(jac, r)
            ):
                raise GenericRankError(
                    f"Jacobian rank is below n - dim X = {r} on X; "
                    "the input ideal is not reduced or not equidimensional"
                )
            if len(jac) > r and not all(
                radical_membership(m, self.ideal) for m in _iter_minors(jac, r + 1)
            ):
                raise GenericRankError("Jacobian rank exceeds n - dim X on X")
        self._rank_checked = True

    def contains_point(self, point) -> bool:
        pt = [parse_scalar(v) for v in point]
        if len(pt) != self.n:
            raise ValueError("point has the wrong number of coordinates")
        vs = VariableSet(("I_",))
        I = Polynomial.var("I_", vs)
        rel = I * I + 1
        mapping = {nm: re + im * I for nm, (re, im) in zip(self.vars.names, pt)}
        return all(
            normal_form(g.subs(mapping, target=vs), [rel]).is_zero()
            for g in self.ideal.generators
        )


def _iter_minors(M, size):
    rows, cols = len(M), len(M[0])
    for R in itertools.combinations(range(rows), size):
        for C in itertools.combinations(range(cols), size):
            yield determinant([[M[r][c] for c in C] for r in R])


@dataclass
class ConormalChartIdeal:
    variety: AffineVariety
    d: int
    chart: Chart
    ideal: Ideal
    _dim: int | None = field(default=None, repr=False)

    @property
    def ring(self) -> VariableSet:
        return self.ideal.vars

    @property
    def a_vars(self) -> list[str]:
        return a_names(self.chart)

    @property
    def z_vars(self) -> list[str]:
        return list(self.variety.vars.names)

    def is_empty(self) -> bool:
        return self.ideal.is_unit()

    def dimension(self) -> int | None:
        """Dimension of the chart piece; None when it misses this chart."""
        if self._dim is None and not self.is_empty():
            self._dim = ideal_dimension(self.ideal)
        return self._dim


def expected_dimension(n: int, d: int, k: int) -> int:
    return k + (d - k) * (n - d)


def conormal_ideal(X: AffineVariety, d: int, chart: Chart) -> ConormalChartIdeal:
    n, k = X.n, X.k
    if not k <= d <= n - 1:
        raise ValueError(f"d={d} outside the admissible range {k}..{n - 1}")
    if chart.n != n or chart.d != d:
        raise ValueError("chart does not match (n, d)")
    X.check_generic_rank()
    ring = chart_ring(X.vars.names, chart)
    gens = [g.change_ring(ring) for g in X.ideal.generators]
    r = n - k
    jac = jacobian(gens, X.vars.names)
    rows = range(len(jac))
    rminor = {}
    for R in itertools.combinations(rows, r):
        for C in itertools.combinations(range(n), r):
            rminor[R, C] = determinant([[jac[i][c] for c in C] for i in R])
    sat_gens = []
    for m in rminor.values():
        if m and m not in sat_gens:
            sat_gens.append(m)

    names = a_names(chart)
    raw = list(gens)
    for i in range(chart.codim):
        rho = [Polynomial.zero(ring)] * n
        rho[chart.w1[i]] = Polynomial.constant(1, ring)
        for j in range(chart.d):
            rho[chart.w0[j]] = -Polynomial.var(names[i * chart.d + j], ring)
        # (r+1)-minors through the rho row, expanded along that row
        for R in itertools.combinations(rows, r):
            for C in itertools.combinations(range(n), r + 1):
                total = Polynomial.zero(ring)
                for pos, c in enumerate(C):
                    if not rho[c]:
                        continue
                    sub = rminor[R, C[:pos] + C[pos + 1:]]
                    if sub:
                        term = rho[c] * sub
                        total = total - term if (r + pos) % 2 else total + term
                if total:
                    raw.append(total)
    if len(jac) > r:
        raw.extend(m for m in _iter_minors(jac, r + 1) if m)
    ideal = saturate(Ideal(raw, ring), Ideal(sat_gens, ring)).reduced()
    return ConormalChartIdeal(X, d, chart, ideal)


def conormal_all_charts(X: AffineVariety, d: int) -> list[ConormalChartIdeal]:
    return [conormal_ideal(X, d, ch) for ch in chart_cover(X.n, d)]


def nash_ideal(X: AffineVariety, chart: Chart) -> ConormalChartIdeal:
    """Nash modification chart ideal: the d = dim X case."""
    return conormal_ideal(X, X.k, chart)


def fiber_ideal(C: ConormalChartIdeal, point) -> Ideal:
    """Ideal of the chart slice of the fiber over ``point`` in the a-variables.

    Coordinates may be Gaussian rationals; then an extra variable ``I_`` with
    relation I_^2 + 1 = 0 is adjoined, which does not change dimensions.
    """
    X = C.variety
    pt = [parse_scalar(v) for v in point]
    if len(pt) != X.n:
        raise ValueError("point has the wrong number of coordinates")
    if not X.contains_point(pt):
        raise NotOnVarietyError(f"point {point} is not on X")
    names = list(C.a_vars)
    complex_pt = any(im for _, im in pt)
    if complex_pt:
        names.append("I_")
    vs = VariableSet(tuple(names))
    if complex_pt:
        I = Polynomial.var("I_", vs)
        mapping = {nm: re + im * I for nm, (re, im) in zip(X.vars.names, pt)}
    else:
        mapping = {nm: re for nm, (re, _) in zip(X.vars.names, pt)}
    gens = [g.subs(mapping, target=vs) for g in C.ideal.groebner()]
    if complex_pt:
        gens.append(I * I + 1)
    return Ideal(gens, vs)


def fiber_dimension(C: ConormalChartIdeal, point) -> int | None:
    """Dimension of the chart slice of the fiber; None when the slice is empty."""
    F = fiber_ideal(C, point)
    if F.is_unit():
        return None
    return ideal_dimension(F)


def dimension_formula_check(C: ConormalChartIdeal) -> bool:
    if C.is_empty():
        return False
    X = C.variety
    return C.dimension() == expected_dimension(X.n, C.d, X.k)


def conormal_dimension(X: AffineVariety, d: int) -> int:
    """dim C_d(X) as the maximum over the chart pieces that are nonempty."""
    dims = [C.dimension() for C in conormal_all_charts(X, d)]
    return max(x for x in dims if x is not None)


@dataclass(frozen=True)
class TransversalityVerdict:
    passed: bool
    checked: int
    intersection_dims: tuple
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "max_intersection_dim": max(self.intersection_dims, default=0),
            "witness": None if self.witness is None else [
                [round(float(z.real), 12), round(float(z.imag), 12)] for z in self.witness
            ],
        }


def transversality_check(Z, samples: int = 25, seed: int = 0, tol: float = 1e-6) -> TransversalityVerdict:
    """Sample smooth points of Z and test T Z meets 0 x T_W G(d, n) only in 0.

    ``Z`` is any object with ``ideal`` and ``chart`` attributes whose ring is
    the chart ring (z-block first).
    """
    ideal = Z.ideal
    n = Z.chart.n
    N = len(ideal.vars)
    dim = ideal_dimension(ideal)
    pts = sample_smooth_points(ideal, samples, seed=seed, dim=dim)
    system = PolySystem(ideal.groebner())
    grass = Subspace.coordinate(N, range(n, N))
    dims = []
    witness = None
    for x in pts:
        T = tangent_basis(system.jacobian(x), dim)
        if T.shape[1] == 0:
            dims.append(0)
            continue
        TZ = orthonormalize(T)
        k = intersection_dim(TZ, grass, tol)
        dims.append(k)
        if k and witness is None:
            witness = tuple(x)
    return TransversalityVerdict(all(k == 0 for k in dims), len(pts), tuple(dims), witness)

