"""Coordinate chart atlas for G(d, n) and C^n x G(d, n).

A chart is a pair of complementary coordinate index sets (w0, w1).  A plane
W transversal to span(e_i : i in w1) is the graph of a linear map
span(w0) -> span(w1) whose (n-d) x d matrix ``a`` satisfies

    z[w1[i]] = sum_j a[i][j] * z[w0[j]]     for every z in W.

Indices are 0-based throughout the library; :meth:`Chart.label` renders the
1-based form used in reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from gmpy2 import mpq

from .exactpoly import Polynomial, VariableSet, to_rational

__all__ = [
    "Chart",
    "PlaneMatrix",
    "PlaneBasis",
    "NotTransversalError",
    "chart_cover",
    "a_names",
    "chart_ring",
    "plane_from_matrix",
    "matrix_from_plane",
    "contains_subspace",
    "symbolic_plane",
]

FLOAT_TOL = 1e-9


class NotTransversalError(ValueError):
    """The plane meets the chart's W1 nontrivially, so it has no chart coordinates."""


@dataclass(frozen=True)
class Chart:
    n: int
    d: int
    w0: tuple[int, ...]
    w1: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w0", tuple(self.w0))
        object.__setattr__(self, "w1", tuple(self.w1))
        if len(self.w0) != self.d or len(self.w1) != self.n - self.d:
            raise ValueError("index sets do not match (n, d)")
        if sorted(self.w0 + self.w1) != list(range(self.n)):
            raise ValueError("w0 and w1 must partition range(n)")
        if list(self.w0) != sorted(self.w0) or list(self.w1) != sorted(self.w1):
            raise ValueError("chart index sets must be increasing")

    @classmethod
    def from_w0(cls, n: int, w0: Sequence[int]) -> "Chart":
        w0 = tuple(sorted(w0))
        return cls(n, len(w0), w0, tuple(i for i in range(n) if i not in w0))

    @property
    def codim(self) -> int:
        return self.n - self.d

    def label(self) -> str:
        fmt = lambda s: "{" + ",".join(str(i + 1) for i in s) + "}"
        return f"({fmt(self.w0)},{fmt(self.w1)})"


def chart_cover(n: int, d: int) -> list[Chart]:
    """All C(n, d) coordinate charts, w0 in lexicographic order."""
    if not 1 <= d <= n - 1:
        raise ValueError(f"plane dimension d={d} out of range 1..{n - 1}")
    return [Chart.from_w0(n, w0) for w0 in itertools.combinations(range(n), d)]


def a_names(chart: Chart) -> list[str]:
    """Chart coordinate names, row-major: a11, a12, ..., a(n-d)d."""
    sep = "_" if max(chart.codim, chart.d) >= 10 else ""
    return [
        f"a{i + 1}{sep}{j + 1}" for i in range(chart.codim) for j in range(chart.d)
    ]


def chart_ring(z_names: Sequence[str], chart: Chart) -> VariableSet:
    """The ring of C^n x (chart): z-block followed by the a-block."""
    if len(z_names) != chart.n:
        raise ValueError("number of z-variables must equal n")
    return VariableSet(tuple(z_names) + tuple(a_names(chart)),
                       (tuple(z_names), tuple(a_names(chart))))


def _is_exact_scalar(x) -> bool:
    return not isinstance(x, (float, complex, np.floating, np.complexfloating))


@dataclass(frozen=True)
class PlaneMatrix:
    """Chart coordinates ``a`` of a plane; ``kind`` is 'exact' or 'float'."""

    chart: Chart
    a: object
    kind: str = "exact"

    def __post_init__(self):
        rows, cols = self.chart.codim, self.chart.d
        if self.kind == "exact":
            a = tuple(tuple(to_rational(x) for x in row) for row in self.a)
            if len(a) != rows or any(len(r) != cols for r in a):
                raise ValueError("matrix shape does not match the chart")
        elif self.kind == "float":
            a = np.asarray(self.a, dtype=complex).reshape(rows, cols)
        else:
            raise ValueError(f"unknown scalar kind {self.kind!r}")
        object.__setattr__(self, "a", a)

    @classmethod
    def zero(cls, chart: Chart, kind: str = "exact") -> "PlaneMatrix":
        return cls(chart, [[0] * chart.d for _ in range(chart.codim)], kind)

    def entry(self, i: int, j: int):
        return self.a[i][j] if self.kind == "exact" else self.a[i, j]

    def __eq__(self, other):
        if not isinstance(other, PlaneMatrix) or self.chart != other.chart:
            return NotImplemented
        if self.kind != other.kind:
            raise TypeError("refusing to compare exact and float plane matrices")
        if self.kind == "exact":
            return self.a == other.a
        return bool(np.allclose(self.a, other.a, atol=FLOAT_TOL))

    def __hash__(self):
        return hash((self.chart, self.kind, self.a if self.kind == "exact" else None))


@dataclass(frozen=True)
class PlaneBasis:
    """A d-plane in C^n (or Q^n) given by spanning columns."""

    n: int
    columns: object
    kind: str = "exact"

    def __post_init__(self):
        if self.kind == "exact":
            cols = tuple(tuple(to_rational(x) for x in c) for c in self.columns)
            if any(len(c) != self.n for c in cols):
                raise ValueError("column length must equal n")
        elif self.kind == "float":
            cols = np.asarray(self.columns, dtype=complex).reshape(-1, self.n).T
        else:
            raise ValueError(f"unknown scalar kind {self.kind!r}")
        object.__setattr__(self, "columns", cols)

    @property
    def dim(self) -> int:
        return len(self.columns) if self.kind == "exact" else self.columns.shape[1]

    def column_list(self) -> list:
        if self.kind == "exact":
            return [list(c) for c in self.columns]
        return [self.columns[:, j] for j in range(self.columns.shape[1])]

    def as_array(self) -> np.ndarray:
        """Columns as an n x dim complex array."""
        if self.kind == "float":
            return self.columns
        return np.array([[complex(float(x)) for x in c] for c in self.columns],
                        dtype=complex).reshape(-1, self.n).T


def plane_from_matrix(p: PlaneMatrix) -> PlaneBasis:
    """Graph basis: column j is e_{w0[j]} + sum_i a[i][j] e_{w1[i]}."""
    ch = p.chart
    cols = []
    for j in range(ch.d):
        v = [0] * ch.n
        v[ch.w0[j]] = 1
        for i in range(ch.codim):
            v[ch.w1[i]] = p.entry(i, j)
        cols.append(v)
    if p.kind == "float":
        return PlaneBasis(ch.n, np.array(cols, dtype=complex), "float")
    return PlaneBasis(ch.n, cols, "exact")


def _solve_exact(P0: list[list[mpq]], P1: list[list[mpq]]) -> list[list[mpq]]:
    """Return X with X @ P0 = P1 (P0 square), by Gauss-Jordan on P0^T."""
    d = len(P0)
    # solve P0^T X^T = P1^T
    A = [[P0[c][r] for c in range(d)] for r in range(d)]
    B = [[P1[i][r] for i in range(len(P1))] for r in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if A[r][col]), None)
        if piv is None:
            raise NotTransversalError("projection onto W0 is singular on this plane")
        A[col], A[piv] = A[piv], A[col]
        B[col], B[piv] = B[piv], B[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        B[col] = [x * inv for x in B[col]]
        for r in range(d):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                B[r] = [x - f * y for x, y in zip(B[r], B[col])]
    return [[B[r][i] for r in range(d)] for i in range(len(P1))]


def matrix_from_plane(chart: Chart, W: PlaneBasis) -> PlaneMatrix:
    """Chart coordinates L = pi_1 o (pi_0|_W)^-1 of the plane W."""
    if W.n != chart.n or W.dim != chart.d:
        raise ValueError("plane does not match the chart's (n, d)")
    if W.kind == "exact":
        cols = W.column_list()
        P0 = [[cols[j][r] for j in range(chart.d)] for r in chart.w0]
        P1 = [[cols[j][r] for j in range(chart.d)] for r in chart.w1]
        return PlaneMatrix(chart, _solve_exact(P0, P1), "exact")
    V = W.columns
    P0 = V[list(chart.w0), :]
    P1 = V[list(chart.w1), :]
    s = np.linalg.svd(P0, compute_uv=False)
    if s[-1] <= FLOAT_TOL * max(s[0], 1.0):
        raise NotTransversalError("projection onto W0 is singular on this plane")
    return PlaneMatrix(chart, P1 @ np.linalg.inv(P0), "float")


def contains_subspace(p: PlaneMatrix, V: PlaneBasis) -> bool:
    """Whether every column of V satisfies the chart equations of the plane p."""
    ch = p.chart
    if V.n != ch.n:
        raise ValueError("ambient dimensions differ")
    if p.kind != V.kind:
        raise TypeError("refusing to mix exact and float data")
    for v in V.column_list():
        for i in range(ch.codim):
            r = v[ch.w1[i]] - sum(p.entry(i, j) * v[ch.w0[j]] for j in range(ch.d))
            if p.kind == "exact":
                if r:
                    return False
            elif abs(r) > FLOAT_TOL:
                return False
    return True


def symbolic_plane(chart: Chart, ring: VariableSet) -> list[list[Polynomial]]:
    """n x d matrix of polynomials whose columns span the chart's generic plane."""
    names = a_names(chart)
    M = [[Polynomial.zero(ring) for _ in range(chart.d)] for _ in range(chart.n)]
    for j in range(chart.d):
        M[chart.w0[j]][j] = Polynomial.constant(1, ring)
        for i in range(chart.codim):
            M[chart.w1[i]][j] = Polynomial.var(names[i * chart.d + j], ring)
    return M
