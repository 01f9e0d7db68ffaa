"""The canonical plane distribution H(z, W) = W x T_W G(d, n) in one chart.

In the chart (w0, w1) the distribution is the common kernel of the n-d
one-forms

    omega_i = dz_{w1[i]} - sum_j a_ij dz_{w0[j]},      i = 1..n-d,

which involve no da-directions.  Forms are stored as coefficient rows over
the chart coordinates (z-block then a-block).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactpoly import Polynomial, VariableSet
from .grassmann import Chart, PlaneMatrix, a_names, chart_ring

__all__ = [
    "DistributionForms",
    "TangentVector",
    "ChartMismatchError",
    "forms_for_chart",
    "evaluate_form",
    "coefficient_matrix",
]


class ChartMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class TangentVector:
    z_part: tuple
    a_part: tuple  # (n-d) x d, row-major nested tuples

    def __post_init__(self):
        object.__setattr__(self, "z_part", tuple(self.z_part))
        object.__setattr__(self, "a_part", tuple(tuple(r) for r in self.a_part))


@dataclass(frozen=True)
class DistributionForms:
    chart: Chart
    ring: VariableSet
    rows: tuple  # n-d rows, each a tuple of Polynomials over ``ring``

    def __len__(self):
        return len(self.rows)

    def form_strings(self) -> list[str]:
        out = []
        z = self.ring.names[: self.chart.n]
        for row in self.rows:
            parts = []
            for name, c in zip(z, row):
                if not c:
                    continue
                s = c.to_string()
                if s == "1":
                    term = f"d{name}"
                elif s == "-1":
                    term = f"-d{name}"
                elif len(c.terms) == 1:
                    term = f"{s}*d{name}"
                else:
                    term = f"({s})*d{name}"
                parts.append(term)
            text = parts[0]
            for t in parts[1:]:
                text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
            out.append(text)
        return out


def forms_for_chart(chart: Chart, z_names: Sequence[str] | None = None) -> DistributionForms:
    z_names = list(z_names) if z_names is not None else [f"z{i + 1}" for i in range(chart.n)]
    ring = chart_ring(z_names, chart)
    names = a_names(chart)
    N = len(ring)
    rows = []
    for i in range(chart.codim):
        row = [Polynomial.zero(ring)] * N
        row[chart.w1[i]] = Polynomial.constant(1, ring)
        for j in range(chart.d):
            row[chart.w0[j]] = -Polynomial.var(names[i * chart.d + j], ring)
        rows.append(tuple(row))
    return DistributionForms(chart, ring, tuple(rows))


def evaluate_form(F: DistributionForms, point_a: PlaneMatrix, v: TangentVector) -> list:
    """Values omega_i(v) at the plane ``point_a``; all zero iff v lies in H."""
    ch = F.chart
    if point_a.chart != ch:
        raise ChartMismatchError("plane coordinates belong to another chart")
    if len(v.z_part) != ch.n or len(v.a_part) != ch.codim or any(
        len(r) != ch.d for r in v.a_part
    ):
        raise ChartMismatchError("tangent vector shape does not match the chart")
    out = []
    for i in range(ch.codim):
        val = v.z_part[ch.w1[i]]
        for j in range(ch.d):
            val = val - point_a.entry(i, j) * v.z_part[ch.w0[j]]
        out.append(val)
    return out


def coefficient_matrix(F: DistributionForms, point_a: PlaneMatrix) -> np.ndarray:
    """(n-d) x (n + d(n-d)) numeric matrix of the forms at a plane."""
    ch = F.chart
    if point_a.chart != ch:
        raise ChartMismatchError("plane coordinates belong to another chart")
    N = len(F.ring)
    M = np.zeros((ch.codim, N), dtype=complex)
    for i in range(ch.codim):
        M[i, ch.w1[i]] = 1.0
        for j in range(ch.d):
            M[i, ch.w0[j]] = -complex(point_a.entry(i, j))
    return M
