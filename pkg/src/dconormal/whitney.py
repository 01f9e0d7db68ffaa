"""Whitney conditions for the pair (X^0, Y), Y a coordinate subspace in X.

Condition a) is decided exactly.  In a chart (w0, w1) with Y inside the
span of the w0 coordinates, the planes containing Y are cut out by the
a_ij whose column j sits over a Y coordinate, so a) along Y amounts to

    a_ij in sqrt(J),    J = <z_j : j not in Y> + (Nash chart ideal).

Charts with a Y coordinate in w1 contain no plane through Y at all, so there
a) asks that the Nash modification has no point over Y in that chart.  The
check runs over all charts unless one is fixed.  It is global along Y,
which is stronger than the statement at the origin alone.

Condition w) is only probed numerically along curves into the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conormal import AffineVariety, ConormalChartIdeal, nash_ideal
from .curves import NoCurvesError, sample_curves, tangent_at
from .exactpoly import Ideal, Polynomial, radical_membership
from .grassmann import Chart, NotTransversalError, a_names, chart_cover
from .numlin import delta_distance, orthonormalize, spectral_norm
from .sampling import PolySystem

__all__ = [
    "WhitneyInstance",
    "WhitneyIdealPair",
    "ChartVerdict",
    "ConditionAReport",
    "WSample",
    "WRatioReport",
    "NotContainedError",
    "build_ideal_pair",
    "condition_a_report",
    "condition_a_check",
    "condition_w_probe",
    "delta_bound_trials",
    "delta_bound_property",
    "limit_planes",
]


class NotContainedError(ValueError):
    """Y is not contained in X."""


@dataclass(frozen=True)
class WhitneyInstance:
    X: AffineVariety
    y_axes: tuple  # 0-based coordinate indices spanning Y
    chart: Chart | None = None

    def __post_init__(self):
        axes = tuple(sorted(set(int(i) for i in self.y_axes)))
        if len(axes) != len(tuple(self.y_axes)):
            raise ValueError("repeated Y axis")
        if any(not 0 <= i < self.X.n for i in axes):
            raise ValueError(f"Y axis index out of range 0..{self.X.n - 1}")
        object.__setattr__(self, "y_axes", axes)
        zero = {nm: 0 for i, nm in enumerate(self.X.vars.names) if i not in axes}
        if any(g.subs(zero) for g in self.X.ideal.generators):
            raise NotContainedError("Y is not contained in X")
        if self.chart is not None:
            _check_chart(self, self.chart)

    @property
    def t(self) -> int:
        return len(self.y_axes)

    @property
    def normal_axes(self) -> tuple:
        return tuple(i for i in range(self.X.n) if i not in self.y_axes)

    def admissible(self, chart: Chart) -> bool:
        return set(self.y_axes) <= set(chart.w0)


def _check_chart(W: WhitneyInstance, chart: Chart) -> None:
    if chart.n != W.X.n or chart.d != W.X.k:
        raise ValueError("chart must be a chart of G(dim X, n)")
    if not W.admissible(chart):
        raise NotTransversalError(
            f"chart {chart.label()} has a Y coordinate among its W1 indices"
        )


@dataclass(frozen=True)
class WhitneyIdealPair:
    chart: Chart
    nash: ConormalChartIdeal
    I_script: Ideal
    J: Ideal
    a_generators: tuple

    def J_in_I(self) -> bool:
        return self.I_script.contains_ideal(self.J)


def build_ideal_pair(W: WhitneyInstance, chart: Chart | None = None,
                     nash: ConormalChartIdeal | None = None) -> WhitneyIdealPair:
    chart = chart or W.chart
    if chart is None:
        raise ValueError("a chart is required")
    _check_chart(W, chart)
    nash = nash or nash_ideal(W.X, chart)
    ring = nash.ring
    names = ring.names
    lin = [Polynomial.var(names[i], ring) for i in W.normal_axes]
    a = a_names(chart)
    cols = [j for j in range(chart.d) if chart.w0[j] in W.y_axes]
    a_gens = tuple(Polynomial.var(a[i * chart.d + j], ring)
                   for i in range(chart.codim) for j in cols)
    J = Ideal(lin + list(nash.ideal.generators), ring)
    I = Ideal(list(J.generators) + list(a_gens), ring)
    return WhitneyIdealPair(chart, nash, I, J, a_gens)


@dataclass(frozen=True)
class ChartVerdict:
    chart: str
    admissible: bool
    holds: bool
    witness: str | None = None

    def to_dict(self) -> dict:
        return {"chart": self.chart, "admissible": self.admissible,
                "holds": self.holds, "witness": self.witness}


@dataclass(frozen=True)
class ConditionAReport:
    holds: bool
    charts: tuple
    j_in_i: bool

    def to_dict(self) -> dict:
        return {"holds": self.holds, "j_in_i": self.j_in_i,
                "charts": [c.to_dict() for c in self.charts]}


def _chart_verdict(W: WhitneyInstance, chart: Chart):
    nash = nash_ideal(W.X, chart)
    if W.admissible(chart):
        pair = build_ideal_pair(W, chart, nash)
        for g in pair.a_generators:
            if not radical_membership(g, pair.J):
                return ChartVerdict(chart.label(), True, False, str(g)), pair.J_in_I()
        return ChartVerdict(chart.label(), True, True), pair.J_in_I()
    ring = nash.ring
    lin = [Polynomial.var(ring.names[i], ring) for i in W.normal_axes]
    fiber = Ideal(lin + list(nash.ideal.generators), ring)
    if fiber.is_unit():
        return ChartVerdict(chart.label(), False, True), True
    return ChartVerdict(chart.label(), False, False,
                        "planes not containing Y occur over Y"), True


def condition_a_report(W: WhitneyInstance) -> ConditionAReport:
    if W.t == 0:
        return ConditionAReport(True, (), True)
    charts = [W.chart] if W.chart is not None else chart_cover(W.X.n, W.X.k)
    verdicts, incl = [], True
    for ch in charts:
        v, j_in_i = _chart_verdict(W, ch)
        verdicts.append(v)
        incl = incl and j_in_i
    return ConditionAReport(all(v.holds for v in verdicts), tuple(verdicts), incl)


def condition_a_check(W: WhitneyInstance) -> bool:
    return condition_a_report(W).holds


# ---------------------------------------------------------------------------
# numeric side


def limit_planes(X: AffineVariety, curves: int = 100, seed: int = 0,
                 s_final: float = 1e-16) -> list[np.ndarray]:
    """Tangent planes of X at x(s_final) along random curves into the origin.

    Each entry is an orthonormal n x k basis; near s = 0 they approximate
    limits of tangent planes at the origin.
    """
    system = PolySystem(X.ideal.groebner())
    out = []
    for c in sample_curves(X.ideal, curves, seed=seed, s_min=s_final):
        out.append(tangent_at(system, c.points[-1].x, X.k))
    return out


@dataclass(frozen=True)
class WSample:
    curve: int
    s: float
    point: tuple
    distance: float
    delta: float
    ratio: float

    def to_dict(self) -> dict:
        return {
            "curve": self.curve,
            "s": self.s,
            "point": [[_r(z.real), _r(z.imag)] for z in self.point],
            "distance": _r(self.distance),
            "delta": _r(self.delta),
            "ratio": _r(self.ratio),
        }


def _r(x: float) -> float:
    return float(f"{x:.10g}")


@dataclass(frozen=True)
class WRatioReport:
    samples: tuple
    max_ratio: float
    verdict: str  # "bounded" or "unbounded-suspected"
    growing_curves: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "label": "probe",
            "max_ratio": _r(self.max_ratio),
            "growing_curves": list(self.growing_curves),
            "samples": [s.to_dict() for s in self.samples],
        }


def _delta_from_normals(J: np.ndarray, y_axes, codim: int) -> float:
    """delta(Y, T) as ||N^H Q_Y|| with N an orthonormal basis of T-perp.

    T-perp is the row space of the (conjugated) Jacobian.  Working with the
    normals keeps relative accuracy when delta is tiny, which the form
    ||(I - P_T) Q_Y|| loses to cancellation.
    """
    norms = np.linalg.norm(J, axis=1, keepdims=True)
    Jn = (J / np.where(norms > 0, norms, 1.0)).conj()
    if Jn.shape[0] == codim:
        N = orthonormalize(Jn.T).basis
    else:
        _, _, vh = np.linalg.svd(Jn)
        N = vh[:codim].conj().T
    return min(float(spectral_norm(N.conj().T[:, list(y_axes)])), 1.0)


def condition_w_probe(W: WhitneyInstance, curves: int = 20, seed: int = 0,
                      scales: tuple = (1e-2, 1e-4, 1e-6)) -> WRatioReport:
    """Ratios delta(T_y Y, T_x X^0) / d(x, Y) along curves into the origin.

    The verdict is ``unbounded-suspected`` when on some curve the ratio
    increases across the three scales and grows at least tenfold overall.
    """
    X = W.X
    scales = tuple(sorted(scales, reverse=True))
    if len(scales) != 3:
        raise ValueError("exactly three scales are needed")
    try:
        sample = sample_curves(X.ideal, curves, seed=seed, keep=scales)
    except NoCurvesError as exc:
        raise NoCurvesError(f"no smooth samples: {exc}") from None
    system = PolySystem(X.ideal.groebner())
    normal = list(W.normal_axes)
    rows, growing = [], []
    for c in sample:
        ratios = []
        for p in c.points:
            x = p.x
            dist = float(np.linalg.norm(x[normal]))
            delta = 0.0 if W.t == 0 else _delta_from_normals(system.jacobian(x), W.y_axes, X.n - X.k)
            ratio = delta / dist if dist > 0 else (0.0 if delta == 0 else float("inf"))
            ratios.append(ratio)
            rows.append(WSample(c.index, p.s, tuple(complex(z) for z in x), dist, delta, ratio))
        r1, r2, r3 = ratios
        if r1 < r2 < r3 and r3 >= 10 * r1 and r3 > 0:
            growing.append(c.index)
    max_ratio = max((s.ratio for s in rows), default=0.0)
    verdict = "unbounded-suspected" if growing else "bounded"
    return WRatioReport(tuple(rows), max_ratio, verdict, tuple(growing))


def delta_bound_trials(n: int, d: int, t: int, trials: int, seed: int = 0):
    """delta(Y, W) and t*sqrt(n-d)*max|a_ij| (j over the Y columns) for random a.

    Y is spanned by the first t coordinates and W is the graph of ``a`` in
    the chart w0 = (0..d-1); magnitudes of ``a`` range over four decades.
    """
    if not 0 <= t <= d <= n - 1:
        raise ValueError("need 0 <= t <= d <= n - 1")
    rng = np.random.default_rng(seed)
    scale = 10.0 ** rng.uniform(-3, 1, size=(trials, 1, 1))
    a = scale * (rng.normal(size=(trials, n - d, d)) + 1j * rng.normal(size=(trials, n - d, d)))
    if t == 0:
        return np.zeros(trials), np.zeros(trials)
    basis = np.concatenate([np.broadcast_to(np.eye(d), (trials, d, d)), a], axis=1)
    Q = orthonormalize(basis)
    QY = np.eye(n, dtype=complex)[:, :t]
    deltas = delta_distance(QY, Q)
    bounds = t * np.sqrt(n - d) * np.abs(a[:, :, :t]).max(axis=(1, 2))
    return np.asarray(deltas), bounds


def delta_bound_property(n: int, d: int, t: int, trials: int, seed: int = 0) -> bool:
    deltas, bounds = delta_bound_trials(n, d, t, trials, seed)
    return bool(np.all(deltas <= bounds * (1 + 1e-6) + 1e-12))
