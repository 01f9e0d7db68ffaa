"""Numeric curves on a variety running into the origin.

Free coordinates follow monomial curves ``c_j * s**w_j``; the remaining
coordinates are solved along the curve.  A hypersurface is solved in one
variable by univariate root finding (rescaled so tiny roots stay accurate)
and branches are followed by nearest-root matching.  Other varieties use
Gauss-Newton path tracking with small steps in ``s``.  Only branches with
x(s) -> 0 are kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactpoly import Ideal, Polynomial
from .sampling import PolySystem, numeric_rank, tangent_basis

__all__ = ["CurvePoint", "Curve", "NoCurvesError", "sample_curves", "tangent_at"]


class NoCurvesError(RuntimeError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    s: float
    x: np.ndarray


@dataclass(frozen=True)
class Curve:
    index: int
    weights: tuple
    coeffs: tuple
    points: tuple  # CurvePoints ordered by decreasing s

    def at(self, s: float) -> np.ndarray:
        for p in self.points:
            if np.isclose(p.s, s, rtol=1e-9, atol=0.0):
                return p.x
        raise KeyError(s)


def _pick_bound_variable(f: Polynomial) -> int:
    """Index of a variable in which f is monic up to a constant, else of highest degree."""
    names = f.vars.names
    best, best_key = None, None
    for i, nm in enumerate(names):
        deg = f.degree_in(nm)
        if deg == 0:
            continue
        lead_const = all(sum(e) == deg for e in f.terms if e[i] == deg)
        key = (lead_const, deg, -i)
        if best_key is None or key > best_key:
            best, best_key = i, key
    if best is None:
        raise ValueError("constant polynomial has no curves")
    return best


class _HypersurfaceSolver:
    def __init__(self, f: Polynomial):
        self.v = _pick_bound_variable(f)
        self.deg = f.degree_in(f.vars.names[self.v])
        self.terms = [(e, complex(float(c))) for e, c in f.terms.items()]
        self.n = len(f.vars)

    def roots(self, x: np.ndarray) -> np.ndarray:
        coef = np.zeros(self.deg + 1, dtype=complex)
        for e, c in self.terms:
            val = c
            for j, k in enumerate(e):
                if j != self.v and k:
                    val *= x[j] ** k
            coef[self.deg - e[self.v]] += val
        nz = np.flatnonzero(np.abs(coef) > 0)
        if nz.size == 0:
            return np.zeros(0, dtype=complex)
        coef = coef[nz[0]:]
        m = len(coef) - 1
        if m == 0:
            return np.zeros(0, dtype=complex)
        # rescale v = lam * u so the coefficients are balanced
        mags = [abs(coef[k] / coef[0]) ** (1.0 / k) for k in range(1, m + 1) if coef[k] != 0]
        lam = max(mags) if mags else 1.0
        scaled = coef * lam ** (-np.arange(m + 1, dtype=float))
        u = np.roots(scaled / scaled[0])
        r = lam * u
        # Newton polish in the original variable
        dcoef = np.polyder(coef)
        for _ in range(3):
            dv = np.polyval(dcoef, r)
            ok = dv != 0
            r[ok] = r[ok] - np.polyval(coef, r[ok]) / dv[ok]
        return r


def _scales(s_max: float, s_min: float, per_decade: int) -> np.ndarray:
    k = int(round(np.log10(s_max / s_min) * per_decade))
    return np.logspace(np.log10(s_max), np.log10(s_min), k + 1)


def _free_values(free, weights, coeffs, s, n):
    x = np.zeros(n, dtype=complex)
    for j, w, c in zip(free, weights, coeffs):
        x[j] = c * s ** w
    return x


def _track_hypersurface(solver, free, weights, coeffs, grid, branch):
    pts = []
    prev = None
    for s in grid:
        x = _free_values(free, weights, coeffs, s, solver.n)
        r = solver.roots(x)
        if r.size == 0:
            return None
        if prev is None:
            choice = r[branch % r.size]
        else:
            choice = r[np.argmin(np.abs(r - prev))]
        x[solver.v] = choice
        prev = choice
        pts.append(CurvePoint(float(s), x))
    return pts


def _track_newton(system, free, bound, weights, coeffs, grid, rng):
    n = system.n
    pts = []
    y = None
    for s in grid:
        x = _free_values(free, weights, coeffs, s, n)
        if y is None:
            y = rng.normal(size=len(bound)) + 1j * rng.normal(size=len(bound))
        scale = max(1.0, np.linalg.norm(x))
        for _ in range(50):
            x[bound] = y
            F = system.values(x)
            J = system.jacobian(x)[:, bound]
            dy, *_ = np.linalg.lstsq(J, -F, rcond=None)
            y = y + dy
            if np.linalg.norm(dy) <= 1e-13 * max(np.linalg.norm(y), s) or not np.all(np.isfinite(y)):
                break
        x[bound] = y
        if not np.all(np.isfinite(x)) or np.linalg.norm(system.values(x)) > 1e-8 * scale:
            return None
        pts.append(CurvePoint(float(s), x.copy()))
    return pts


def sample_curves(ideal: Ideal, count: int, seed: int = 0, s_max: float = 1e-1,
                  s_min: float = 1e-16, keep: tuple | None = None,
                  weights_from: tuple = (1, 2, 3), max_attempts: int | None = None) -> list[Curve]:
    """``count`` curves x(s) on V(ideal) with x(s) -> 0 as s -> 0.

    ``keep`` lists the scales to store (default: every tracked scale).
    """
    gb = ideal.groebner()
    n = len(ideal.vars)
    rng = np.random.default_rng(seed)
    max_attempts = max_attempts or 20 * count
    grid = _scales(s_max, s_min, 8)
    if keep is not None:
        grid = np.unique(np.concatenate([grid, np.asarray(keep, dtype=float)]))[::-1]
    if len(gb) == 1:
        solver = _HypersurfaceSolver(gb[0])
        free = [j for j in range(n) if j != solver.v]
        bound = [solver.v]
    else:
        from .exactpoly import ideal_dimension

        system = PolySystem(gb)
        k = ideal_dimension(ideal)
        free, bound = _choose_free(system, k, rng)
    out = []
    for _ in range(max_attempts):
        weights = tuple(int(w) for w in rng.choice(weights_from, size=len(free)))
        coeffs = tuple(complex(a, b) for a, b in rng.normal(size=(len(free), 2)))
        if len(gb) == 1:
            pts = _track_hypersurface(solver, free, weights, coeffs, grid,
                                      int(rng.integers(0, 1 << 16)))
        else:
            pts = _track_newton(system, free, bound, weights, coeffs, grid, rng)
        if pts is None:
            continue
        tail = np.linalg.norm(pts[-1].x)
        if tail > 1e-6 * max(1.0, np.linalg.norm(pts[0].x)) or tail > 1e-6:
            continue
        if keep is not None:
            wanted = np.asarray(keep, dtype=float)
            pts = [p for p in pts if np.any(np.isclose(p.s, wanted, rtol=1e-9, atol=0.0))]
        out.append(Curve(len(out), weights, coeffs, tuple(pts)))
        if len(out) == count:
            return out
    raise NoCurvesError(f"found {len(out)} of {count} curves into the origin")


def _choose_free(system: PolySystem, k: int, rng) -> tuple[list, list]:
    """Free coordinates whose complement carries a full-rank Jacobian block."""
    import itertools

    n = system.n
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    from .sampling import newton_project

    p = newton_project(system, x)
    if p is None:
        raise NoCurvesError("could not find a point on the variety")
    J = system.jacobian(p)
    for free in itertools.combinations(range(n), k):
        bound = [j for j in range(n) if j not in free]
        if numeric_rank(J[:, bound]) == n - k:
            return list(free), bound
    raise NoCurvesError("no coordinate projection is finite on the variety")


def tangent_at(system: PolySystem, x: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal tangent basis (n x dim) at a smooth point."""
    return tangent_basis(system.jacobian(x), dim)
