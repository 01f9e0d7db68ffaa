"""Numeric evaluation of polynomial systems and point sampling on varieties."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exactpoly import Ideal, Polynomial

__all__ = ["PolySystem", "newton_project", "sample_smooth_points", "tangent_basis",
           "numeric_rank", "NoSmoothSamplesError"]


class NoSmoothSamplesError(RuntimeError):
    pass


def _compile(polys: Sequence[Polynomial], n: int):
    exps, rows, coefs = [], [], []
    for r, p in enumerate(polys):
        for e, c in p.terms.items():
            exps.append(e)
            rows.append(r)
            coefs.append(float(c))
    E = np.array(exps, dtype=np.int64).reshape(-1, n)
    C = np.zeros((len(polys), len(exps)))
    C[rows, np.arange(len(exps))] = coefs
    return E, C


class PolySystem:
    """A list of polynomials compiled for fast complex evaluation."""

    def __init__(self, polys: Sequence[Polynomial] | Ideal):
        polys = list(polys.generators if isinstance(polys, Ideal) else polys)
        if not polys:
            raise ValueError("empty polynomial system")
        self.polys = polys
        self.vars = polys[0].vars
        n = len(self.vars)
        self.n = n
        self._E, self._C = _compile(polys, n)
        derivs = [p.diff(v) for p in polys for v in self.vars.names]
        self._JE, self._JC = _compile(derivs, n)

    def __len__(self):
        return len(self.polys)

    @staticmethod
    def _monomials(E, x):
        if E.shape[0] == 0:
            return np.zeros(0, dtype=complex)
        return np.prod(np.power(x[None, :], E), axis=1)

    def values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return self._C @ self._monomials(self._E, x)

    def jacobian(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return (self._JC @ self._monomials(self._JE, x)).reshape(len(self.polys), self.n)


def numeric_rank(J: np.ndarray, rtol: float = 1e-8) -> int:
    if J.size == 0:
        return 0
    s = np.linalg.svd(J, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def newton_project(system: PolySystem, x0, tol: float = 1e-8, max_iter: int = 60):
    """Gauss-Newton with minimum-norm steps; returns a point on V or None."""
    x = np.asarray(x0, dtype=complex).copy()
    for _ in range(max_iter):
        F = system.values(x)
        J = system.jacobian(x)
        dx, *_ = np.linalg.lstsq(J, -F, rcond=None)
        x = x + dx
        if not np.all(np.isfinite(x)) or np.linalg.norm(x) > 1e8:
            return None
        if np.linalg.norm(dx) <= tol * (1.0 + np.linalg.norm(x)):
            if np.linalg.norm(system.values(x)) <= tol * (1.0 + np.linalg.norm(x)) ** 4:
                return x
    return None


def tangent_basis(J: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis (columns) of the ``dim``-dimensional kernel of J."""
    n = J.shape[1]
    if J.shape[0] == 0:
        return np.eye(n, dtype=complex)[:, :dim]
    norms = np.linalg.norm(J, axis=1, keepdims=True)
    Jn = J / np.where(norms > 0, norms, 1.0)
    _, _, vh = np.linalg.svd(Jn)
    return vh[n - dim:].conj().T


def sample_smooth_points(ideal: Ideal, count: int, seed: int = 0, dim: int | None = None,
                         max_attempts: int | None = None, scale: float = 1.0,
                         tol: float = 1e-8) -> list[np.ndarray]:
    """Smooth points of V(ideal) from random Gaussian-rational starting probes.

    A point counts as smooth when the Jacobian has rank ``n - dim`` there
    and its ``n - dim``-th singular value is not tiny on the scale of the
    point.  The second condition rejects Newton iterates that crawled into
    the singular locus, where a relative rank test alone is fooled.
    """
    from .exactpoly import ideal_dimension

    gens = ideal.groebner()
    system = PolySystem(gens)
    n = system.n
    if dim is None:
        dim = ideal_dimension(ideal)
    codim = n - dim
    deg = max((g.total_degree() for g in gens), default=1)
    rng = np.random.default_rng(seed)
    max_attempts = max_attempts or 40 * count
    out = []
    for _ in range(max_attempts):
        num = rng.integers(-9, 10, size=(2, n))
        den = rng.integers(1, 6, size=(2, n))
        x0 = scale * (num[0] / den[0] + 1j * num[1] / den[1]) / 3.0
        x = newton_project(system, x0, tol=tol)
        if x is None:
            continue
        J = system.jacobian(x)
        if numeric_rank(J) != codim:
            continue
        if codim:
            sv = np.linalg.svd(J, compute_uv=False)
            if sv[codim - 1] <= 1e-6 * (1.0 + np.linalg.norm(x)) ** max(deg - 1, 0):
                continue
        out.append(x)
        if len(out) == count:
            return out
    raise NoSmoothSamplesError(
        f"found only {len(out)} of {count} smooth samples in {max_attempts} probes"
    )

