"""Small dense complex linear algebra: orthonormal bases, spectral norms, delta.

Every routine accepts leading batch dimensions, so Monte Carlo checks can
push thousands of small matrices through one call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Settings",
    "SETTINGS",
    "NumericError",
    "RankDeficiencyError",
    "ConvergenceError",
    "Subspace",
    "as_matrix",
    "orthonormalize",
    "spectral_norm",
    "delta_distance",
    "intersection_dim",
    "null_space",
]


@dataclass(frozen=True)
class Settings:
    rank_tol: float = 1e-9
    power_tol: float = 1e-10
    power_max_iter: int = 10000
    squarings: int = 40
    seed: int = 0


SETTINGS = Settings()


class NumericError(ArithmeticError):
    pass


class RankDeficiencyError(NumericError):
    pass


class ConvergenceError(NumericError):
    pass


def as_matrix(M) -> np.ndarray:
    """Validate and convert to a complex array with at least two dimensions."""
    A = np.asarray(M, dtype=complex)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim < 2 or A.shape[-1] == 0 and A.shape[-2] == 0:
        raise ValueError("expected a nonempty matrix")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of C^n stored by an orthonormal column basis."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=complex).reshape(self.ambient_dim, -1)
        object.__setattr__(self, "basis", B)
        gram = B.conj().T @ B
        if B.shape[1] > self.ambient_dim or not np.allclose(
            gram, np.eye(B.shape[1]), atol=SETTINGS.rank_tol
        ):
            raise ValueError("basis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, np.zeros((n, 0), dtype=complex))

    @classmethod
    def span(cls, columns, ambient_dim: int | None = None) -> "Subspace":
        M = np.asarray(columns, dtype=complex)
        if M.size == 0:
            return cls.zero(ambient_dim or M.shape[0])
        return orthonormalize(M)

    @classmethod
    def coordinate(cls, n: int, indices) -> "Subspace":
        """Span of the standard basis vectors e_i, i in ``indices`` (0-based)."""
        B = np.zeros((n, len(indices)), dtype=complex)
        for j, i in enumerate(indices):
            B[i, j] = 1.0
        return cls(n, B)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def complement(self) -> "Subspace":
        n = self.ambient_dim
        if self.dim == 0:
            return Subspace(n, np.eye(n, dtype=complex))
        return Subspace(n, null_space(self.basis.conj().T))


def orthonormalize(M, tol: float | None = None):
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Returns a :class:`Subspace` for a single matrix, or the orthonormal
    basis array when ``M`` carries batch dimensions.
    """
    tol = SETTINGS.rank_tol if tol is None else tol
    A = as_matrix(M).copy()
    k = A.shape[-1]
    Q = np.zeros_like(A)
    for j in range(k):
        v = A[..., :, j]
        for _ in range(2):
            for i in range(j):
                qi = Q[..., :, i]
                coeff = np.sum(qi.conj() * v, axis=-1, keepdims=True)
                v = v - coeff * qi
        norm = np.linalg.norm(v, axis=-1)
        if np.any(norm < tol):
            raise RankDeficiencyError(f"column {j} is dependent on the previous ones")
        Q[..., :, j] = v / norm[..., None]
    if Q.ndim == 2:
        return Subspace(Q.shape[0], Q)
    return Q


def _start_vector(shape, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _top_eigen(H: np.ndarray, settings: Settings, ref=None):
    """Power iteration for the top eigenpair of batched Hermitian PSD ``H``.

    Eigenvalues below roundoff relative to ``ref`` (default: the Frobenius
    norm of ``H``) are reported as 0; deflated matrices pass the norm of the
    undeflated one so leftover rounding noise is not iterated on.
    """
    n = H.shape[-1]
    if ref is None:
        ref = np.linalg.norm(H, axis=(-2, -1))
    floor = 64 * n * np.finfo(float).eps * np.asarray(ref)
    v = _start_vector(H.shape[:-1], settings.seed)
    # Power iteration on H^(2^s) by repeated squaring separates clustered
    # top eigenvalues quickly; the loop below then polishes on H itself.
    P = H
    for _ in range(settings.squarings):
        fro = np.linalg.norm(P, axis=(-2, -1), keepdims=True)
        P = P / np.where(fro > 0, fro, 1.0)
        P = P @ P
    w = np.einsum("...ij,...j->...i", P, v)
    nw = np.linalg.norm(w, axis=-1, keepdims=True)
    v = np.where(nw > 0, w / np.where(nw > 0, nw, 1.0), v)
    lam = np.zeros(H.shape[:-2])
    done = np.zeros(H.shape[:-2], dtype=bool)
    for _ in range(settings.power_max_iter):
        w = np.einsum("...ij,...j->...i", H, v)
        lam_new = np.real(np.sum(v.conj() * w, axis=-1))
        nw = np.linalg.norm(w, axis=-1)
        scale = np.maximum(np.abs(lam_new), np.finfo(float).tiny)
        resid = np.linalg.norm(w - lam_new[..., None] * v, axis=-1)
        zero = nw <= np.maximum(floor, np.finfo(float).tiny)
        conv = zero | (resid <= settings.power_tol * scale)
        lam = np.where(done, lam, np.where(zero, 0.0, lam_new))
        done = done | conv
        if np.all(done):
            return np.maximum(lam, 0.0), v
        safe = np.where(zero[..., None], v, w / np.where(zero, 1.0, nw)[..., None])
        v = np.where(done[..., None], v, safe)
    raise ConvergenceError("power iteration did not converge within the cap")


def spectral_norm(M, settings: Settings = SETTINGS):
    """Largest singular value via power iteration on M^H M."""
    A = as_matrix(M)
    H = np.swapaxes(A.conj(), -1, -2) @ A
    lam, _ = _top_eigen(H, settings)
    out = np.sqrt(lam)
    return float(out) if out.ndim == 0 else out


def _as_basis(S) -> np.ndarray:
    return S.basis if isinstance(S, Subspace) else np.asarray(S, dtype=complex)


def delta_distance(A, B, settings: Settings = SETTINGS):
    """sup |<u,v>| / (|u||v|) over u in B-perp, v in A, as ||(I - P_B) P_A||_2.

    Arguments are Subspaces or orthonormal basis arrays (batched allowed).
    An empty A gives 0.
    """
    QA, QB = _as_basis(A), _as_basis(B)
    if QA.shape[-2] != QB.shape[-2]:
        raise ValueError("subspaces live in different ambient spaces")
    if QA.shape[-1] == 0:
        shape = np.broadcast_shapes(QA.shape[:-2], QB.shape[:-2])
        return 0.0 if shape == () else np.zeros(shape)
    # ||(I - P_B) P_A|| == ||(I - P_B) Q_A|| for orthonormal Q_A
    R = QA - QB @ (np.swapaxes(QB.conj(), -1, -2) @ QA)
    out = spectral_norm(R, settings)
    return np.minimum(out, 1.0) if isinstance(out, np.ndarray) else min(out, 1.0)


def intersection_dim(A: Subspace, B: Subspace, tol: float = 1e-6,
                     settings: Settings = SETTINGS) -> int:
    """Number of singular values of A^H B within ``tol`` of 1 (zero principal angles)."""
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    if A.dim == 0 or B.dim == 0:
        return 0
    C = A.basis.conj().T @ B.basis
    H = C.conj().T @ C
    ref = np.linalg.norm(H)
    count = 0
    for _ in range(min(A.dim, B.dim)):
        lam, v = _top_eigen(H, settings, ref)
        if np.sqrt(lam) < 1.0 - tol:
            break
        count += 1
        H = H - lam * np.outer(v, v.conj())
        H = (H + H.conj().T) / 2
    return count


def null_space(M, rtol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the kernel of ``M`` (columns), via SVD."""
    A = as_matrix(M)
    if A.shape[0] == 0:
        return np.eye(A.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * max(smax, 1e-300))) if smax > 0 else 0
    return vh[rank:].conj().T
