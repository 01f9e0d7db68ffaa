"""Independent oracles shared by the unit and acceptance tests."""

from __future__ import annotations

import numpy as np


def _unit(x):
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def _perp(Q):
    """Orthonormal basis of the orthogonal complement, from a full QR."""
    n, k = Q.shape
    full, _ = np.linalg.qr(np.concatenate([Q, np.eye(n, dtype=complex)], axis=1))
    return full[:, k:n]


def random_subspace(rng, n, k):
    M = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    q, _ = np.linalg.qr(M)
    return q


def monte_carlo_delta(QA, QB, rng, pairs=100_000, rounds=400):
    """Brute-force sup of |<u, v>| over unit u in B-perp and unit v in A.

    ``pairs`` random unit pairs are scored; the best few are then improved
    by random local search with a shrinking step.  Only sampling and inner
    products are used, no projectors or singular values.
    """
    P = _perp(QB)
    ka, kp = QA.shape[1], P.shape[1]
    if ka == 0 or kp == 0:
        return 0.0
    ca = _unit(rng.normal(size=(pairs, ka)) + 1j * rng.normal(size=(pairs, ka)))
    cp = _unit(rng.normal(size=(pairs, kp)) + 1j * rng.normal(size=(pairs, kp)))
    v = ca @ QA.T
    u = cp @ P.T
    score = np.abs(np.sum(u.conj() * v, axis=1))
    top = np.argsort(score)[-8:]
    best = float(score.max())
    for idx in top:
        a, p, s = ca[idx], cp[idx], score[idx]
        step = 0.3
        for _ in range(rounds):
            trial_a = _unit(a + step * (rng.normal(size=(16, ka)) + 1j * rng.normal(size=(16, ka))))
            trial_p = _unit(p + step * (rng.normal(size=(16, kp)) + 1j * rng.normal(size=(16, kp))))
            vals = np.abs(np.sum((trial_p @ P.T).conj() * (trial_a @ QA.T), axis=1))
            j = int(np.argmax(vals))
            if vals[j] > s:
                a, p, s = trial_a[j], trial_p[j], vals[j]
            else:
                step *= 0.9
        best = max(best, float(s))
    return best
