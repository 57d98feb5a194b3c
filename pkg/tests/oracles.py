"""Independent reference computations used only by the tests.

None of these call into the package's solver paths.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def jacobi_eigh(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100):
    """Cyclic Jacobi rotations on a dense real symmetric matrix.

    Returns ascending eigenvalues and matching column eigenvectors.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * max(1.0, np.abs(a).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    w = np.diag(a).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def sturm_count(diag, sub, x: float) -> int:
    """Number of eigenvalues below ``x`` from the three-term recurrence
    ``p_k = (d_k - x) p_{k-1} - e_{k-1}^2 p_{k-2}`` (ratio form)."""
    count = 0
    q = 1.0
    for k, d in enumerate(diag):
        e2 = sub[k - 1] ** 2 if k else 0.0
        q = (d - x) - (e2 / q if k else 0.0)
        if q == 0.0:
            q = -1e-300
        if q < 0:
            count += 1
    return count


def charpoly_roots(diag, sub, tol: float = 1e-13) -> np.ndarray:
    """All eigenvalues by bisection on the characteristic-polynomial sign changes."""
    diag = np.asarray(diag, dtype=np.float64)
    sub = np.asarray(sub, dtype=np.float64)
    n = diag.shape[0]
    pad = np.concatenate([[0.0], np.abs(sub), [0.0]])
    radius = np.abs(diag) + pad[:-1] + pad[1:]
    lo0, hi0 = float(np.min(diag - radius)) - 1.0, float(np.max(diag + radius)) + 1.0
    roots = []
    for k in range(n):
        lo, hi = lo0, hi0
        while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if sturm_count(diag, sub, mid) > k:
                hi = mid
            else:
                lo = mid
        roots.append(0.5 * (lo + hi))
    return np.array(roots)


def exact_binomial_probs(N: int) -> list[Fraction]:
    return [Fraction(math.comb(N, n), 2**N) for n in range(N + 1)]


def entropy_from_fractions(probs) -> float:
    """Base-2 entropy with each log taken on the exact rational (big-int safe)."""
    total = 0.0
    for p in probs:
        if p:
            lp = math.log2(p.numerator) - math.log2(p.denominator)
            total -= float(p) * lp
    return total


def random_symtri(rng: np.random.Generator, dim: int, scale: float = 1.0):
    return rng.normal(scale=scale, size=dim), rng.normal(scale=scale, size=dim - 1)


def random_state_amplitudes(rng: np.random.Generator, dim: int, size: int | None = None) -> np.ndarray:
    shape = (dim,) if size is None else (size, dim)
    z = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def rabi_two_level(EJ: float, t: np.ndarray) -> np.ndarray:
    """Exact ``|c_0(t)|^2`` for ``H = [[0, -EJ/2], [-EJ/2, 0]]`` starting in ``(1, 0)``."""
    return np.cos(EJ * t / 2.0) ** 2
