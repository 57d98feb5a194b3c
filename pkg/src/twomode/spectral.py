"""Eigendecomposition of real symmetric tridiagonal matrices.

Implicit QL with a Wilkinson shift, Givens rotations accumulated into the
eigenvector matrix. The rotation loop is compiled with numba; it releases the
GIL, so independent decompositions can run on a thread pool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np

from .errors import InvalidParameterError, NumericalFailureError
from .fock import FockBasis, StateVector
from .operators import SymTriMatrix

MAX_SWEEPS = 60
_EPS = np.finfo(np.float64).eps


@numba.njit(cache=True, nogil=True)
def _tql2(d, e, zt, max_sweeps, eps):
    """In-place implicit QL on (d, e); rows of ``zt`` become eigenvectors.

    ``e[i]`` couples ``d[i]`` and ``d[i+1]``; ``e[n-1]`` is scratch and must be
    0 on entry. Returns -1 on success, otherwise the index that failed to
    converge.
    """
    n = d.shape[0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                return l
            sweeps += 1
            # Wilkinson shift from the leading 2x2 block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = zt[i + 1, k]
                    zt[i + 1, k] = s * zt[i, k] + c * f
                    zt[i, k] = c * zt[i, k] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues; column ``i`` of ``eigenvectors`` pairs with ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def eigh_tridiagonal(T: SymTriMatrix, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Full eigendecomposition of ``T``.

    Each eigenvector's sign is fixed so that its largest-magnitude component
    is positive, which makes the output a deterministic function of the input.

    Raises
    ------
    InvalidParameterError
        If ``T`` has non-finite entries.
    NumericalFailureError
        If some eigenvalue is not isolated within ``max_sweeps`` QL sweeps.
    """
    d = np.array(T.diag, dtype=np.float64)
    e = np.zeros_like(d)
    e[:-1] = T.sub
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise InvalidParameterError("tridiagonal entries must be finite")
    n = d.shape[0]
    zt = np.eye(n)
    failed = _tql2(d, e, zt, max_sweeps, _EPS)
    if failed >= 0:
        raise NumericalFailureError(f"QL iteration did not converge for eigenvalue index {failed} after {max_sweeps} sweeps")
    order = np.argsort(d, kind="stable")
    vals = d[order]
    vecs = zt[order].T.copy()
    pivots = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivots, np.arange(n)])
    signs[signs == 0] = 1.0
    vecs *= signs
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return EigenDecomposition(vals, vecs)


class GroundState(NamedTuple):
    energy: float
    vector: StateVector
    degenerate: bool


def ground_state(T: SymTriMatrix, gap_tol: float = 1e-9, basis: FockBasis | None = None) -> GroundState:
    """Lowest eigenpair of ``T`` with a degeneracy flag.

    ``degenerate`` is set when ``lambda_1 - lambda_0 <= gap_tol (1 + |lambda_0|)``.
    The vector is still returned in that case (it is the solver's
    deterministic choice within the degenerate subspace).
    """
    basis = basis or T.basis
    if basis is None:
        raise InvalidParameterError("ground_state needs a basis (none attached to the matrix)")
    vals, vecs = eigh_tridiagonal(T)
    e0 = float(vals[0])
    gap = float(vals[1] - vals[0]) if vals.shape[0] > 1 else math.inf
    degenerate = gap <= gap_tol * (1.0 + abs(e0))
    return GroundState(e0, StateVector(basis, vecs[:, 0]), degenerate)
