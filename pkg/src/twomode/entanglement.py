"""Entropy of entanglement between the two modes and the named states.

For a number-conserving pure state ``sum_n c_n |n>|N-n>`` both reduced density
operators are diagonal in the Fock basis with eigenvalues ``|c_n|^2``, so the
mode entropy is the Shannon entropy (base 2) of the Fock probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError
from .fock import FockBasis, StateVector, dimer_basis, log_binomial

# p log p -> 0 below this
P_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class ReducedSpectrum:
    """Eigenvalues of one mode's reduced density operator."""

    probabilities: np.ndarray

    def entropy(self) -> float:
        return entropy_bits(self.probabilities)


def entropy_bits(probabilities: np.ndarray) -> float | np.ndarray:
    """Shannon entropy in bits along the last axis, with ``0 log 0 = 0``."""
    p = np.asarray(probabilities, dtype=np.float64)
    safe = np.where(p > P_FLOOR, p, 1.0)
    terms = np.where(p > P_FLOOR, -p * np.log2(safe), 0.0)
    out = terms.sum(axis=-1)
    return float(out) if out.ndim == 0 else out


def reduced_spectrum(psi: StateVector, mode: str = "first") -> ReducedSpectrum:
    """Reduced spectrum of mode ``"first"`` (A / atoms) or ``"second"`` (B / molecules).

    The second-mode spectrum is ordered by ascending second-mode occupation,
    which for these bases is the first-mode spectrum reversed.
    """
    p = psi.probabilities
    if mode == "second":
        p = p[::-1]
    elif mode != "first":
        raise InvalidParameterError(f"mode must be 'first' or 'second', got {mode!r}")
    p = p.copy()
    p.setflags(write=False)
    return ReducedSpectrum(p)


def mode_entropy(psi: StateVector) -> float:
    """Entropy of entanglement between the two modes, in bits."""
    return entropy_bits(psi.probabilities)


def max_entanglement(dim: int) -> float:
    if dim < 1:
        raise InvalidParameterError(f"dim must be >= 1, got {dim}")
    return math.log2(dim)


def localized_state(N: int) -> StateVector:
    """``|N/2>|N/2>``, the zero-tunnelling ground state."""
    basis = dimer_basis(N)
    if N % 2:
        raise InvalidParameterError(f"the localized state |N/2>|N/2> needs even N, got {N}")
    return StateVector.fock(basis, (N // 2, N // 2))


def log_binomial_row(N: int) -> np.ndarray:
    """``ln C(N, n)`` for ``n = 0..N`` in O(N).

    Cumulative sum of ``ln((N - k + 1) / k)`` up to the middle of the row,
    mirrored, so the row is exactly palindromic.
    """
    if N <= 20:
        return np.array([log_binomial(N, n) for n in range(N + 1)])
    half = N // 2
    k = np.arange(1, half + 1, dtype=np.float64)
    left = np.concatenate([[0.0], np.cumsum(np.log((N - k + 1.0) / k))])
    n = np.arange(N + 1)
    return left[np.minimum(n, N - n)]


def _log_bonding_weights(N: int) -> np.ndarray:
    """``ln(C(N, n) / 2^N)`` for ``n = 0..N``."""
    return log_binomial_row(N) - N * math.log(2.0)


def bonding_state(N: int, anti: bool = False) -> StateVector:
    """Normalized ``(a_A^dag +/- a_B^dag)^N |0>|0>``.

    ``anti=True`` gives the alternating-sign (minimal ``J_x`` weight) state with
    ``c_n = (-1)^(N-n) sqrt(C(N, n)) / 2^(N/2)``.
    """
    basis = dimer_basis(N)
    amps = np.exp(0.5 * _log_bonding_weights(N))
    if anti:
        n = np.arange(N + 1)
        amps = np.where((N - n) % 2 == 0, amps, -amps)
    return StateVector(basis, amps)


def cat_state(N: int, D: int) -> StateVector:
    """Equal superposition of ``|(N+D)/2>|(N-D)/2>`` and its mirror image.

    ``D = 0`` collapses to the single Fock state ``|N/2>|N/2>``.
    """
    basis = dimer_basis(N)
    if not 0 <= D <= N:
        raise InvalidParameterError(f"Cat(D) needs 0 <= D <= N, got D={D}, N={N}")
    if (N - D) % 2:
        raise InvalidParameterError(f"Cat(D) needs D = N (mod 2) so that (N +/- D)/2 are integers, got N={N}, D={D}")
    hi, lo = (N + D) // 2, (N - D) // 2
    amps = np.zeros(basis.dim)
    amps[hi] = 1.0
    amps[lo] = 1.0
    return StateVector(basis, amps)


def mes_state(basis: FockBasis, phases: Sequence[float] | None = None) -> StateVector:
    """Uniform-modulus state ``sum_n exp(i theta_n) |n> / sqrt(dim)`` over ``basis``."""
    if phases is None:
        return StateVector(basis, np.full(basis.dim, 1.0 / math.sqrt(basis.dim)))
    theta = np.asarray(phases, dtype=np.float64).reshape(-1)
    if theta.shape[0] != basis.dim:
        raise InvalidParameterError(f"expected {basis.dim} phases, got {theta.shape[0]}")
    return StateVector(basis, np.exp(1j * theta) / math.sqrt(basis.dim))


def bonding_entropy_closed_form(N: int) -> float:
    """``-sum_n 2^-N C(N,n) log2(2^-N C(N,n))`` evaluated in the log domain."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    logw = _log_bonding_weights(N)
    return math.fsum(-math.exp(lw) * lw / math.log(2.0) for lw in logw)
