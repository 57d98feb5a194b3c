"""Hamiltonians and pseudo-angular-momentum operators in the Fock bases.

All three Hamiltonians are real symmetric tridiagonal in the label order of
:mod:`twomode.fock`, so they are stored as a diagonal and a subdiagonal only.
Units: hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .errors import InvalidParameterError
from .fock import FockBasis, StateVector, atom_molecule_basis, dimer_basis


@dataclass(frozen=True, eq=False)
class SymTriMatrix:
    """Real symmetric tridiagonal matrix ``diag`` / ``sub``.

    ``sub[i]`` couples rows ``i`` and ``i + 1``. ``basis`` and ``params`` are
    optional metadata attached by the builders (used for provenance and to
    wrap eigenvectors as :class:`StateVector`).
    """

    diag: np.ndarray
    sub: np.ndarray
    basis: FockBasis | None = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        d = np.array(self.diag, dtype=np.float64).reshape(-1)
        e = np.array(self.sub, dtype=np.float64).reshape(-1)
        if d.shape[0] < 1:
            raise InvalidParameterError("a SymTriMatrix needs dim >= 1")
        if e.shape[0] != d.shape[0] - 1:
            raise InvalidParameterError(f"sub must have length {d.shape[0] - 1}, got {e.shape[0]}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise InvalidParameterError("SymTriMatrix entries must be finite")
        if self.basis is not None and self.basis.dim != d.shape[0]:
            raise InvalidParameterError("basis dimension does not match the matrix")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "sub", e)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def dim(self) -> int:
        return self.diag.shape[0]

    def norm_max(self) -> float:
        """Largest absolute entry."""
        m = float(np.max(np.abs(self.diag)))
        if self.sub.size:
            m = max(m, float(np.max(np.abs(self.sub))))
        return m

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.sub, 1) + np.diag(self.sub, -1)

    def describe(self) -> str:
        """One-line ``key=value`` descriptor of the builder parameters."""
        return " ".join(f"{k}={v}" for k, v in self.params.items())


def _check_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise InvalidParameterError(f"{name} must be finite, got {v}")


def build_josephson(N: int, K: float, dmu: float, EJ: float) -> SymTriMatrix:
    """Two-mode Josephson (Bose-Hubbard dimer) Hamiltonian.

    ``H = K/8 (N_A - N_B)^2 - dmu/2 (N_A - N_B) - EJ/2 (a_A^dag a_B + h.c.)``
    in the basis ``|n>|N-n>``, ``n = 0..N``.
    """
    basis = dimer_basis(N)
    _check_finite(K=K, dmu=dmu, EJ=EJ)
    if K < 0:
        raise InvalidParameterError(f"K must be >= 0 (repulsive interaction), got {K}")
    if EJ < 0:
        raise InvalidParameterError(f"EJ must be >= 0, got {EJ}")
    n = np.arange(N + 1, dtype=np.float64)
    imbalance = 2.0 * n - N
    diag = (K / 8.0) * imbalance**2 - (dmu / 2.0) * imbalance
    m = n[:-1]
    sub = -(EJ / 2.0) * np.sqrt((m + 1.0) * (N - m))
    return SymTriMatrix(diag, sub, basis, {"hamiltonian": "josephson", "N": N, "K": K, "dmu": dmu, "EJ": EJ})


def build_angular(N: int, chi: float, omega: float) -> SymTriMatrix:
    """``chi J_z^2 - omega J_x`` for spin ``j = N/2``, rows ordered ``m = -j..j``.

    Row ``i`` is the dimer label ``(i, N - i)``, i.e. ``m = n_A - N/2``.
    Constant shifts relative to :func:`build_josephson` are dropped; with
    ``chi = K/2`` and ``omega = EJ`` the two spectra differ by a constant.
    """
    basis = dimer_basis(N)
    _check_finite(chi=chi, omega=omega)
    j = N / 2.0
    m = np.arange(N + 1, dtype=np.float64) - j
    diag = chi * m**2
    mm = m[:-1]
    sub = -(omega / 2.0) * np.sqrt(j * (j + 1.0) - mm * (mm + 1.0))
    return SymTriMatrix(diag, sub, basis, {"hamiltonian": "angular", "N": N, "chi": chi, "omega": omega})


def build_atom_molecule(N_atm: int, delta: float, omega: float) -> SymTriMatrix:
    """``delta/2 n_a + omega/2 (a^dag a^dag b + b^dag a a)`` at fixed ``N_atm``."""
    basis = atom_molecule_basis(N_atm)
    _check_finite(delta=delta, omega=omega)
    na = basis.first.astype(np.float64)
    nb = basis.second.astype(np.float64)
    diag = (delta / 2.0) * na
    sub = (omega / 2.0) * pair_coupling(na[:-1], nb[:-1])
    return SymTriMatrix(diag, sub, basis, {"hamiltonian": "atom-molecule", "N_atm": N_atm, "delta": delta, "omega": omega})


def pair_coupling(na: np.ndarray, nb: np.ndarray) -> np.ndarray:
    """``<n_a + 2, n_b - 1| a^dag a^dag b |n_a, n_b>``."""
    return np.sqrt((na + 1.0) * (na + 2.0) * nb)


def angular_momentum_matrices(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense ``(J_x, J_y, J_z)`` in the dimer basis ``|n>|N-n>``.

    Conventions are the Schwinger-type ones with
    ``J_z = (N_B - N_A)/2``, ``J_x = (a_A^dag a_B + h.c.)/2`` and
    ``J_y = i (a_A^dag a_B - a_B^dag a_A)/2``; these satisfy
    ``[J_x, J_y] = i J_z``. ``J_y`` is returned as a complex array.
    """
    basis = dimer_basis(N)
    n = np.arange(N + 1, dtype=np.float64)
    # <n+1, N-n-1| a_A^dag a_B |n, N-n>
    hop = np.sqrt((n[:-1] + 1.0) * (N - n[:-1]))
    raise_a = np.diag(hop, -1)
    jx = 0.5 * (raise_a + raise_a.T)
    jy = 0.5j * (raise_a - raise_a.T)
    jz = np.diag(0.5 * (basis.second - basis.first).astype(np.float64))
    return jx, jy, jz


def apply(H: SymTriMatrix, psi: StateVector | np.ndarray) -> np.ndarray:
    """Matrix-vector product ``H psi`` (unnormalized)."""
    x = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi)
    if x.shape[0] != H.dim:
        raise InvalidParameterError(f"dimension mismatch: H is {H.dim}, vector is {x.shape[0]}")
    y = H.diag * x
    y[:-1] += H.sub * x[1:]
    y[1:] += H.sub * x[:-1]
    return y
