"""Exact time evolution and the critical-ratio Cat-state experiment.

The propagator is spectral: ``H`` is diagonalized once and
``psi(t) = V exp(-i Lambda t) V^T psi(0)``. A classical RK4 integrator is kept
as an independent cross-check. Times are in units of hbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .entanglement import bonding_state, entropy_bits
from .errors import InvalidParameterError
from .fock import BasisKind, FockBasis, StateVector
from .operators import SymTriMatrix, apply, build_angular
from .spectral import eigh_tridiagonal


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Amplitudes ``psi(t_k)`` stored row-wise.

    Rows are the raw propagated amplitudes (not renormalized) so that
    unitarity drift stays observable; :meth:`state` wraps a row as a
    normalized :class:`StateVector`.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    basis: FockBasis
    source: Mapping[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return self.times.shape[0]

    def state(self, k: int) -> StateVector:
        return StateVector(self.basis, self.amplitudes[k])

    @property
    def states(self) -> tuple[StateVector, ...]:
        return tuple(self.state(k) for k in range(len(self)))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.amplitudes, axis=1)

    def energies(self, H: SymTriMatrix) -> np.ndarray:
        """``<psi(t)|H|psi(t)>`` for every stored time."""
        return np.array([np.vdot(row, apply(H, row)).real for row in self.amplitudes])

    def entropies(self) -> np.ndarray:
        return entropy_bits(self.probabilities / self.norms()[:, None] ** 2)


def _times(times: Sequence[float]) -> np.ndarray:
    t = np.asarray(times, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(t)):
        raise InvalidParameterError("times must be finite")
    return t


def _check_dims(H: SymTriMatrix, psi0: StateVector) -> None:
    if H.dim != psi0.basis.dim:
        raise InvalidParameterError(f"dimension mismatch: H is {H.dim}, state is {psi0.basis.dim}")


def evolve(H: SymTriMatrix, psi0: StateVector, times: Sequence[float]) -> Trajectory:
    """Propagate ``psi0`` (taken as ``psi(0)``) to each of ``times`` spectrally."""
    _check_dims(H, psi0)
    t = _times(times)
    vals, vecs = eigh_tridiagonal(H)
    coeffs = vecs.T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(t, vals))
    amps = (phases * coeffs) @ vecs.T
    return Trajectory(t, amps, psi0.basis, {**H.params, "method": "spectral"})


def evolve_rk4(H: SymTriMatrix, psi0: StateVector, times: Sequence[float], dt: float) -> Trajectory:
    """Integrate ``i dpsi/dt = H psi`` with classical RK4.

    Each interval between consecutive requested times is split into
    ``ceil(|interval| / dt)`` equal steps, so no step exceeds ``dt`` and
    every requested time is hit exactly.
    """
    if not dt > 0:
        raise InvalidParameterError(f"dt must be > 0, got {dt}")
    _check_dims(H, psi0)
    t = _times(times)
    d, s = H.diag, H.sub

    def rhs(x):
        y = d * x
        y[:-1] += s * x[1:]
        y[1:] += s * x[:-1]
        return -1j * y

    psi = psi0.amplitudes.copy()
    now = 0.0
    out = np.empty((t.shape[0], psi.shape[0]), dtype=np.complex128)
    for k, target in enumerate(t):
        span = target - now
        nsteps = math.ceil(abs(span) / dt)
        if nsteps:
            h = span / nsteps
            for _ in range(nsteps):
                k1 = rhs(psi)
                k2 = rhs(psi + 0.5 * h * k1)
                k3 = rhs(psi + 0.5 * h * k2)
                k4 = rhs(psi + h * k3)
                psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        now = target
        out[k] = psi
    return Trajectory(t, out, psi0.basis, {**H.params, "method": "rk4", "dt": dt})


def critical_omega(N: int, chi: float) -> float:
    """Tunnelling strength at the critical ratio ``2 omega / (chi N) = 1``."""
    _check_run_params(N, chi)
    return chi * N / 2.0


def critical_time(N: int, chi: float) -> float:
    """``ln(8N) / (chi N)``."""
    _check_run_params(N, chi)
    return math.log(8.0 * N) / (chi * N)


def _check_run_params(N: int, chi: float) -> None:
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    if not (math.isfinite(chi) and chi > 0):
        raise InvalidParameterError(f"chi must be a finite positive number, got {chi}")


def jz_values(N: int) -> np.ndarray:
    """``m = -j..j`` in the order used by :func:`jz_distribution`."""
    return np.arange(N + 1, dtype=np.float64) - N / 2.0


def jz_distribution(psi: StateVector) -> np.ndarray:
    """``P(m) = |<j, m|psi>|^2`` for ``m = -j..j``, using ``m = n_A - N/2``."""
    if psi.basis.kind is not BasisKind.DIMER:
        raise InvalidParameterError("the J_z distribution is defined on the dimer basis only")
    return psi.probabilities


@dataclass(frozen=True, eq=False)
class CatRun:
    trajectory: Trajectory
    entropies: np.ndarray
    distributions: np.ndarray
    N: int
    chi: float
    omega: float
    t_c: float

    @property
    def times(self) -> np.ndarray:
        return self.trajectory.times

    @property
    def tc_index(self) -> int:
        """Grid index nearest the critical time."""
        return int(np.argmin(np.abs(self.times - self.t_c)))

    def header(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "chi": self.chi,
            "omega": self.omega,
            "ratio_2omega_over_chiN": 2.0 * self.omega / (self.chi * self.N),
            "t_c": self.t_c,
            "tc_row": self.tc_index,
            "initial_state": "minimal J_x weight (alternating-sign bonding state)",
        }


def cat_generation_run(
    N: int,
    chi: float,
    t_max: float | None = None,
    steps: int = 512,
    omega: float | None = None,
) -> CatRun:
    """Evolve the minimal-``J_x`` state under ``chi J_z^2 - omega J_x``.

    ``omega`` defaults to the critical value; ``t_max`` defaults to
    ``2.4 t_c``. The grid has ``steps`` uniformly spaced points on
    ``[0, t_max]``.
    """
    t_c = critical_time(N, chi)
    if omega is None:
        omega = critical_omega(N, chi)
    if t_max is None:
        t_max = 2.4 * t_c
    if not (math.isfinite(t_max) and t_max > 0):
        raise InvalidParameterError(f"t_max must be > 0, got {t_max}")
    if steps < 2:
        raise InvalidParameterError(f"steps must be >= 2, got {steps}")
    H = build_angular(N, chi, omega)
    traj = evolve(H, bonding_state(N, anti=True), np.linspace(0.0, t_max, steps))
    dist = traj.probabilities
    return CatRun(traj, entropy_bits(dist), dist, N, chi, omega, t_c)
