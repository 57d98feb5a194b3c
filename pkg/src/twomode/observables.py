"""Ground-state sweeps for both systems and the atom-molecule correlators."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .entanglement import bonding_entropy_closed_form, max_entanglement, mode_entropy
from .errors import InvalidParameterError, NumericalFailureError
from .fock import BasisKind, StateVector
from .operators import build_atom_molecule, build_josephson, pair_coupling
from .spectral import ground_state

# Beyond this E_J/K the sweep runs at E_J = 1, K = 1/ratio instead.
LARGE_RATIO = 1e6

T = TypeVar("T")


@dataclass(frozen=True)
class SweepRecord:
    system: str
    n: int
    ratio: float
    entropy: float
    extra: dict[str, float | bool] = field(default_factory=dict)


def _require_atom_molecule(psi: StateVector) -> None:
    if psi.basis.kind is not BasisKind.ATOM_MOLECULE:
        raise InvalidParameterError("expected a state on the atom-molecule basis")


def mean_atom_number(psi: StateVector) -> float:
    """``<n_a>``."""
    _require_atom_molecule(psi)
    return float(np.dot(psi.probabilities, psi.basis.first))


def coherence_correlator(psi: StateVector) -> float:
    """``theta = <a^dag a^dag b + b^dag a a>``.

    Only adjacent labels are connected: ``a^dag a^dag b`` takes label ``i`` to
    ``i + 1``.
    """
    _require_atom_molecule(psi)
    d = psi.amplitudes
    na = psi.basis.first[:-1].astype(np.float64)
    nb = psi.basis.second[:-1].astype(np.float64)
    return float(np.sum(2.0 * (np.conj(d[1:]) * d[:-1]).real * pair_coupling(na, nb)))


def _map_ordered(fn: Callable[[float], T], items: Sequence[float], workers: int | None) -> list[T]:
    # results come back in input order regardless of completion order
    if workers is None or workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _finite_ratios(ratios: Iterable[float]) -> list[float]:
    out = [float(r) for r in ratios]
    for r in out:
        if math.isnan(r):
            raise InvalidParameterError("ratios must not be NaN")
    return out


def josephson_ground_point(N: int, ratio: float, K: float = 1.0) -> SweepRecord:
    """Ground-state entropy of the unbiased dimer at ``E_J / K = ratio``."""
    if ratio < 0:
        raise InvalidParameterError(f"E_J/K must be >= 0, got {ratio}")
    if ratio > LARGE_RATIO:
        EJ, Kp = 1.0, (0.0 if math.isinf(ratio) else 1.0 / ratio)
    else:
        EJ, Kp = ratio * K, K
    try:
        gs = ground_state(build_josephson(N, Kp, 0.0, EJ))
    except NumericalFailureError as exc:
        raise NumericalFailureError(f"Josephson sweep point N={N} ratio={ratio!r}: {exc}") from exc
    return SweepRecord("josephson", N, ratio, mode_entropy(gs.vector), {"energy": gs.energy, "degenerate": gs.degenerate})


def ground_sweep_josephson(N: int, ratios: Iterable[float], K: float = 1.0, workers: int | None = None) -> list[SweepRecord]:
    """Ground-state entropy versus ``E_J / K`` at zero bias."""
    if not K > 0:
        raise InvalidParameterError(f"K must be > 0, got {K}")
    return _map_ordered(lambda r: josephson_ground_point(N, r, K), _finite_ratios(ratios), workers)


@dataclass(frozen=True)
class BondingRatio:
    N: int
    entropy: float
    max_entropy: float

    @property
    def ratio(self) -> float:
        return self.entropy / self.max_entropy


def bonding_ratio_sweep(Ns: Iterable[int]) -> list[BondingRatio]:
    """``E(rho_+) / log2(N + 1)`` for each ``N``."""
    out = []
    for N in Ns:
        if N < 1:
            raise InvalidParameterError(f"N must be >= 1, got {N}")
        out.append(BondingRatio(int(N), bonding_entropy_closed_form(N), max_entanglement(N + 1)))
    return out


def atom_molecule_ground_point(N_atm: int, ratio: float, omega: float = 1.0) -> SweepRecord:
    """Ground-state entropy and scaled correlators at ``delta / omega = ratio``.

    ``extra`` carries ``mean_atoms`` and ``theta`` divided by ``N_atm``, plus
    the unscaled ``energy``.
    """
    if not math.isfinite(ratio):
        raise InvalidParameterError(f"delta/omega must be finite, got {ratio}")
    try:
        gs = ground_state(build_atom_molecule(N_atm, ratio * omega, omega))
    except NumericalFailureError as exc:
        raise NumericalFailureError(f"atom-molecule sweep point N_atm={N_atm} ratio={ratio!r}: {exc}") from exc
    psi = gs.vector
    extra = {
        "mean_atoms": mean_atom_number(psi) / N_atm,
        "theta": coherence_correlator(psi) / N_atm,
        "energy": gs.energy,
        "degenerate": gs.degenerate,
    }
    return SweepRecord("atom-molecule", N_atm, ratio, mode_entropy(psi), extra)


def ground_sweep_atom_molecule(
    N_atm: int, ratios: Iterable[float], omega: float = 1.0, workers: int | None = None
) -> list[SweepRecord]:
    if not (math.isfinite(omega) and omega != 0):
        raise InvalidParameterError(f"omega must be finite and nonzero, got {omega}")
    return _map_ordered(lambda r: atom_molecule_ground_point(N_atm, r, omega), _finite_ratios(ratios), workers)


def molecular_threshold(
    N_atm: int, records: Sequence[SweepRecord] | None = None, omega: float = 1.0, level: float = 0.5, xtol: float = 1e-10
) -> float:
    """``delta / omega`` where ``<n_a> / N_atm`` falls through ``level``.

    The first sign change on the sweep grid brackets the crossing, which is
    then refined by bisection on the exact ground state. Returns NaN when the
    grid contains no crossing. Without ``records`` a default grid
    ``[0, 4 sqrt(N_atm)]`` is used.
    """
    if records is None:
        grid = np.linspace(0.0, 4.0 * math.sqrt(N_atm), 161)
        records = ground_sweep_atom_molecule(N_atm, grid, omega)

    def excess(r: float) -> float:
        return atom_molecule_ground_point(N_atm, r, omega).extra["mean_atoms"] - level

    vals = [rec.extra["mean_atoms"] - level for rec in records]
    for k in range(len(records) - 1):
        if vals[k] == 0.0:
            return records[k].ratio
        if vals[k] * vals[k + 1] < 0:
            lo, hi = records[k].ratio, records[k + 1].ratio
            flo = vals[k]
            while hi - lo > xtol * max(1.0, abs(lo)):
                mid = 0.5 * (lo + hi)
                fmid = excess(mid)
                if fmid == 0.0:
                    return mid
                if (fmid < 0) == (flo < 0):
                    lo, flo = mid, fmid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
    return math.nan
