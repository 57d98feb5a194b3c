"""Number-conserving two-mode Fock bases and normalized state vectors.

Two conservation laws are supported:

* dimer: ``n_A + n_B = N``, labels ``(n, N - n)`` for ``n = 0..N``;
* atom-molecule: ``n_a + 2 n_b = N_atm``, labels ``(2i + p, M - i)`` with
  ``p = N_atm mod 2`` and ``M = (N_atm - p) // 2``.

Labels are always ordered by ascending first-mode occupation, which makes
every Hamiltonian in :mod:`twomode.operators` tridiagonal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError

class BasisKind(enum.Enum):
    DIMER = "dimer"
    ATOM_MOLECULE = "atom-molecule"


@dataclass(frozen=True)
class FockBasis:
    """Ordered occupation-number labels of one conserved sector.

    ``total`` is ``N`` for the dimer and ``N_atm`` for the atom-molecule
    system.
    """

    kind: BasisKind
    total: int
    labels: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def first(self) -> np.ndarray:
        """Occupations of the first mode (A, or atoms), in basis order."""
        return _frozen_column(self.labels, 0)

    @cached_property
    def second(self) -> np.ndarray:
        return _frozen_column(self.labels, 1)

    def index(self, label: tuple[int, int]) -> int:
        try:
            return self.labels.index(tuple(label))
        except ValueError:
            raise InvalidParameterError(f"{label} is not in the {self.kind.value} basis with total={self.total}") from None

    def conserved(self, label: tuple[int, int]) -> int:
        a, b = label
        return a + b if self.kind is BasisKind.DIMER else a + 2 * b


def _frozen_column(labels, col: int) -> np.ndarray:
    out = np.array([lab[col] for lab in labels], dtype=np.int64)
    out.setflags(write=False)
    return out


def _check_positive_int(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise InvalidParameterError(f"{name} must be >= 1, got {value}")
    return int(value)


def dimer_basis(N: int) -> FockBasis:
    N = _check_positive_int("N", N)
    return FockBasis(BasisKind.DIMER, N, tuple((n, N - n) for n in range(N + 1)))


def atom_molecule_basis(N_atm: int) -> FockBasis:
    N_atm = _check_positive_int("N_atm", N_atm)
    parity = N_atm % 2
    M = (N_atm - parity) // 2
    labels = tuple((2 * i + parity, M - i) for i in range(M + 1))
    return FockBasis(BasisKind.ATOM_MOLECULE, N_atm, labels)


def log_binomial(n: int, k: int) -> float:
    """Natural log of the binomial coefficient C(n, k).

    Exact (up to the final rounding of ``log``) for ``n <= 20``; above that the
    product ``prod_{i=1..k} (n - k + i) / i`` is summed in the log domain,
    so no intermediate ever overflows.
    """
    if n < 0 or k < 0:
        raise InvalidParameterError(f"log_binomial needs n, k >= 0, got ({n}, {k})")
    if k > n:
        raise InvalidParameterError(f"log_binomial needs k <= n, got ({n}, {k})")
    if n <= 20:
        return math.log(math.comb(n, k))
    k = min(k, n - k)
    return math.fsum(math.log((n - k + i) / i) for i in range(1, k + 1))


class StateVector:
    """Unit-norm complex amplitudes over a :class:`FockBasis`.

    The constructor normalizes its input and rejects anything that cannot be
    normalized (wrong length, non-finite entries, zero norm). Amplitudes are
    stored as a read-only array.
    """

    __slots__ = ("basis", "amplitudes")

    def __init__(self, basis: FockBasis, amplitudes: Sequence[complex] | np.ndarray):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != basis.dim:
            raise InvalidParameterError(f"expected {basis.dim} amplitudes, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise InvalidParameterError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise InvalidParameterError("cannot normalize an all-zero amplitude vector")
        if norm != 1.0:
            amps = amps / norm
        amps.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    def __repr__(self) -> str:
        return f"StateVector({self.basis.kind.value}, total={self.basis.total}, dim={self.basis.dim})"

    def __len__(self) -> int:
        return self.basis.dim

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def fock(cls, basis: FockBasis, label: tuple[int, int]) -> "StateVector":
        """Single Fock component ``|label>``."""
        amps = np.zeros(basis.dim, dtype=np.complex128)
        amps[basis.index(label)] = 1.0
        return cls(basis, amps)
