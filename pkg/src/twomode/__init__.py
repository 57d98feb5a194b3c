"""Mode entanglement in two-mode Bose-Einstein condensates.

Exact diagonalization of the Josephson dimer and atom-molecule Hamiltonians,
entropy of entanglement between the modes, and exact Cat-state-generation
dynamics in the pseudo-angular-momentum picture.
"""

__version__ = "0.1.0"

from .dynamics import (
    CatRun,
    Trajectory,
    cat_generation_run,
    critical_omega,
    critical_time,
    evolve,
    evolve_rk4,
    jz_distribution,
    jz_values,
)
from .entanglement import (
    ReducedSpectrum,
    bonding_entropy_closed_form,
    bonding_state,
    cat_state,
    entropy_bits,
    localized_state,
    max_entanglement,
    mes_state,
    mode_entropy,
    reduced_spectrum,
)
from .errors import InvalidParameterError, NumericalFailureError
from .fock import BasisKind, FockBasis, StateVector, atom_molecule_basis, dimer_basis, log_binomial
from .observables import (
    SweepRecord,
    bonding_ratio_sweep,
    coherence_correlator,
    ground_sweep_atom_molecule,
    ground_sweep_josephson,
    mean_atom_number,
    molecular_threshold,
)
from .operators import (
    SymTriMatrix,
    angular_momentum_matrices,
    apply,
    build_angular,
    build_atom_molecule,
    build_josephson,
)
from .spectral import EigenDecomposition, GroundState, eigh_tridiagonal, ground_state
