import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twomode import (
    InvalidParameterError,
    StateVector,
    SymTriMatrix,
    angular_momentum_matrices,
    apply,
    build_angular,
    build_atom_molecule,
    build_josephson,
    dimer_basis,
    eigh_tridiagonal,
)
from twomode.fock import BasisKind

from oracles import random_symtri


def test_josephson_examples():
    h = build_josephson(1, K=8, dmu=0, EJ=2)
    np.testing.assert_allclose(h.diag, [1, 1])
    np.testing.assert_allclose(h.sub, [-1])

    h = build_josephson(2, K=0, dmu=0, EJ=2)
    np.testing.assert_allclose(h.diag, [0, 0, 0])
    np.testing.assert_allclose(h.sub, [-math.sqrt(2), -math.sqrt(2)])

    # (K/8)(2n - N)^2 by hand for N=4, K=1: 16/8, 4/8, 0, 4/8, 16/8
    h = build_josephson(4, K=1, dmu=0, EJ=0)
    np.testing.assert_allclose(h.diag, [2, 0.5, 0, 0.5, 2])
    np.testing.assert_allclose(h.sub, [0, 0, 0, 0])


def test_josephson_bias_term():
    # -(dmu/2)(2n - N) at N=2: +dmu, 0, -dmu
    h = build_josephson(2, K=0, dmu=3, EJ=0)
    np.testing.assert_allclose(h.diag, [3, 0, -3])


@pytest.mark.parametrize("kw", [dict(K=-1, EJ=1), dict(K=1, EJ=-1)])
def test_josephson_rejects_negative(kw):
    with pytest.raises(InvalidParameterError):
        build_josephson(4, dmu=0, **kw)


@given(st.integers(1, 60), st.floats(0, 10), st.floats(0, 10))
def test_josephson_unbiased_is_palindromic(N, K, EJ):
    h = build_josephson(N, K, 0.0, EJ)
    np.testing.assert_array_equal(h.diag, h.diag[::-1])
    np.testing.assert_allclose(h.sub, h.sub[::-1], rtol=1e-15)


def test_angular_examples():
    h = build_angular(1, chi=0, omega=2)
    np.testing.assert_allclose(h.diag, [0, 0])
    np.testing.assert_allclose(h.sub, [-1])
    h = build_angular(2, chi=4, omega=0)
    np.testing.assert_allclose(h.diag, [4, 0, 4])
    np.testing.assert_allclose(h.sub, [0, 0])


def test_angular_matches_josephson_up_to_shift():
    # chi = K/2, omega = EJ
    a = eigh_tridiagonal(build_angular(20, 0.1, 1.0)).eigenvalues
    j = eigh_tridiagonal(build_josephson(20, 0.2, 0.0, 1.0)).eigenvalues
    np.testing.assert_allclose(a - a[0], j - j[0], atol=1e-10)


@given(st.integers(1, 40), st.floats(0, 5), st.floats(0.01, 5))
@settings(max_examples=40)
def test_angular_spectrum_invariant_under_omega_sign(N, chi, omega):
    plus = eigh_tridiagonal(build_angular(N, chi, omega)).eigenvalues
    minus = eigh_tridiagonal(build_angular(N, chi, -omega)).eigenvalues
    np.testing.assert_allclose(plus, minus, atol=1e-10 * (1 + np.abs(plus).max()))


def test_atom_molecule_examples():
    h = build_atom_molecule(2, delta=2, omega=2)
    np.testing.assert_allclose(h.diag, [0, 2])
    np.testing.assert_allclose(h.sub, [math.sqrt(2)])

    # (omega/2) sqrt((na+1)(na+2) nb): (0,2) -> sqrt(1*2*2)=2, (2,1) -> sqrt(3*4*1)
    h = build_atom_molecule(4, delta=0, omega=2)
    np.testing.assert_allclose(h.diag, [0, 0, 0])
    np.testing.assert_allclose(h.sub, [2.0, 2 * math.sqrt(3)])

    h = build_atom_molecule(5, delta=2, omega=0)
    np.testing.assert_allclose(h.diag, [1, 3, 5])
    np.testing.assert_allclose(h.sub, [0, 0])


def test_atom_molecule_rejects():
    with pytest.raises(InvalidParameterError):
        build_atom_molecule(0, 1, 1)


def _pair_creation_dense(N_atm):
    """a^dag a^dag b built from truncated single-mode ladder operators."""
    na_max = N_atm + 2
    nb_max = N_atm // 2 + 1
    a = np.diag(np.sqrt(np.arange(1, na_max + 1)), 1)
    b = np.diag(np.sqrt(np.arange(1, nb_max + 1)), 1)
    return np.kron(a.T @ a.T, b), na_max + 1, nb_max + 1


@pytest.mark.parametrize("N_atm", [1, 2, 5, 8])
def test_atom_molecule_matches_tensor_product_construction(N_atm):
    op, da, db = _pair_creation_dense(N_atm)
    delta, omega = 0.7, 1.3
    na_op = np.kron(np.diag(np.arange(da)), np.eye(db))
    full = 0.5 * delta * na_op + 0.5 * omega * (op + op.T)
    h = build_atom_molecule(N_atm, delta, omega)
    idx = [na * db + nb for na, nb in h.basis.labels]
    np.testing.assert_allclose(full[np.ix_(idx, idx)], h.dense(), atol=1e-12)


def test_angular_momentum_n1():
    jx, jy, jz = angular_momentum_matrices(1)
    np.testing.assert_allclose(jz, np.diag([0.5, -0.5]))


@pytest.mark.parametrize("N", range(1, 13))
def test_casimir_and_commutators(N):
    jx, jy, jz = angular_momentum_matrices(N)
    j = N / 2
    casimir = jx @ jx + jy @ jy + jz @ jz
    np.testing.assert_allclose(casimir, j * (j + 1) * np.eye(N + 1), atol=1e-10)
    np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    np.testing.assert_allclose(jy @ jz - jz @ jy, 1j * jx, atol=1e-12)
    np.testing.assert_allclose(jz @ jx - jx @ jz, 1j * jy, atol=1e-12)


def test_casimir_n2_is_twice_identity():
    jx, jy, jz = angular_momentum_matrices(2)
    np.testing.assert_allclose(jx @ jx + jy @ jy + jz @ jz, 2 * np.eye(3), atol=1e-12)


def test_angular_builder_agrees_with_dense_operators():
    N, chi, omega = 7, 0.3, 1.1
    jx, _, jz = angular_momentum_matrices(N)
    # row order is m = n_A - N/2, i.e. the negative of the printed J_z; J_z^2 is unaffected
    np.testing.assert_allclose(build_angular(N, chi, omega).dense(), chi * jz @ jz - omega * jx, atol=1e-12)


def test_apply_examples():
    h = SymTriMatrix(np.ones(3), np.zeros(2))
    v = np.array([1.0, 2.0, 3.0])
    np.testing.assert_allclose(apply(h, v), v)
    h1 = build_josephson(1, 8, 0, 2)
    np.testing.assert_allclose(apply(h1, np.array([1.0, 0.0])), [1, -1])
    with pytest.raises(InvalidParameterError):
        apply(h1, np.ones(3))


def test_apply_matches_dense_and_expectation_is_real():
    rng = np.random.default_rng(7)
    for dim in range(1, 15):
        d, e = random_symtri(rng, dim)
        h = SymTriMatrix(d, e)
        z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        np.testing.assert_allclose(apply(h, z), h.dense() @ z, atol=1e-12)
        psi = StateVector(dimer_basis(dim - 1), z) if dim > 1 else None
        if psi is not None:
            ev = np.vdot(psi.amplitudes, apply(h, psi))
            assert abs(ev.imag) <= 1e-12


def test_builders_stay_in_one_sector():
    for h in (build_josephson(6, 1, 0, 1), build_angular(6, 1, 1)):
        assert h.basis.kind is BasisKind.DIMER
        assert all(a + b == 6 for a, b in h.basis.labels)
    h = build_atom_molecule(7, 1, 1)
    assert all(a + 2 * b == 7 for a, b in h.basis.labels)


def test_symtri_validation():
    with pytest.raises(InvalidParameterError):
        SymTriMatrix([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(InvalidParameterError):
        SymTriMatrix([1.0, np.inf], [0.0])
    with pytest.raises(InvalidParameterError):
        SymTriMatrix([], [])
