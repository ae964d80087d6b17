import itertools
from math import comb

import numpy as np
import pytest

from sudec.catalog import A
from sudec.errors import NonHermitianInput, NotUnitary
from sudec.linalg import (complete_homogeneous, eig_unitary, embed, equal_up_to_phase,
                          expm_skew, hermitian_log, kron, kron_all, sym_power,
                          sym_power_algebra, tensor_power)

from conftest import random_hermitian, random_unitary


def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))
    z = np.diag([1, -1])
    assert np.array_equal(kron(z, z), np.diag([1, -1, -1, 1]))


def test_kron_entrywise(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    k = kron(a, b)
    for i, j, p, q in itertools.product(range(2), repeat=4):
        assert np.isclose(k[2 * i + p, 2 * j + q], a[i, j] * b[p, q], rtol=1e-15, atol=0)


def test_kron_associative_integers(rng):
    a, b, c = (rng.integers(-3, 4, size=(2, 2)) for _ in range(3))
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_expm_skew_basics():
    h = np.array([[0.3, 0.1j], [-0.1j, -0.2]])
    assert np.allclose(expm_skew(h, 0), np.eye(2))
    assert np.allclose(expm_skew(np.diag([1.0, 2.0]), np.pi),
                       np.diag([np.exp(-1j * np.pi), np.exp(-2j * np.pi)]))


def test_expm_skew_taylor():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    t = 0.7
    x = -1j * t * sx
    series = np.zeros((2, 2), dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(20):
        series += term
        term = term @ x / (k + 1)
    assert np.linalg.norm(expm_skew(sx, t) - series) < 1e-9


def test_expm_skew_group_law(rng):
    h = random_hermitian(rng, 4)
    assert np.allclose(expm_skew(h, 0.3) @ expm_skew(h, 0.5), expm_skew(h, 0.8), atol=1e-9)


def test_expm_skew_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        expm_skew(np.array([[0, 1], [0, 0]]), 1.0)


def test_eig_unitary_identity_and_A3():
    ph, _ = eig_unitary(np.eye(3))
    assert np.allclose(ph, 0)
    ph, _ = eig_unitary(A(3))
    assert np.allclose(sorted(ph), sorted([0, 2 * np.pi / 3, -2 * np.pi / 3]))


def test_eig_unitary_conjugation_invariant(rng):
    v = random_unitary(rng, 3)
    a, _ = eig_unitary(A(3))
    b, _ = eig_unitary(v @ A(3) @ v.conj().T)
    assert np.allclose(np.sort(a), np.sort(b), atol=1e-9)


def test_eig_unitary_reconstruction(rng):
    u = random_unitary(rng, 5)
    ph, v = eig_unitary(u)
    assert np.all(ph > -np.pi) and np.all(ph <= np.pi)
    assert np.allclose(v @ np.diag(np.exp(1j * ph)) @ v.conj().T, u, atol=1e-9)
    assert np.allclose(v.conj().T @ v, np.eye(5), atol=1e-9)


def test_eig_unitary_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        eig_unitary(2 * np.eye(2))


def test_hermitian_log_inverts(rng):
    u = random_unitary(rng, 3)
    assert np.allclose(expm_skew(hermitian_log(u)), u, atol=1e-9)


def test_sym_power_identity_and_dimension():
    for d, n in [(2, 3), (3, 4), (4, 2)]:
        assert np.allclose(sym_power(np.eye(d), n), np.eye(comb(n + d - 1, d - 1)))


def test_sym_power_spin_phases():
    theta = 0.37
    rz = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    for n in range(1, 6):
        j = n / 2
        ms = np.arange(j, -j - 1, -1)
        assert np.allclose(sym_power(rz, n), np.diag(np.exp(-1j * ms * theta)))


def _brute_h(eig, n):
    total = 0
    for combo in itertools.combinations_with_replacement(range(len(eig)), n):
        total += np.prod([eig[i] for i in combo])
    return total


def test_sym_power_trace_is_complete_homogeneous(rng):
    g = random_unitary(rng, 3)
    eig = np.linalg.eigvals(g)
    h = complete_homogeneous(eig, 6)
    for n in range(7):
        assert np.isclose(np.trace(sym_power(g, n)), _brute_h(eig, n), atol=1e-9)
        assert np.isclose(h[n], _brute_h(eig, n), atol=1e-9)


def test_sym_power_homomorphism_and_unitary(rng):
    a, b = random_unitary(rng, 3), random_unitary(rng, 3)
    for n in (2, 4):
        assert np.allclose(sym_power(a @ b, n), sym_power(a, n) @ sym_power(b, n), atol=1e-9)
        s = sym_power(a, n)
        assert np.allclose(s @ s.conj().T, np.eye(s.shape[0]), atol=1e-10)


def test_sym_power_stack_matches_single(rng):
    mats = np.array([random_unitary(rng, 3) for _ in range(4)])
    stack = sym_power(mats, 3)
    for m, s in zip(mats, stack):
        assert np.allclose(sym_power(m, 3), s)


def test_sym_power_algebra_is_derivative(rng):
    h = random_hermitian(rng, 3)
    eps = 1e-6
    num = (sym_power(expm_skew(h, eps), 3) - sym_power(expm_skew(h, -eps), 3)) / (2 * eps)
    assert np.allclose(sym_power_algebra(-1j * h, 3), num, atol=1e-6)


def test_sym_power_algebra_collective_spin():
    sz = np.diag([0.5, -0.5])
    assert np.allclose(sym_power_algebra(sz, 4), np.diag([2, 1, 0, -1, -2]))


def test_equal_up_to_phase():
    u = np.diag([1, 1j, -1])
    assert equal_up_to_phase(u, np.exp(2j * np.pi / 3) * u)
    assert not equal_up_to_phase(np.eye(3), np.diag([1, 1, -1]))
    assert equal_up_to_phase(np.exp(2j * np.pi / 3) * np.eye(3), np.eye(3))


def test_embed_and_tensor_power(rng):
    a = random_hermitian(rng, 3)
    full = embed(a, [1], 3, 3)
    assert np.allclose(full, kron_all([np.eye(3), a, np.eye(3)]))
    u = random_unitary(rng, 2)
    assert np.allclose(tensor_power(u, 3), kron_all([u, u, u]))
    assert np.allclose(tensor_power(np.array([u, u]), 2)[1], kron(u, u))
