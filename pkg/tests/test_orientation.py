import numpy as np
import pytest

from sudec.catalog import MATRICES, builtin_group
from sudec.errors import EmptyCatalog
from sudec.groups import generate_group
from sudec.hamiltonians import secular_dipolar_pair
from sudec.linalg import dagger, hermitian_log, is_unitary
from sudec.orientation import (M1, M2, DoubleDrivingPulse, Orientation, conjugate_generators,
                               delta24_embedding, diagonalizer_of_X, double_driving_hamiltonian,
                               forbidden_entry_check, orientation_search, p_family,
                               p_parameters, p_prime_parameters, parse_perm, perm_name,
                               permutation_matrix, pulse_from_hamiltonian, simplified_orientations,
                               weyl_orientations)


def test_diagonalizer_of_X():
    u = diagonalizer_of_X()
    assert is_unitary(u)
    assert np.allclose(dagger(u) @ MATRICES["X"] @ u, np.diag([-1j, 1j, 1]), atol=1e-12)


def test_weyl_orientations():
    full = weyl_orientations()
    assert len(full) == 6
    assert len(weyl_orientations(reduced=True)) == 3
    x = MATRICES["X"]
    # column permutations permute the diagonal of the diagonalised X
    diags = {tuple(np.round(np.diag(dagger(o.matrix) @ x @ o.matrix), 9)) for o in full}
    assert len(diags) == 6


def test_perm_names_roundtrip():
    for p in [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]:
        assert parse_perm(perm_name(p)) == p
    assert perm_name((0, 1, 2)) == "e"
    assert perm_name((0, 2, 1)) == "(23)"
    m = permutation_matrix((1, 2, 0))
    u = np.arange(9).reshape(3, 3)
    assert np.array_equal((u @ m)[:, 0], u[:, 1])


def test_orientation_preserves_order():
    o = Orientation(diagonalizer_of_X(), (1, 0, 2))
    gens = conjugate_generators([MATRICES["C"], MATRICES["V"]], o)
    assert generate_group(gens).order == 108


def test_forbidden_entry_check():
    assert forbidden_entry_check(np.diag([1.0, 0.0, -1.0]))
    h = np.zeros((3, 3), dtype=complex)
    h[0, 2] = h[2, 0] = 0.1
    assert not forbidden_entry_check(h)


def test_p_family_unitary():
    for params in (p_parameters(), p_prime_parameters()):
        assert is_unitary(p_family(*params))
        assert is_unitary(p_family(*params, second=True))


def test_simplified_generators_avoid_double_quantum():
    for o in simplified_orientations():
        for name in "VX":
            h = hermitian_log(dagger(o.matrix) @ MATRICES[name] @ o.matrix)
            assert abs(h[0, 2]) < 1e-8 and abs(h[2, 0]) < 1e-8
    # the unsimplified diagonaliser does populate [1,3] for V
    u = diagonalizer_of_X()
    assert abs(hermitian_log(dagger(u) @ MATRICES["V"] @ u)[0, 2]) > 1e-3


def test_p_conjugation_convention():
    # new generators are P (U^dag g U) P^dag
    u = diagonalizer_of_X()
    p = p_family(*p_parameters())
    o = simplified_orientations()[0]
    v = MATRICES["V"]
    assert np.allclose(dagger(o.matrix) @ v @ o.matrix, p @ dagger(u) @ v @ u @ dagger(p))


def test_double_driving(rng):
    for _ in range(50):
        p = DoubleDrivingPulse(*rng.normal(size=2), *rng.uniform(-np.pi, np.pi, 2),
                               *rng.normal(size=2))
        h = double_driving_hamiltonian(p)
        assert np.allclose(h, dagger(h))
        assert abs(np.trace(h)) < 1e-12
        assert h[0, 2] == 0
        back = pulse_from_hamiltonian(h)
        assert np.allclose(double_driving_hamiltonian(back), h, atol=1e-12)


def test_pulse_from_hamiltonian_rejects_forbidden():
    h = np.zeros((3, 3), dtype=complex)
    h[0, 2] = h[2, 0] = 1
    with pytest.raises(ValueError):
        pulse_from_hamiltonian(h)


def test_orientation_search_symmetry():
    pair = secular_dipolar_pair()
    x = MATRICES["X"]
    ranked = orientation_search([MATRICES["V"], x], [pair], representatives=[x])
    top = [o.description for o, s in ranked if s == 1.0]
    # every Weyl arrangement of the X diagonaliser makes X a symmetry
    assert len(top) == 6 and all(d.startswith("U") for d in top)
    assert dict((o.description, s) for o, s in ranked)["identity"] == 0.0
    # C is diagonal, so the identity orientation keeps it as a symmetry
    plain = orientation_search([MATRICES["C"], MATRICES["V"]], [pair])
    assert plain[0][0].description == "identity" and plain[0][1] == 1.0


def test_orientation_search_pulses():
    ranked = orientation_search([MATRICES["V"], MATRICES["X"]], criterion="pulse-simplification")
    assert ranked[0][1] < 1e-8
    assert ranked[0][0].description in ("diag-X+P", "diag-X+P'")


def test_orientation_search_empty():
    with pytest.raises(EmptyCatalog):
        orientation_search([MATRICES["V"]], catalog=[])


def test_delta24_embedding():
    s168 = builtin_group("Sigma168")
    gens, w, source = delta24_embedding(s168)
    assert is_unitary(w, 1e-9)
    assert source in ("closed-form", "search")
    assert all(s168.contains(g) for g in gens)
    assert np.allclose(dagger(w) @ M1 @ w, gens[0]) and np.allclose(dagger(w) @ M2 @ w, gens[1])
    d24 = generate_group(gens)
    assert d24.order == 24
    assert sorted(d24.class_sizes()) == [1, 3, 6, 6, 8]
