import numpy as np
import pytest

from sudec.catalog import MATRICES, A, builtin_group, rotation
from sudec.errors import NoCenter, NotNormal, NotUnitary, OrderExceeded, UnknownGroup
from sudec.groups import (accessibility_scan, classify_order4, contains_center, generate_group,
                          is_symmetry_of, one_dim_characters, quotient_by_center, quotient_group,
                          rep_multiplicity, symmetrize, tensor_rep, trivial_multiplicity,
                          verify_factorization)
from sudec.hamiltonians import GELL_MANN, secular_dipolar_pair
from sudec.lie import DynkinLabel, su2_character
from sudec.qecc import AmbientSpace, space_character

from conftest import random_hermitian, random_unitary

L = DynkinLabel.of


def test_generate_examples():
    assert generate_group([A(2), MATRICES["E"]]).order == 12
    g = generate_group([MATRICES["V"], MATRICES["X"]])
    assert g.order == 216
    assert generate_group([MATRICES["V"], MATRICES["X"]], mode="projective").order == 72
    assert generate_group([np.eye(3)]).order == 1


def test_builtin_orders():
    assert builtin_group("Sigma168").order == 168
    assert builtin_group("Sigma360x3").order == 1080
    assert builtin_group("T").order == 12
    assert builtin_group("Delta27").order == 27
    assert builtin_group("Delta6n2", 2).order == 24
    with pytest.raises(UnknownGroup):
        builtin_group("Sigma999")
    with pytest.raises(UnknownGroup):
        builtin_group("Delta3n2")


def test_generate_errors():
    with pytest.raises(NotUnitary):
        generate_group([np.diag([1.0, 2.0, 0.5])])
    with pytest.raises(OrderExceeded):
        generate_group([MATRICES["V"], MATRICES["X"]], max_order=100)


def test_closure_is_deterministic():
    a = builtin_group("Sigma36x3")
    b = builtin_group("Sigma36x3")
    assert np.array_equal(a.elements, b.elements)
    assert np.array_equal(a.table, b.table)


def test_class_equation():
    for name in ("T", "O", "Delta27", "Sigma72x3", "Sigma168"):
        g = builtin_group(name)
        sizes = g.class_sizes()
        assert sum(sizes) == g.order
        assert all(g.order % s == 0 for s in sizes)
    assert sorted(builtin_group("T").class_sizes()) == [1, 3, 4, 4]
    assert sorted(builtin_group("Sigma168").class_sizes()) == [1, 21, 24, 24, 42, 56]


def test_center():
    d27 = builtin_group("Delta27")
    assert contains_center(d27)
    assert quotient_by_center(d27).order == 9
    assert quotient_by_center(builtin_group("Sigma72x3")).order == 72
    d12 = builtin_group("Delta12")
    assert not contains_center(d12)
    with pytest.raises(NoCenter):
        quotient_by_center(d12)


def test_projective_symmetrize_matches(rng):
    g = builtin_group("Delta27")
    q = quotient_by_center(g)
    h = random_hermitian(rng, 9)
    assert np.allclose(symmetrize(h, g, tensor_rep(2)), symmetrize(h, q, tensor_rep(2)),
                       atol=1e-10)


def test_trivial_multiplicity_examples():
    assert trivial_multiplicity(builtin_group("Delta12"), L(1, 1)) == 0
    assert trivial_multiplicity(builtin_group("Delta6"), L(1, 1)) > 0
    s72 = builtin_group("Sigma72x3")
    assert trivial_multiplicity(s72, L(2, 2)) == 0
    assert trivial_multiplicity(s72, L(4, 1)) > 0


def test_accessibility_rows():
    rows = accessibility_scan([builtin_group("Sigma168"), builtin_group("Sigma360x3")])
    pattern = ["".join("." if v else "Y" for v in r["inaccessible"].values()) for r in rows]
    # accessible (Y) / inaccessible (.) over (1,1) (3,0) (2,2) (4,1) (3,3) (6,0) (5,2) (4,4)
    assert pattern == ["....YY.Y", ".....Y.Y"]


def _adjoint_matrices(g):
    """8x8 real matrices of the adjoint action on the Gell-Mann basis."""
    l = GELL_MANN
    return np.einsum("aij,gjk,bkl,gil->gab", l, g.elements, l, g.elements.conj()).real / 2


def test_multiplicity_equals_fixed_subspace():
    for name in ("Delta12", "Delta6", "Delta27", "Sigma36x3"):
        g = builtin_group(name)
        p = _adjoint_matrices(g).mean(axis=0)
        assert np.linalg.matrix_rank(p, tol=1e-8) == trivial_multiplicity(g, L(1, 1))
        # (1,1) x (1,1) contains (2,2) once; its fixed space is visible in the
        # symmetric square minus the trivial and adjoint pieces
        ad = _adjoint_matrices(g)
        sq = np.einsum("gab,gcd->gacbd", ad, ad).reshape(len(ad), 64, 64)
        swap = np.eye(64)[[8 * (k % 8) + k // 8 for k in range(64)]]
        sym_fixed = np.linalg.matrix_rank((sq.mean(axis=0) @ (np.eye(64) + swap)) / 2, tol=1e-8)
        want = 1 + trivial_multiplicity(g, L(1, 1)) + trivial_multiplicity(g, L(2, 2))
        assert sym_fixed == want


def test_one_dim_characters():
    assert len(one_dim_characters(builtin_group("D2"))) == 4
    t = one_dim_characters(builtin_group("T"))
    assert len(t) == 3
    w = np.exp(2j * np.pi / 3)
    vals = {complex(np.round(v, 10)) for c in t for v in c.class_values}
    assert any(abs(v - w) < 1e-9 for v in vals) and any(abs(v - w ** 2) < 1e-9 for v in vals)
    assert len(one_dim_characters(builtin_group("Sigma72x3"))) == 4
    d2 = one_dim_characters(builtin_group("D2"))
    assert d2[0].is_trivial
    for c in d2:
        assert set(np.round(c.values.real).astype(int)) <= {-1, 1}


def test_character_orthogonality():
    for name in ("D2", "T", "Sigma72x3", "Sigma36x3"):
        chars = one_dim_characters(builtin_group(name))
        for i, a in enumerate(chars):
            for j, b in enumerate(chars):
                ip = np.mean(np.conj(a.values) * b.values)
                assert abs(ip - (i == j)) < 1e-8


def test_rep_multiplicity_examples():
    t = builtin_group("T")
    triv = one_dim_characters(t)[0]
    assert rep_multiplicity(t, triv.values, triv.values) == 1
    chi6 = space_character(AmbientSpace.spin(6), t.elements)
    assert rep_multiplicity(t, chi6, triv.values) == 2
    d2 = builtin_group("D2")
    chi2 = space_character(AmbientSpace.spin(2), d2.elements)
    assert rep_multiplicity(d2, chi2, one_dim_characters(d2)[0].values) == 2


def test_symmetrize_examples(rng):
    d12 = builtin_group("Delta12")
    assert np.allclose(symmetrize(np.eye(3), d12), np.eye(3))
    assert np.linalg.norm(symmetrize(GELL_MANN[2], d12)) < 1e-10
    h = random_hermitian(rng, 9)
    s = symmetrize(h, builtin_group("Sigma36x3"))
    assert np.allclose(symmetrize(s, builtin_group("Sigma36x3")), s, atol=1e-9)


def test_is_symmetry_of():
    pair = secular_dipolar_pair()
    d = np.diag(np.exp(1j * np.array([0.3, -1.1, 0.8])))
    assert is_symmetry_of(pair, [d])
    assert is_symmetry_of(pair, [MATRICES["B"]])
    assert not is_symmetry_of(pair, [MATRICES["E"]])
    assert is_symmetry_of(np.diag([1.0, 2.0, 3.0]), [d, np.diag([1, 1j, -1j])])


def test_factorization_and_quotients():
    s72, s36 = builtin_group("Sigma72x3"), builtin_group("Sigma36x3")
    assert verify_factorization(s72, s36, [np.eye(3), MATRICES["X"]])
    assert not verify_factorization(s72, s36, [np.eye(3)])
    d12 = builtin_group("Delta12")
    assert verify_factorization(d12, d12, [np.eye(3)])
    d54 = generate_group([MATRICES["C"], MATRICES["E"], MATRICES["B"]])
    d27 = generate_group([MATRICES["C"], MATRICES["E"]])
    assert classify_order4(quotient_group(s72, d54)) == "K4"
    q8 = quotient_group(s72, d27)
    assert q8.order == 8 and classify_order4(q8) == "Q8"
    assert quotient_group(d12, d12).order == 1


def test_quotient_needs_normal_subgroup():
    t = builtin_group("T")
    c3 = generate_group([rotation((1, 1, 1), 2 * np.pi / 3)], so3=True)
    with pytest.raises(NotNormal):
        quotient_group(t, c3)


def test_so3_characters_use_rotation_angle():
    o = builtin_group("O")
    chi = space_character(AmbientSpace.spin(2), o.elements)
    c4 = o.index_of(rotation((0, 0, 1), np.pi / 2))
    assert np.isclose(chi[c4], su2_character(2, np.pi / 2))
    assert np.isclose(chi[c4], -1)
