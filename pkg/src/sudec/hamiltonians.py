"""Gell-Mann operators, spin operators and the model Hamiltonians used in sweeps."""
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InvalidInput, UnknownKind
from .linalg import embed, kron_all, sym_power_algebra


def gell_mann():
    """lambda_1 .. lambda_8 with Tr(l_a l_b) = 2 delta_ab."""
    l = np.zeros((8, 3, 3), dtype=complex)
    l[0][0, 1] = l[0][1, 0] = 1
    l[1][0, 1], l[1][1, 0] = -1j, 1j
    l[2][0, 0], l[2][1, 1] = 1, -1
    l[3][0, 2] = l[3][2, 0] = 1
    l[4][0, 2], l[4][2, 0] = -1j, 1j
    l[5][1, 2] = l[5][2, 1] = 1
    l[6][1, 2], l[6][2, 1] = -1j, 1j
    l[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return l


GELL_MANN = gell_mann()


def spin_matrices(s):
    """(S_x, S_y, S_z) for spin s in the basis m = s, s-1, ..., -s."""
    two_s = round(2 * s)
    half = np.array([[[0, 0.5], [0.5, 0]], [[0, -0.5j], [0.5j, 0]], [[0.5, 0], [0, -0.5]]],
                    dtype=complex)
    return np.array([sym_power_algebra(m, two_s) for m in half])


def ladder(s):
    sx, sy, sz = spin_matrices(s)
    return sx + 1j * sy, sx - 1j * sy, sz


def site_operator(op, site, n, d):
    return embed(op, [site], n, d)


@dataclass
class HamiltonianModel:
    """H = scale_delta * disorder + scale_gamma * interaction on n sites of dim d."""
    disorder: np.ndarray
    interaction: np.ndarray
    n_sites: int
    local_dim: int
    kind: str
    params: dict = field(default_factory=dict)

    def matrix(self, scale_delta=1.0, scale_gamma=1.0):
        return scale_delta * self.disorder + scale_gamma * self.interaction

    @property
    def dim(self):
        return self.local_dim ** self.n_sites


def _unit_vector(rng, k):
    v = rng.normal(size=k)
    return v / np.linalg.norm(v)


def _coupling_matrix(rng, anisotropic):
    m = rng.normal(size=(8, 8))
    if anisotropic:
        m = m - np.trace(m) / 8 * np.eye(8)
    else:
        m = np.eye(8)
    return m / np.linalg.norm(m)


def build_random_hamiltonian(n, delta_scale=1.0, gamma_scale=1.0, anisotropic=True, seed=None):
    """Random SU(3) disorder plus pairwise couplings on n qutrits.

    Local fields point along Gaussian unit vectors in the 8-dim Gell-Mann
    space; couplings are Gaussian 8x8 matrices, projected traceless in the
    anisotropic case and normalised in Frobenius norm.
    """
    if n < 1:
        raise InvalidInput("need at least one site")
    rng = np.random.default_rng(seed)
    lam = GELL_MANN
    disorder = np.zeros((3 ** n, 3 ** n), dtype=complex)
    for i in range(n):
        delta = rng.uniform(-0.5, 0.5)
        nhat = _unit_vector(rng, 8)
        disorder += delta_scale * delta * site_operator(np.tensordot(nhat, lam, 1), i, n, 3)
    inter = np.zeros_like(disorder)
    for i, j in combinations(range(n), 2):
        gamma = rng.uniform(-0.5, 0.5)
        m = _coupling_matrix(rng, anisotropic)
        pair = np.einsum("ab,aij,bkl->ikjl", m, lam, lam).reshape(9, 9)
        inter += gamma_scale * gamma * embed(pair, [i, j], n, 3)
    return HamiltonianModel(disorder, inter, n, 3, "su3-random",
                            {"anisotropic": anisotropic, "seed": seed})


def secular_dipolar_pair():
    """Two-qutrit secular dipolar operator for unit coupling."""
    l = GELL_MANN
    flip = sum(np.kron(l[a], l[a]) for a in (0, 1, 5, 6))
    zz = l[2] + np.sqrt(3) * l[7]
    return -(flip - np.kron(zz, zz)) / 4


def build_secular_dipolar(n, J):
    """Secular dipolar coupling sum_{i<j} J_ij times the pair operator."""
    J = np.asarray(J, dtype=float)
    pair = secular_dipolar_pair()
    out = np.zeros((3 ** n, 3 ** n), dtype=complex)
    for i, j in combinations(range(n), 2):
        out += J[i, j] * embed(pair, [i, j], n, 3)
    return out


SZ1 = np.diag([1.0, 0.0, -1.0]).astype(complex)


def build_rwa_disorder(n, deltas):
    out = np.zeros((3 ** n, 3 ** n), dtype=complex)
    for i, d in enumerate(deltas):
        out += d * site_operator(SZ1, i, n, 3)
    return out


def build_nv_hamiltonian(n, delta_scale=1.0, j_scale=1.0, seed=None):
    """Spin-1 disorder along z plus secular dipolar couplings, uniform random."""
    rng = np.random.default_rng(seed)
    deltas = rng.uniform(-0.5, 0.5, size=n) * delta_scale
    J = np.zeros((n, n))
    for i, j in combinations(range(n), 2):
        J[i, j] = J[j, i] = rng.uniform(-0.5, 0.5) * j_scale
    return HamiltonianModel(build_rwa_disorder(n, deltas), build_secular_dipolar(n, J), n, 3, "nv",
                            {"seed": seed})


def build_su2_hamiltonians(n, spin, kind, J=None, axis=(0, 0, 1)):
    """Two-body spin Hamiltonians: secular-dipolar-su2, exchange or bilinear."""
    s = spin_matrices(spin)
    d = s.shape[-1]
    if J is None:
        J = np.ones((n, n))
    J = np.asarray(J, dtype=float)
    out = np.zeros((d ** n, d ** n), dtype=complex)
    for i, j in combinations(range(n), 2):
        if kind == "exchange":
            pair = sum(np.kron(s[a], s[a]) for a in range(3))
        elif kind == "secular-dipolar-su2":
            r = np.asarray(axis, dtype=float)
            r = r / np.linalg.norm(r)
            rs = np.tensordot(r, s, 1)
            pair = 3 * np.kron(rs, rs) - sum(np.kron(s[a], s[a]) for a in range(3))
        elif kind == "bilinear":
            pair = kron_all([s[0], s[1]]) + kron_all([s[1], s[0]])
        else:
            raise UnknownKind(kind)
        out += J[i, j] * embed(pair, [i, j], n, d)
    return out
