"""Orientations of finite subgroups inside SU(3).

An orientation is a unitary M; the reoriented generators are M^dagger g M.
"""
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.linalg import expm

from .catalog import MATRICES, W3, xi
from .errors import EmptyCatalog, NotSubgroup
from .groups import generate_group, is_symmetry_of, tensor_rep
from .hamiltonians import GELL_MANN
from .linalg import dagger, hermitian_log, is_unitary


@dataclass
class Orientation:
    conjugator: np.ndarray
    weyl_perm: tuple = (0, 1, 2)
    description: str = ""

    @property
    def matrix(self):
        return self.conjugator @ permutation_matrix(self.weyl_perm)


def permutation_matrix(perm):
    """Column permutation: (U P)[:, k] = U[:, perm[k]]."""
    p = np.zeros((len(perm), len(perm)), dtype=complex)
    for k, s in enumerate(perm):
        p[s, k] = 1
    return p


def conjugate_generators(gens, orientation):
    m = orientation.matrix if isinstance(orientation, Orientation) else np.asarray(orientation)
    return [dagger(m) @ np.asarray(g) @ m for g in gens]


def diagonalizer_of_X():
    """Unitary U with U^dagger X U = diag(-i, i, 1)."""
    w = W3
    s3 = np.sqrt(3)
    a, b = np.sqrt(6 + 2 * s3), np.sqrt(6 - 2 * s3)
    return np.array([[(1 + s3) / a, (1 - s3) / b, 0],
                     [1 / a, 1 / b, -w ** 2 / np.sqrt(2)],
                     [w / a, w / b, 1 / np.sqrt(2)]], dtype=complex)


def perm_name(perm):
    """Cycle notation, 1-based, e.g. (0, 2, 1) -> '(23)'."""
    seen, cycles = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(str(j + 1))
            j = perm[j]
        cycles.append("(" + "".join(c) + ")")
    return "".join(cycles) or "e"


def parse_perm(text):
    """'12' or '(12)' or 'e' -> permutation tuple of range(3)."""
    text = text.strip().strip("()")
    perm = list(range(3))
    if text in ("", "e"):
        return tuple(perm)
    idx = [int(c) - 1 for c in text]
    for a, b in zip(idx, idx[1:] + idx[:1]):
        perm[a] = b
    return tuple(perm)


WEYL_PERMS = list(permutations(range(3)))


def weyl_orientations(base=None, reduced=False):
    """The six column permutations of ``base``; three if reduced modulo (13)."""
    if base is None:
        base = diagonalizer_of_X()
    out = [Orientation(base, p, f"U{perm_name(p)}") for p in WEYL_PERMS]
    if not reduced:
        return out
    swap13 = (2, 1, 0)
    keep, seen = [], set()
    for o in out:
        p = o.weyl_perm
        partner = tuple(p[swap13[k]] for k in range(3))
        if p in seen:
            continue
        seen.update({p, partner})
        keep.append(o)
    return keep


def forbidden_entry_check(h, tol=1e-9):
    """True when the [1,3] entry (double quantum transition) vanishes."""
    h = np.asarray(h)
    return abs(h[0, 2]) <= tol * max(np.linalg.norm(h), 1e-300)


# pulse simplifying conjugations ------------------------------------------

_l = GELL_MANN


def p_family(theta, phi1, phi2, second=False):
    """exp(i theta l_2 or l_7) exp(i phi1 l_8) exp(i phi2 l_3)."""
    lam = _l[6] if second else _l[1]
    return expm(1j * theta * lam) @ expm(1j * phi1 * _l[7]) @ expm(1j * phi2 * _l[2])


def p_parameters():
    """(theta, phi1, phi2) that clear the [1,3] entries, first family.

    phi1 is fixed so that the [2,3] entry of the V generator becomes real.
    """
    s3 = np.sqrt(3)
    theta = np.arctan(np.sqrt((9 + s3) / (9 - s3)))
    phi2 = -0.5 * np.arccos(3 / np.sqrt(13))
    phi_prime = -np.arccos((0.5 + s3) / np.sqrt(5 + 2 * s3))
    phi1 = (phi_prime - phi2) / s3
    return theta, phi1, phi2


def p_prime_parameters():
    """(theta, phi1, phi2) for the second family, with 2 phi2 = arccos(1/sqrt5)."""
    s3 = np.sqrt(3)
    theta = np.arctan(np.sqrt((9 + s3) / 5))
    phi2 = 0.5 * np.arccos(1 / np.sqrt(5))
    rel = np.arccos(3 / (2 * np.sqrt(5) * np.sqrt(5 + 2 * s3)))
    phi1 = (rel + phi2) / s3
    return theta, phi1, phi2


def simplified_orientations():
    """Diagonaliser of X followed by the two simplifying conjugations P and P'."""
    u = diagonalizer_of_X()
    p = p_family(*p_parameters())
    pp = p_family(*p_prime_parameters(), second=True)
    # generators become P (U^dag g U) P^dag = M^dag g M with M = U P^dag
    return [Orientation(u @ dagger(p), (0, 1, 2), "diag-X+P"),
            Orientation(u @ dagger(pp), (0, 1, 2), "diag-X+P'")]


def default_catalog():
    return ([Orientation(np.eye(3, dtype=complex), (0, 1, 2), "identity")]
            + weyl_orientations() + simplified_orientations())


def orientation_search(gens, target_ops=(), criterion="symmetry", catalog=None,
                       representatives=None):
    """Rank orientations; ties keep catalog order.

    symmetry: number of reoriented representatives (default: the generators)
    that commute with every target operator, higher first.
    pulse-simplification: summed |[1,3]| of the reoriented generating
    Hamiltonians, lower first.
    """
    catalog = default_catalog() if catalog is None else list(catalog)
    if not catalog:
        raise EmptyCatalog("no candidate orientations")
    reps = list(gens) if representatives is None else list(representatives)
    scored = []
    for o in catalog:
        if criterion == "symmetry":
            moved = conjugate_generators(reps, o)
            count = 0
            for r in moved:
                if all(is_symmetry_of(t, r, tensor_rep(_sites(t))) for t in target_ops):
                    count += 1
            scored.append((o, float(count), -count))
        elif criterion == "pulse-simplification":
            moved = conjugate_generators(gens, o)
            s = float(sum(abs(hermitian_log(g)[0, 2]) for g in moved))
            scored.append((o, s, s))
        else:
            raise ValueError(f"unknown criterion {criterion!r}")
    scored.sort(key=lambda t: t[2])
    return [(o, s) for o, s, _ in scored]


def _sites(op):
    n = round(np.log(np.asarray(op).shape[0]) / np.log(3))
    return max(n, 1)


# Delta(24) inside Sigma(168) --------------------------------------------

M1 = np.array([[0, 1, 0], [0, 0, -1], [-1, 0, 0]], dtype=complex)
M2 = np.array([[-1, 0, 0], [0, 0, -1], [0, -1, 0]], dtype=complex)


def _sigma168_alt():
    e = xi(7)
    a3 = 1j / np.sqrt(7) * np.array([
        [e ** 2 - e ** 5, e - e ** 6, e ** 4 - e ** 3],
        [e - e ** 6, e ** 4 - e ** 3, e ** 2 - e ** 5],
        [e ** 4 - e ** 3, e ** 2 - e ** 5, e - e ** 6]])
    b3 = 1j / np.sqrt(7) * np.array([
        [e ** 3 - e ** 6, e ** 3 - e, e - 1],
        [e ** 2 - 1, e ** 6 - e ** 5, e ** 6 - e ** 2],
        [e ** 5 - e ** 4, e ** 4 - 1, e ** 5 - e ** 3]])
    return a3, b3


def closed_form_w():
    """Candidates w = w2 w1 from the circulant closed form, one per cube-root branch."""
    e = xi(7)
    a3, b3 = _sigma168_alt()
    w1 = b3 @ np.linalg.matrix_power(a3 @ b3, 2) @ np.linalg.matrix_power(b3 @ a3, 2)
    n3 = 28 * (-342125 - 349668 * e + 283769 * e ** 2 + 9406 * e ** 3
               - 501928 * e ** 4 + 287955 * e ** 6)
    x0 = -64 - 15 * e - 56 * e ** 3 - 46 * e ** 4 + 5 * e ** 5 - 27 * e ** 6
    y0 = 73 * e + 156 * e ** 2 + 46 * e ** 3 + 12 * e ** 4 + 137 * e ** 5 + 115 * e ** 6
    z0 = 15 + 35 * e - 35 * e ** 2 - 23 * e ** 3 + 41 * e ** 4 - 46 * e ** 6
    out = []
    for k in range(3):
        n = abs(n3) ** (1 / 3) * np.exp(1j * (np.angle(n3) + 2 * np.pi * k) / 3)
        x, y, z = x0 / n, y0 / n, z0 / n
        w2 = np.array([[x, y, z], [z, x, y], [y, z, x]])
        out.append(w2 @ w1)
    return out


def _intertwiner(src_gens, dst_gens, seed=0):
    """Unitary w with w^dag s_i w = t_i, assuming the two reps are equivalent."""
    src = generate_group(src_gens)
    images = {0: np.eye(3, dtype=complex)}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for gs, gt in zip(src_gens, dst_gens):
                u = src.index_of(gs @ src.elements[v])
                if u not in images:
                    images[u] = gt @ images[v]
                    nxt.append(u)
        frontier = nxt
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    w = sum(src.elements[k] @ x @ dagger(images[k]) for k in range(src.order))
    sv = np.linalg.svd(w, compute_uv=False)
    return w / sv[0]


def _search_embedding(sigma168):
    """Find images of M1, M2 inside Sigma(168) with matching traces and order 24."""
    els = sigma168.elements
    tr = np.trace(els, axis1=1, axis2=2)
    orders = sigma168.element_orders()

    def mord(m):
        p, k = m.copy(), 1
        while not np.allclose(p, np.eye(3)):
            p, k = p @ m, k + 1
        return k

    ca = [i for i in range(len(els)) if abs(tr[i] - np.trace(M1)) < 1e-9 and orders[i] == mord(M1)]
    cb = [i for i in range(len(els)) if abs(tr[i] - np.trace(M2)) < 1e-9 and orders[i] == mord(M2)]
    words = [lambda a, b: a @ b, lambda a, b: a @ a @ b, lambda a, b: a @ b @ b @ a @ b]
    for i in ca:
        for j in cb:
            a, b = els[i], els[j]
            if any(abs(np.trace(f(a, b)) - np.trace(f(M1, M2))) > 1e-9 for f in words):
                continue
            if generate_group([a, b], max_order=200).order != 24:
                continue
            w = _intertwiner([M1, M2], [a, b])
            if is_unitary(w, 1e-9):
                return w
    raise NotSubgroup("no Delta(24) realisation found inside Sigma(168)")


def delta24_embedding(sigma168=None):
    """Generators w^dag {M1, M2} w of a Delta(24) sitting inside <Y, Z>.

    The circulant closed form is tried first on every cube-root branch; when
    none of them lands in the group, w is computed as the intertwiner to a
    matching pair of elements found by search.
    Returns (generators, w, source) with source 'closed-form' or 'search'.
    """
    if sigma168 is None:
        sigma168 = generate_group([MATRICES["Y"], MATRICES["Z"]], name="Sigma168")
    for w in closed_form_w():
        if not is_unitary(w, 1e-8):
            continue
        g = [dagger(w) @ m @ w for m in (M1, M2)]
        if all(sigma168.contains(x) for x in g):
            return g, w, "closed-form"
    w = _search_embedding(sigma168)
    return [dagger(w) @ m @ w for m in (M1, M2)], w, "search"


# double driving pulses --------------------------------------------------


@dataclass
class DoubleDrivingPulse:
    omega_a: float
    omega_b: float
    phi_a: float
    phi_b: float
    detuning_a: float
    detuning_b: float


def double_driving_hamiltonian(p):
    """Rotating-frame Hamiltonian of a spin-1 driven on both single-quantum lines."""
    w10 = 2 / 3 * p.detuning_a - 1 / 3 * p.detuning_b
    wm10 = 2 / 3 * p.detuning_b - 1 / 3 * p.detuning_a
    a = -p.omega_a * np.exp(-1j * p.phi_a)
    b = -p.omega_b * np.exp(-1j * p.phi_b)
    return np.array([[w10, a, 0],
                     [np.conj(a), wm10 - w10, b],
                     [0, np.conj(b), -wm10]], dtype=complex)


def pulse_from_hamiltonian(h, tol=1e-9):
    """Inverse of ``double_driving_hamiltonian`` for a traceless h with h[0,2] = 0."""
    h = np.asarray(h, dtype=complex)
    if not forbidden_entry_check(h, tol):
        raise ValueError("Hamiltonian populates the [1,3] entry")
    h = h - np.trace(h) / 3 * np.eye(3)
    w10, wm10 = h[0, 0].real, -h[2, 2].real
    a, b = -h[0, 1], -h[1, 2]
    return DoubleDrivingPulse(abs(a), abs(b), -np.angle(a), -np.angle(b),
                              2 * w10 + wm10, 2 * wm10 + w10)
