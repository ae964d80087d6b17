"""Codes supported on one-dimensional irreps of a finite group.

The codespace is the isotypic component of a 1D character inside an ambient
space (a spin-j multiplet, symmetric qudits or a full register); errors are
checked against the Knill-Laflamme conditions.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import (DimensionMismatch, InvalidInput, NoRefinement, NonIdempotent,
                     RankMismatch, UnknownKind)
from .groups import (FiniteGroup, one_dim_characters, rep_multiplicity, rotation_angles,
                     spin_rep, sym_rep, tensor_rep)
from .hamiltonians import GELL_MANN, spin_matrices
from .lie import su2_character
from .linalg import complete_homogeneous, dagger, sym_dim, sym_power_algebra


@dataclass(frozen=True)
class AmbientSpace:
    kind: str  # spin-j | symmetric-qudits | full-register
    j: float = 0
    d: int = 3
    n: int = 1

    @classmethod
    def spin(cls, j):
        return cls("spin-j", j=j, d=2, n=round(2 * j))

    @classmethod
    def symmetric(cls, n, d=3):
        return cls("symmetric-qudits", d=d, n=n)

    @classmethod
    def register(cls, n, d=3):
        return cls("full-register", d=d, n=n)

    def __post_init__(self):
        if self.kind not in ("spin-j", "symmetric-qudits", "full-register"):
            raise UnknownKind(f"unknown ambient kind {self.kind!r}")

    @property
    def dim(self):
        if self.kind == "spin-j":
            return round(2 * self.j) + 1
        if self.kind == "symmetric-qudits":
            return sym_dim(self.d, self.n)
        return self.d ** self.n

    def rep(self, group=None):
        if self.kind == "spin-j":
            if group is not None and not group.so3:
                raise DimensionMismatch("spin ambients need a rotation group")
            if round(2 * self.j) % 2:
                raise InvalidInput("half-integer spin is projective for rotation groups")
            return spin_rep(self.j)
        if group is not None and group.d != self.d:
            raise DimensionMismatch(f"group of {group.d}x{group.d} matrices on qudits of dim {self.d}")
        if self.kind == "symmetric-qudits":
            return sym_rep(self.n)
        return tensor_rep(self.n)

    def describe(self):
        if self.kind == "spin-j":
            return {"kind": self.kind, "j": self.j, "dim": self.dim}
        return {"kind": self.kind, "d": self.d, "n": self.n, "dim": self.dim}

    def one_body(self, a):
        """Collective embedding sum_i a_i of a single-site operator."""
        if self.kind == "full-register":
            from .linalg import embed
            return sum(embed(a, [i], self.n, self.d) for i in range(self.n))
        return sym_power_algebra(a, self.n)


def space_character(ambient, mats, so3=None):
    """Character of the ambient representation on group elements."""
    mats = np.asarray(mats, dtype=complex)
    if ambient.kind == "spin-j":
        if mats.shape[-1] == 3:
            theta = rotation_angles(mats)
        elif mats.shape[-1] == 2:
            theta = 2 * np.arccos(np.clip(np.real(np.trace(mats, axis1=-2, axis2=-1)) / 2, -1, 1))
        else:
            raise DimensionMismatch("spin characters need 2x2 or 3x3 elements")
        return su2_character(ambient.j, theta).astype(complex)
    if mats.shape[-1] != ambient.d:
        raise DimensionMismatch(f"elements of size {mats.shape[-1]} on qudits of dim {ambient.d}")
    if ambient.kind == "symmetric-qudits":
        eig = np.linalg.eigvals(mats)
        return complete_homogeneous(eig, ambient.n)[..., ambient.n]
    return np.trace(mats, axis1=-2, axis2=-1) ** ambient.n


def multiplicity_scan(group, family, values, characters=None):
    """Rows (value, character index, multiplicity) over a range of ambients.

    family is 'spin' (values are j) or 'qudits' (values are N).
    """
    chars = one_dim_characters(group) if characters is None else characters
    rows = []
    for v in values:
        amb = AmbientSpace.spin(v) if family == "spin" else AmbientSpace.symmetric(v, group.d)
        chi = space_character(amb, group.elements)
        for ci, c in enumerate(chars):
            rows.append({"value": v, "character": ci, "name": c.name,
                         "multiplicity": rep_multiplicity(group, chi, c.values)})
    return rows


@dataclass
class CodeSpace:
    ambient: AmbientSpace
    group: FiniteGroup
    character: object
    projector: np.ndarray
    codewords: np.ndarray  # columns
    sectors: list = field(default_factory=list)

    @property
    def k(self):
        return self.codewords.shape[1]


def codespace_projector(group, character, ambient):
    """P = (1/|G|) sum_g conj(chi(g)) pi(g)."""
    images = np.asarray(ambient.rep(group)(group.elements))
    vals = np.asarray(character.values if hasattr(character, "values") else character)
    p = np.einsum("g,gab->ab", np.conj(vals), images) / group.order
    err = np.linalg.norm(p @ p - p)
    if err > 1e-8 * max(1.0, np.linalg.norm(p)) or np.linalg.norm(p - dagger(p)) > 1e-8:
        raise NonIdempotent(f"projector fails P^2 = P by {err:.2e}")
    return p


def _fix_phase(v):
    k = int(np.argmax(np.abs(v) > 1e-6))
    z = v[k]
    return v * (np.conj(z) / abs(z))


def extract_codewords(p, k_expected=None):
    """Orthonormal basis of range(P), obtained deterministically from P's columns."""
    p = np.asarray(p, dtype=complex)
    w = np.linalg.eigvalsh((p + dagger(p)) / 2)
    k = int(np.sum(w >= 1 - 1e-6))
    if k_expected is not None and k != k_expected:
        raise RankMismatch(f"codespace has dimension {k}, expected {k_expected}")
    basis = []
    for col in range(p.shape[1]):
        v = p[:, col].copy()
        for b in basis:
            v -= (np.conj(b) @ v) * b
        nrm = np.linalg.norm(v)
        if nrm > 1e-6:
            basis.append(v / nrm)
        if len(basis) == k:
            break
    if len(basis) != k:
        raise RankMismatch(f"found {len(basis)} independent columns, rank is {k}")
    c = np.array([_fix_phase(b) for b in basis]).T if k else np.zeros((p.shape[0], 0), complex)
    return c


def build_code(group, character, ambient, k_expected=None):
    if isinstance(character, int):
        character = one_dim_characters(group)[character]
    p = codespace_projector(group, character, ambient)
    return CodeSpace(ambient, group, character, p, extract_codewords(p, k_expected))


# error sets ---------------------------------------------------------------


@dataclass
class ErrorSet:
    """Error operators on the ambient space.

    ``one_body`` keeps the single-site operators behind collective errors;
    on symmetric spaces the products of such single-site operators enter the
    correction conditions as collective operators of their own.
    """
    ops: list
    names: list
    one_body: list = field(default_factory=list)
    ambient: AmbientSpace = None

    def squared(self):
        out, names = [], []
        for a, na in zip(self.ops, self.names):
            for b, nb in zip(self.ops, self.names):
                out.append(dagger(a) @ b)
                names.append(f"{na}^+ {nb}")
        for i, a in enumerate(self.one_body):
            for j, b in enumerate(self.one_body):
                out.append(self.ambient.one_body(dagger(a) @ b))
                names.append(f"site(e{i}^+ e{j})")
        return out, names


def error_set(kind, ambient, axes=None):
    """Named error families on an ambient space.

    spin-linear: identity and S_x, S_y, S_z. dephasing: identity and S_z
    (spins) or the collective diagonal Gell-Mann operators (qudits).
    qutrit-single: identity and all collective Gell-Mann operators.
    dipolar+disorder: spin-linear plus collective dipolar couplings along
    the given axes (default z).
    """
    eye = np.eye(ambient.dim, dtype=complex)
    if ambient.kind == "spin-j":
        s = spin_matrices(ambient.j)
        if kind == "spin-linear":
            return ErrorSet([eye, *s], ["1", "Sx", "Sy", "Sz"], ambient=ambient)
        if kind == "dephasing":
            return ErrorSet([eye, s[2]], ["1", "Sz"], ambient=ambient)
        if kind == "dipolar+disorder":
            ops, names = [eye, *s], ["1", "Sx", "Sy", "Sz"]
            s2 = sum(m @ m for m in s)
            for r in (axes or [(0, 0, 1)]):
                r = np.asarray(r, dtype=float)
                r = r / np.linalg.norm(r)
                rs = np.tensordot(r, s, 1)
                # collective pair sum of 3 (r.s_i)(r.s_j) - s_i.s_j for spin-1/2 constituents
                ops.append(0.5 * (3 * rs @ rs - s2))
                names.append(f"D({r[0]:.3f},{r[1]:.3f},{r[2]:.3f})")
            return ErrorSet(ops, names, ambient=ambient)
        raise UnknownKind(f"unknown error kind {kind!r} for spins")
    if ambient.d != 3:
        raise UnknownKind("qudit error families are defined for qutrits")
    if kind == "dephasing":
        single = [GELL_MANN[2], GELL_MANN[7]]
        names = ["l3", "l8"]
    elif kind == "qutrit-single":
        single = list(GELL_MANN)
        names = [f"l{a + 1}" for a in range(8)]
    else:
        raise UnknownKind(f"unknown error kind {kind!r} for qutrits")
    ops = [eye] + [ambient.one_body(a) for a in single]
    return ErrorSet(ops, ["1"] + names, one_body=single, ambient=ambient)


@dataclass
class KLReport:
    ambient: dict
    group: str
    character_index: int
    k: int
    mode: str
    max_offdiag: float
    max_diag_spread: float
    passed: bool
    per_operator: list

    def to_json(self):
        return {"ambient": self.ambient, "group": self.group,
                "character_index": self.character_index, "k": self.k, "mode": self.mode,
                "max_offdiag": self.max_offdiag, "max_diag_spread": self.max_diag_spread,
                "pass": self.passed, "per_operator": self.per_operator}


def kl_check(code, errors, mode="correct", character_index=0, tol=1e-8):
    """Knill-Laflamme test: <i|F|j> = c_F delta_ij for every F in the set.

    mode 'detect' tests the errors themselves, 'correct' the products E_p^dag E_q.
    """
    if mode not in ("detect", "correct"):
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(errors, ErrorSet):
        if mode == "correct":
            ops, names = errors.squared()
        else:
            ops, names = errors.ops, errors.names
    else:
        ops = list(errors)
        names = [f"E{i}" for i in range(len(ops))]
        if mode == "correct":
            ops = [dagger(a) @ b for a in errors for b in errors]
            names = [f"E{i}^+ E{j}" for i in range(len(errors)) for j in range(len(errors))]
    c = code.codewords
    per, max_off, max_spread, ok = [], 0.0, 0.0, True
    for f, name in zip(ops, names):
        f = np.asarray(f)
        if f.shape != (c.shape[0], c.shape[0]):
            raise DimensionMismatch("error operator does not act on the ambient space")
        m = dagger(c) @ f @ c
        off = float(np.max(np.abs(m - np.diag(np.diag(m))))) if code.k > 1 else 0.0
        dg = np.diag(m)
        spread = float(np.max(np.abs(dg - dg[0]))) if code.k else 0.0
        thr = tol * max(np.linalg.norm(f), 1e-300)
        passed = off <= thr and spread <= thr
        ok &= passed
        max_off = max(max_off, off)
        max_spread = max(max_spread, spread)
        per.append({"operator": name, "offdiag": off, "diag_spread": spread, "pass": bool(passed)})
    return KLReport(code.ambient.describe(), code.group.name, character_index, code.k, mode,
                    max_off, max_spread, bool(ok), per)


def logical_gate_check(code, candidate, tol=1e-8):
    """k x k logical action of ``candidate`` if it preserves the codespace, else None.

    ``candidate`` is either a group-level matrix (mapped through the ambient
    representation) or an operator on the ambient space.
    """
    cand = np.asarray(candidate, dtype=complex)
    if cand.shape[0] != code.ambient.dim:
        cand = np.asarray(code.ambient.rep(code.group)(cand[None]))[0]
    c = code.codewords
    image = cand @ c
    logical = dagger(c) @ image
    if np.linalg.norm(image - c @ logical) > tol * max(1.0, np.linalg.norm(image)):
        return None
    return logical


def restriction_matches(small, large, character_small, character_large, tol=1e-8):
    idx = large.indices_of(small.elements)
    return bool(np.allclose(character_large.values[idx], character_small.values, atol=tol))


def refine_basis(code, larger):
    """Split the codespace into sectors of 1D characters of a larger group.

    Characters of ``larger`` restricting to the code's character are used in
    their canonical order; the result must span the whole codespace.
    """
    chars = one_dim_characters(larger)
    c = code.codewords
    new, sectors = [], []
    for ci, ch in enumerate(chars):
        if not restriction_matches(code.group, larger, code.character, ch):
            continue
        p = codespace_projector(larger, ch, code.ambient)
        m = dagger(c) @ p @ c
        w, v = np.linalg.eigh((m + dagger(m)) / 2)
        for val, vec in zip(w, v.T):
            if val > 1 - 1e-6:
                new.append(_fix_phase(c @ vec))
                sectors.append(ci)
    if len(new) != code.k:
        raise NoRefinement(f"larger group splits {len(new)} of {code.k} codewords")
    return CodeSpace(code.ambient, code.group, code.character, code.projector,
                     np.array(new).T, sectors)
