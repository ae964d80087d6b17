"""Finite matrix groups: closure, classes, characters, averages and quotients."""
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import (DimensionMismatch, NoCenter, NonIntegerMultiplicity,
                     NotNormal, NotSubgroup, OrderExceeded)
from .lie import DynkinLabel, matrix_character, su2_character
from .linalg import check_unitary, dagger, sym_power, tensor_power

QUANT = 1e-6
VERIFY_TOL = 1e-9


def canonical_phase(m):
    """Rotate the global phase so the leading largest entry is real positive."""
    mags = np.abs(m).ravel()
    k = int(np.argmax(mags >= mags.max() - QUANT))
    z = m.ravel()[k]
    return m * (np.conj(z) / abs(z))


def _key(m):
    q = np.round(np.concatenate([m.real.ravel(), m.imag.ravel()]) / QUANT).astype(np.int64)
    return q.tobytes()


class FiniteGroup:
    """A finite group of d x d unitaries, stored in breadth-first order.

    In projective mode every element is kept with a canonical global phase,
    so matrices differing by a phase count as one element.
    """

    def __init__(self, elements, generators, mode="exact", name="G",
                 labels=None, so3=False):
        self.elements = np.asarray(elements, dtype=complex)
        self.generators = np.asarray(generators, dtype=complex)
        self.mode = mode
        self.name = name
        self.labels = list(labels) if labels else [f"g{i}" for i in range(len(generators))]
        self.so3 = so3
        self.d = self.elements.shape[-1]
        self._lookup = {}
        for i, m in enumerate(self.elements):
            self._lookup.setdefault(_key(m), []).append(i)
        self._table = None
        self._classes = None
        self._class_of = None
        self._inverse = None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order}, d={self.d}, mode={self.mode})"

    @property
    def order(self):
        return len(self.elements)

    def normalise(self, m):
        m = np.asarray(m, dtype=complex)
        return canonical_phase(m) if self.mode == "projective" else m

    def index_of(self, m):
        """Index of ``m`` in the group or None."""
        m = self.normalise(m)
        for i in self._lookup.get(_key(m), ()):
            if np.max(np.abs(self.elements[i] - m)) < VERIFY_TOL * 10:
                return i
        # near a rounding boundary: fall back to a direct scan
        diff = np.abs(self.elements - m).reshape(len(self.elements), -1).max(axis=1)
        j = int(np.argmin(diff))
        return j if diff[j] < VERIFY_TOL * 10 else None

    def contains(self, m):
        return self.index_of(m) is not None

    def indices_of(self, mats):
        out = []
        for m in mats:
            i = self.index_of(m)
            if i is None:
                raise NotSubgroup(f"element not found in {self.name}")
            out.append(i)
        return out

    def mult(self, i, j):
        if self._table is not None:
            return int(self._table[i, j])
        return self.index_of(self.elements[i] @ self.elements[j])

    @property
    def table(self):
        """Full multiplication table, table[i, j] = index of g_i g_j."""
        if self._table is None:
            n = self.order
            t = np.empty((n, n), dtype=np.int64)
            for i in range(n):
                prods = self.elements[i] @ self.elements
                for j in range(n):
                    k = self.index_of(prods[j])
                    if k is None:
                        raise NotSubgroup("product left the group")
                    t[i, j] = k
            self._table = t
        return self._table

    def inverse(self, i):
        if self._inverse is None:
            self._inverse = np.array(self.indices_of(dagger(self.elements)))
        return int(self._inverse[i])

    def act(self, gen, v):
        """Vertex reached from element ``v`` by left multiplication with generator ``gen``."""
        return self.index_of(self.generators[gen] @ self.elements[v])

    def unitary(self, v):
        return self.elements[v]

    # conjugacy classes --------------------------------------------------

    @property
    def classes(self):
        if self._classes is None:
            class_of = -np.ones(self.order, dtype=np.int64)
            classes = []
            for start in range(self.order):
                if class_of[start] >= 0:
                    continue
                cid = len(classes)
                members = [start]
                class_of[start] = cid
                queue = deque([start])
                while queue:
                    x = queue.popleft()
                    for g in self.generators:
                        y = self.index_of(g @ self.elements[x] @ dagger(g))
                        if class_of[y] < 0:
                            class_of[y] = cid
                            members.append(y)
                            queue.append(y)
                classes.append(sorted(members))
            self._classes = classes
            self._class_of = class_of
        return self._classes

    @property
    def class_of(self):
        self.classes
        return self._class_of

    def class_sizes(self):
        return [len(c) for c in self.classes]

    def element_orders(self):
        out = []
        eye = np.eye(self.d)
        for m in self.elements:
            p = m.copy()
            k = 1
            while not self._same(p, eye):
                p = p @ m
                k += 1
            out.append(k)
        return out

    def _same(self, a, b):
        a = self.normalise(a)
        b = self.normalise(b)
        return np.max(np.abs(a - b)) < VERIFY_TOL * 10


def generate_group(generators, mode="exact", max_order=5000, name="G", labels=None, so3=False):
    """Breadth-first closure of a generating set under left multiplication."""
    if mode not in ("exact", "projective"):
        raise ValueError(f"unknown mode {mode!r}")
    gens = [check_unitary(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].shape[0]
    for g in gens:
        if g.shape != (d, d):
            raise DimensionMismatch("generators have different sizes")
    norm = canonical_phase if mode == "projective" else (lambda m: m)
    gens = [norm(g) for g in gens]
    ident = np.eye(d, dtype=complex)
    elements = [norm(ident)]
    lookup = {_key(elements[0]): [0]}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g in gens:
            m = norm(g @ elements[i])
            hit = False
            for j in lookup.get(_key(m), ()):
                if np.max(np.abs(elements[j] - m)) < VERIFY_TOL * 10:
                    hit = True
                    break
            if hit:
                continue
            if len(elements) >= max_order:
                raise OrderExceeded(f"closure exceeded {max_order} elements")
            lookup.setdefault(_key(m), []).append(len(elements))
            elements.append(m)
            queue.append(len(elements) - 1)
    return FiniteGroup(np.array(elements), np.array(gens), mode=mode, name=name,
                       labels=labels, so3=so3)


# centre -------------------------------------------------------------------


def contains_center(g):
    if g.mode == "projective":
        return False
    w = np.exp(2j * np.pi / g.d)
    return all(g.contains(w ** k * np.eye(g.d)) for k in range(1, g.d))


def quotient_by_center(g):
    if not contains_center(g):
        raise NoCenter(f"{g.name} does not contain the centre Z{g.d}")
    return generate_group(g.generators, mode="projective", name=f"{g.name}/Z{g.d}",
                          labels=g.labels, so3=g.so3)


# characters and multiplicities ------------------------------------------


def rotation_angles(mats):
    """Rotation angle of SO(3) matrices read off the trace."""
    tr = np.real(np.trace(np.asarray(mats), axis1=-2, axis2=-1))
    return np.arccos(np.clip((tr - 1) / 2, -1.0, 1.0))


def label_character(g, label):
    """Character of an irrep label on every element of ``g``."""
    if label.d == 2 and g.so3:
        if label.coeffs[0] % 2:
            raise ValueError("half-integer spin is not a representation of a rotation group")
        return su2_character(label.coeffs[0] / 2, rotation_angles(g.elements)).astype(complex)
    if label.d != g.d:
        raise DimensionMismatch(f"label for SU({label.d}) on a group of {g.d}x{g.d} matrices")
    mats = g.elements
    if g.mode == "projective":
        # lift each class representative back to determinant one
        det = np.linalg.det(mats)
        mats = mats * (det ** (-1.0 / g.d))[:, None, None]
        if label.size % g.d:
            raise ValueError("label is not a representation of the projective group")
    return matrix_character(label, mats)


def _round_multiplicity(value, what):
    if abs(value.imag) > 1e-6 or abs(value.real - round(value.real)) > 1e-6:
        raise NonIntegerMultiplicity(f"{what}: average {value:.8f} is not an integer")
    return int(round(value.real))


def trivial_multiplicity(g, label):
    chi = label_character(g, label)
    return _round_multiplicity(chi.mean(), f"{g.name} {label}")


def rep_multiplicity(g, chi_space, chi_irrep):
    """Multiplicity of an irrep from per-element character values."""
    chi_space = np.asarray(chi_space)
    chi_irrep = np.asarray(chi_irrep)
    return _round_multiplicity(np.mean(np.conj(chi_irrep) * chi_space), g.name)


TABLE_LABELS = [DynkinLabel.of(*c) for c in
                [(1, 1), (3, 0), (2, 2), (4, 1), (3, 3), (6, 0), (5, 2), (4, 4)]]


def accessibility_scan(groups, labels=TABLE_LABELS):
    """Rows of trivial multiplicities; a zero entry means the irrep is decoupled."""
    rows = []
    for g in groups:
        mult = {str(l): trivial_multiplicity(g, l) for l in labels}
        rows.append({"group": g.name, "order": g.order, "center": contains_center(g),
                     "multiplicity": mult,
                     "inaccessible": {k: v == 0 for k, v in mult.items()}})
    return rows


@dataclass
class OneDimCharacter:
    values: np.ndarray  # per element
    class_values: list = field(default_factory=list)
    name: str = ""

    def __call__(self, i):
        return self.values[i]

    @property
    def is_trivial(self):
        return bool(np.allclose(self.values, 1))


def _closure_of_indices(g, seeds):
    """Smallest subgroup containing the given element indices."""
    seen = {0}
    queue = deque([0])
    seeds = list(dict.fromkeys(seeds))
    while queue:
        x = queue.popleft()
        for s in seeds:
            y = g.mult(s, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def commutator_subgroup(g):
    """Normal closure of the generator commutators, i.e. [G, G]."""
    gi = [g.index_of(m) for m in g.generators]
    seeds = []
    for a in gi:
        for b in gi:
            c = g.mult(g.mult(a, b), g.mult(g.inverse(a), g.inverse(b)))
            seeds.append(c)
    sub = _closure_of_indices(g, seeds)
    while True:
        extra = set()
        for x in sub:
            for a in gi:
                y = g.mult(g.mult(a, x), g.inverse(a))
                if y not in sub:
                    extra.add(y)
        if not extra:
            return sorted(sub)
        sub = _closure_of_indices(g, list(sub | extra))


def one_dim_characters(g):
    """All homomorphisms to U(1), found by assigning roots of unity to generators."""
    derived = set(commutator_subgroup(g))
    n_ab = g.order // len(derived)
    gi = [g.index_of(m) for m in g.generators]
    orders = []
    for a in gi:
        k, x = 1, a
        while x not in derived:
            x = g.mult(a, x)
            k += 1
        orders.append(k)

    # BFS tree from the identity along generator edges
    parent = {0: None}
    order = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for t, a in enumerate(gi):
            w = g.mult(a, v)
            if w not in parent:
                parent[w] = (t, v)
                order.append(w)
                queue.append(w)

    found = []
    for combo in np.ndindex(*orders):
        gen_vals = [np.exp(2j * np.pi * c / o) for c, o in zip(combo, orders)]
        vals = np.zeros(g.order, dtype=complex)
        vals[0] = 1.0
        for w in order[1:]:
            t, v = parent[w]
            vals[w] = gen_vals[t] * vals[v]
        ok = True
        for v in range(g.order):
            for t, a in enumerate(gi):
                if abs(vals[g.mult(a, v)] - gen_vals[t] * vals[v]) > 1e-8:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(vals)
    if len(found) != n_ab:
        raise NonIntegerMultiplicity(
            f"found {len(found)} one-dimensional characters, expected {n_ab}")
    found.sort(key=lambda v: (not np.allclose(v, 1), tuple(np.round(np.angle(v), 6))))
    chars = []
    for k, vals in enumerate(found):
        cv = [complex(vals[c[0]]) for c in g.classes]
        chars.append(OneDimCharacter(vals, cv, name=f"chi{k + 1}"))
    return chars


# group averages -----------------------------------------------------------


def tensor_rep(n):
    def rep(mats):
        return tensor_power(mats, n)
    return rep


def sym_rep(n):
    def rep(mats):
        return sym_power(mats, n)
    return rep


def su2_lift(rot):
    """An SU(2) matrix covering the rotation ``rot`` (sign is arbitrary)."""
    from scipy.spatial.transform import Rotation
    rot = np.asarray(rot).real
    vec = Rotation.from_matrix(rot).as_rotvec()
    vec = np.atleast_2d(vec)
    theta = np.linalg.norm(vec, axis=-1)
    axis = np.zeros_like(vec)
    nz = theta > 1e-14
    axis[nz] = vec[nz] / theta[nz, None]
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    ns = (axis[:, 0, None, None] * sx + axis[:, 1, None, None] * sy
          + axis[:, 2, None, None] * sz)
    out = (np.cos(theta / 2)[:, None, None] * np.eye(2)
           - 1j * np.sin(theta / 2)[:, None, None] * ns)
    return out[0] if rot.ndim == 2 else out


def spin_rep(spin, nsites=1):
    """Rotation matrices acting on ``nsites`` spins of size ``spin``."""
    two_s = round(2 * spin)

    def rep(mats):
        local = sym_power(su2_lift(mats), two_s)
        return tensor_power(local, nsites) if nsites > 1 else local
    return rep


def default_rep(g, dim):
    """Tensor power of the defining matrices matching an operator of size ``dim``."""
    n = round(np.log(dim) / np.log(g.d)) if g.d > 1 else 0
    if g.d ** n != dim or n < 1:
        raise DimensionMismatch(f"operator of size {dim} is not a tensor power of {g.d}")
    return tensor_rep(n)


def rep_images(g, rep, dim=None):
    if rep is None:
        rep = default_rep(g, dim)
    return np.asarray(rep(g.elements))


def symmetrize(op, g, rep=None):
    """Group average (1/|G|) sum_g rep(g)^dagger op rep(g)."""
    op = np.asarray(op, dtype=complex)
    images = rep_images(g, rep, op.shape[0])
    if images.shape[-1] != op.shape[0]:
        raise DimensionMismatch(f"representation has size {images.shape[-1]}, operator {op.shape[0]}")
    return np.einsum("gba,bc,gcd->ad", images.conj(), op, images) / len(images)


def is_symmetry_of(op, elements, rep=None):
    op = np.asarray(op, dtype=complex)
    elements = np.asarray(elements, dtype=complex)
    if elements.ndim == 2:
        elements = elements[None]
    if rep is None:
        d = elements.shape[-1]
        n = round(np.log(op.shape[0]) / np.log(d))
        rep = tensor_rep(n)
    tol = 1e-8 * max(np.linalg.norm(op), 1e-300)
    for u in np.asarray(rep(elements)):
        if np.linalg.norm(u @ op @ dagger(u) - op) > tol:
            return False
    return True


# subgroups and quotients --------------------------------------------------


def verify_factorization(g, k, s):
    """True when every element of g is uniquely a product k_i s_j."""
    k = np.asarray(k.elements if isinstance(k, FiniteGroup) else k)
    s = np.asarray(s.elements if isinstance(s, FiniteGroup) else s)
    ki = g.indices_of(k)
    si = g.indices_of(s)
    if len(set(ki)) * len(set(si)) != g.order:
        return False
    prods = {g.mult(a, b) for a in ki for b in si}
    return len(prods) == g.order


def subgroup_indices(g, sub):
    mats = sub.elements if isinstance(sub, FiniteGroup) else np.asarray(sub)
    idx = sorted(set(g.indices_of(mats)))
    return idx


class QuotientGroup:
    """Cosets g K of a normal subgroup with a Cayley-graph friendly interface."""

    def __init__(self, parent, normal, coset_of, reps):
        self.parent = parent
        self.normal = normal
        self.coset_of = coset_of
        self.reps = reps
        self.elements = parent.elements[reps]
        self.generators = parent.generators
        self.labels = parent.labels
        self.name = f"{parent.name}/K{len(normal)}"
        self.mode = parent.mode
        self.d = parent.d

    @property
    def order(self):
        return len(self.reps)

    def __len__(self):
        return self.order

    def act(self, gen, v):
        return int(self.coset_of[self.parent.act(gen, self.reps[v])])

    def mult(self, i, j):
        return int(self.coset_of[self.parent.mult(self.reps[i], self.reps[j])])

    def unitary(self, v):
        return self.elements[v]

    def multiplication_table(self):
        n = self.order
        return np.array([[self.mult(i, j) for j in range(n)] for i in range(n)])

    def element_orders(self):
        out = []
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = self.mult(i, x)
                k += 1
            out.append(k)
        return out


def quotient_group(g, k):
    kidx = subgroup_indices(g, k)
    kset = set(kidx)
    if 0 not in kset or len(_closure_of_indices(g, kidx)) != len(kset):
        raise NotSubgroup("K is not a subgroup")
    for a in [g.index_of(m) for m in g.generators]:
        ainv = g.inverse(a)
        for x in kidx:
            if g.mult(g.mult(a, x), ainv) not in kset:
                raise NotNormal(f"K is not normal in {g.name}")
    coset_of = -np.ones(g.order, dtype=np.int64)
    reps = []
    for i in range(g.order):
        if coset_of[i] >= 0:
            continue
        cid = len(reps)
        reps.append(i)
        for x in kidx:
            coset_of[g.mult(i, x)] = cid
    return QuotientGroup(g, kidx, coset_of, np.array(reps))


def classify_order4(q):
    """Name a group of order 4 or 8 from its element orders."""
    orders = sorted(q.element_orders())
    table = {
        (1, 2, 2, 2): "K4",
        (1, 2, 4, 4): "Z4",
        (1, 2, 4, 4, 4, 4, 4, 4): "Q8",
        (1, 2, 2, 2, 2, 2, 4, 4): "D4",
        (1, 2, 2, 2, 2, 2, 2, 2): "Z2^3",
        (1, 2, 2, 2, 4, 4, 4, 4): "Z4xZ2",
        (1, 2, 4, 4, 8, 8, 8, 8): "Z8",
    }
    return table.get(tuple(orders), "other")
