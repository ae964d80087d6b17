"""SU(d) irreducible representations labelled by Dynkin coefficients.

Characters use the Jacobi-Trudi determinant in complete homogeneous
symmetric polynomials, which has no removable singularities. Tensor
products use Littlewood-Richardson tableaux.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvalidInput
from .linalg import complete_homogeneous


@dataclass(frozen=True, order=True)
class DynkinLabel:
    d: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.d < 2 or len(coeffs) != self.d - 1 or min(coeffs, default=0) < 0:
            raise InvalidInput(f"bad Dynkin label {coeffs} for SU({self.d})")

    @classmethod
    def of(cls, *coeffs):
        return cls(len(coeffs) + 1, tuple(coeffs))

    @property
    def partition(self):
        """Row lengths lambda_i = sum_{k>=i} coeff_k, with lambda_d = 0."""
        lam = []
        for i in range(self.d):
            lam.append(sum(self.coeffs[i:]))
        return tuple(lam)

    @property
    def size(self):
        return sum(self.partition)

    def conjugate(self):
        return DynkinLabel(self.d, self.coeffs[::-1])

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def label_from_partition(d, lam):
    lam = list(lam) + [0] * (d - len(lam))
    if len(lam) > d:
        raise InvalidInput("partition has more than d rows")
    return DynkinLabel(d, tuple(lam[i] - lam[i + 1] for i in range(d - 1)))


def parse_label(text, d=None):
    """Parse '(1,1)', '1,1' or '11' (single digits) into a DynkinLabel."""
    s = text.strip().strip("()[] ")
    try:
        if "," in s:
            parts = [int(p) for p in s.split(",") if p.strip()]
        else:
            parts = [int(ch) for ch in s]
    except ValueError as exc:
        raise InvalidInput(f"cannot read a Dynkin label from {text!r}") from exc
    if d is not None and len(parts) != d - 1:
        raise InvalidInput(f"label {text!r} does not have {d - 1} coefficients")
    return DynkinLabel.of(*parts)


@lru_cache(maxsize=4096)
def weyl_dimension(label):
    lam = label.partition
    num = Fraction(1)
    for i in range(label.d):
        for j in range(i + 1, label.d):
            num *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert num.denominator == 1
    return int(num)


def character_from_eigenvalues(label, eigvals):
    """Character of ``label`` on matrices with the given eigenvalues.

    ``eigvals`` has shape (..., d); the result has shape (...).
    """
    x = np.asarray(eigvals, dtype=complex)
    if x.shape[-1] != label.d:
        raise InvalidInput(f"need {label.d} eigenvalues, got {x.shape[-1]}")
    lam = [l for l in label.partition if l > 0]
    if not lam:
        return np.ones(x.shape[:-1], dtype=complex)
    ell = len(lam)
    kmax = lam[0] + ell - 1
    h = complete_homogeneous(x, kmax)
    mat = np.zeros(x.shape[:-1] + (ell, ell), dtype=complex)
    for i in range(ell):
        for j in range(ell):
            k = lam[i] - i + j
            if 0 <= k <= kmax:
                mat[..., i, j] = h[..., k]
    return np.linalg.det(mat)


def irrep_character(label, eigenphases):
    """Character of ``label`` at an element with the given eigenphases."""
    return character_from_eigenvalues(label, np.exp(1j * np.asarray(eigenphases, dtype=float)))


def matrix_character(label, mats):
    """Character of ``label`` on a matrix or a stack of matrices."""
    mats = np.asarray(mats, dtype=complex)
    return character_from_eigenvalues(label, np.linalg.eigvals(mats))


def su2_character(L, theta):
    """Spin-L character sin((2L+1)theta/2)/sin(theta/2).

    Evaluated as the finite sum over weights, which is also correct at the
    removable points theta = 0 mod 2 pi.
    """
    two_l = round(2 * L)
    if abs(two_l - 2 * L) > 1e-12 or two_l < 0:
        raise InvalidInput(f"spin must be a non-negative half-integer, got {L}")
    theta = np.asarray(theta, dtype=float)
    ms = (two_l - 2 * np.arange(two_l + 1)) / 2.0
    return np.cos(np.multiply.outer(theta, ms)).sum(axis=-1)


# tensor products ----------------------------------------------------------


def _horizontal_strips(shape, m, d, min_row):
    """Shapes obtained by adding m boxes, no two in one column, rows <= d."""
    shape = list(shape) + [0] * (d - len(shape))
    out = []

    def rec(row, left, new):
        if left == 0:
            out.append(tuple(new))
            return
        if row >= d:
            return
        cap = shape[row - 1] - shape[row] if row > 0 else left
        if row < min_row:
            cap = 0
        for add in range(min(cap, left), -1, -1):
            new[row] = shape[row] + add
            rec(row + 1, left - add, new)
        new[row] = shape[row]

    rec(0, m, list(shape))
    return out


def _lattice_ok(filling, letter):
    """Reading right to left, top to bottom, count(letter) <= count(letter-1)."""
    if letter == 0:
        return True
    a = b = 0
    for row in filling:
        for x in reversed(row):
            if x == letter - 1:
                a += 1
            elif x == letter:
                b += 1
                if b > a:
                    return False
    return True


def lr_coefficients(lam, mu, d):
    """Littlewood-Richardson expansion of s_lam * s_mu with at most d rows."""
    lam = tuple(x for x in lam if x > 0)
    mu = [x for x in mu if x > 0]
    result = Counter()
    start_fill = [[None] * r for r in lam] + [[] for _ in range(d - len(lam))]

    def rec(shape, filling, letter):
        if letter == len(mu):
            result[tuple(x for x in shape if x > 0)] += 1
            return
        for new in _horizontal_strips(shape, mu[letter], d, letter):
            fill = [list(r) for r in filling]
            for r in range(d):
                fill[r].extend([letter] * (new[r] - (shape[r] if r < len(shape) else 0)))
            if _lattice_ok(fill, letter):
                rec(new, fill, letter + 1)

    rec(tuple(list(lam) + [0] * (d - len(lam))), start_fill, 0)
    return result


@dataclass(frozen=True)
class IrrepDecomposition:
    terms: tuple  # ((DynkinLabel, multiplicity), ...) sorted by label

    @property
    def labels(self):
        return [t[0] for t in self.terms]

    def multiplicity(self, label):
        return dict(self.terms).get(label, 0)

    def dimension(self):
        return sum(weyl_dimension(l) * m for l, m in self.terms)

    def as_dict(self):
        return dict(self.terms)


def _strip_columns(shape, d):
    shape = list(shape) + [0] * (d - len(shape))
    full = shape[d - 1]
    return label_from_partition(d, [x - full for x in shape])


@lru_cache(maxsize=4096)
def _decompose(a, b):
    counts = Counter()
    for shape, mult in lr_coefficients(a.partition, b.partition, a.d).items():
        counts[_strip_columns(shape, a.d)] += mult
    return tuple(sorted(counts.items(), key=lambda t: t[0].coeffs))


def tensor_decompose(a, b):
    if a.d != b.d:
        raise InvalidInput("labels belong to different SU(d)")
    return IrrepDecomposition(_decompose(a, b))


def adjoint_label(d):
    return DynkinLabel(d, (1,) + (0,) * (d - 3) + (1,)) if d > 2 else DynkinLabel(2, (2,))


def adjoint_power_labels(d, K):
    """Distinct irreps in the K-fold tensor power of the adjoint of SU(d)."""
    adj = adjoint_label(d)
    current = {adj}
    for _ in range(K - 1):
        nxt = set()
        for lab in current:
            nxt.update(tensor_decompose(lab, adj).labels)
        current = nxt
    return sorted(current, key=lambda l: l.coeffs)


def qudit_formula(d):
    """Closed-form decomposition of adj (x) adj for SU(d), d > 4."""
    if d <= 4:
        raise InvalidInput("closed form applies for d > 4")
    z = lambda k: (0,) * k
    terms = {
        DynkinLabel(d, z(d - 1)): 1,
        DynkinLabel(d, (1,) + z(d - 3) + (1,)): 2,
        DynkinLabel(d, (0, 1) + z(d - 5) + (1, 0)): 1,
        DynkinLabel(d, (2,) + z(d - 4) + (1, 0)): 1,
        DynkinLabel(d, (0, 1) + z(d - 4) + (2,)): 1,
        DynkinLabel(d, (2,) + z(d - 3) + (2,)): 1,
    }
    return IrrepDecomposition(tuple(sorted(terms.items(), key=lambda t: t[0].coeffs)))


def verify_qudit_formula(d):
    adj = adjoint_label(d)
    expected = qudit_formula(d)
    got = tensor_decompose(adj, adj)
    dim_ok = got.dimension() == (d * d - 1) ** 2 == expected.dimension()
    return dim_ok and got.terms == expected.terms


def su2_operator_space_labels(j, nspins):
    """Angular momenta L appearing in operators on ``nspins`` spin-j particles."""
    top = round(2 * j * nspins)
    return list(range(0, top + 1))
