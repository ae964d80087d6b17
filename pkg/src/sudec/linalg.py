"""Dense complex matrix helpers.

Everything here works on plain ``numpy`` arrays of dtype complex128.
"""
from functools import lru_cache, reduce
from itertools import combinations_with_replacement
from math import comb, factorial

import numpy as np
from scipy.linalg import schur

from .errors import DimensionMismatch, NonHermitianInput, NotUnitary


def as_matrix(a):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def kron(a, b):
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(mats):
    return reduce(np.kron, [np.asarray(m, dtype=complex) for m in mats])


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def unitarity_error(u):
    u = np.asarray(u)
    return np.linalg.norm(u @ dagger(u) - np.eye(u.shape[-1]))


def is_unitary(u, tol=None):
    u = as_matrix(u)
    if tol is None:
        tol = 1e-10 * u.shape[0]
    return unitarity_error(u) <= tol


def check_unitary(u, tol=None):
    u = as_matrix(u)
    if not is_unitary(u, tol):
        raise NotUnitary(f"matrix deviates from unitarity by {unitarity_error(u):.3e}")
    return u


def is_hermitian(h, tol=1e-10):
    h = as_matrix(h)
    return np.linalg.norm(h - dagger(h)) <= tol * max(1.0, np.linalg.norm(h))


def expm_skew(h, t=1.0):
    """Return exp(-i t h) for Hermitian ``h`` via an eigendecomposition."""
    h = as_matrix(h)
    if not is_hermitian(h):
        raise NonHermitianInput("expm_skew needs a Hermitian generator")
    w, v = np.linalg.eigh((h + dagger(h)) / 2)
    return (v * np.exp(-1j * t * w)) @ dagger(v)


def eig_unitary(u):
    """Eigenphases in (-pi, pi] and an orthonormal eigenbasis of a unitary.

    The complex Schur form of a normal matrix is diagonal, so the Schur
    vectors stay orthonormal even inside degenerate eigenspaces.
    """
    u = check_unitary(u)
    t, z = schur(u, output="complex")
    phases = np.angle(np.diag(t))
    phases[phases <= -np.pi] += 2 * np.pi
    return phases, z


def hermitian_log(u):
    """Hermitian ``h`` with exp(-i h) = u, built from the principal branch."""
    phases, z = eig_unitary(u)
    return (z * (-phases)) @ dagger(z)


def traceless(h):
    h = as_matrix(h)
    return h - np.trace(h) / h.shape[0] * np.eye(h.shape[0])


def equal_up_to_phase(a, b, tol=1e-9):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return False
    k = np.argmax(np.abs(b))
    if abs(b.flat[k]) < tol:
        return np.linalg.norm(a) < tol
    ratio = a.flat[k] / b.flat[k]
    if abs(ratio) < 1e-12:
        return False
    phase = ratio / abs(ratio)
    return np.linalg.norm(a - phase * b) <= tol * max(1.0, np.linalg.norm(b))


# symmetric powers ---------------------------------------------------------


@lru_cache(maxsize=None)
def exponent_vectors(d, n):
    """Exponent vectors of degree-``n`` monomials in ``d`` variables.

    Ordered lexicographically with the largest power of the first variable
    first, so for d=2 the list runs m = j, j-1, ..., -j with j = n/2.
    """
    out = []
    for combo in combinations_with_replacement(range(d), n):
        k = [0] * d
        for i in combo:
            k[i] += 1
        out.append(tuple(k))
    return tuple(out)


def multinomial(k):
    r = factorial(sum(k))
    for ki in k:
        r //= factorial(ki)
    return r


def sym_dim(d, n):
    return comb(n + d - 1, d - 1)


@lru_cache(maxsize=None)
def _lift_isometry(d, n):
    """Isometry J from Sym^n into Sym^(n-1) (x) C^d, shape (D_{n-1} d, D_n)."""
    rows = {k: i for i, k in enumerate(exponent_vectors(d, n - 1))}
    cols = exponent_vectors(d, n)
    j = np.zeros((len(rows) * d, len(cols)))
    for c, k in enumerate(cols):
        for i in range(d):
            if k[i]:
                km = list(k)
                km[i] -= 1
                j[rows[tuple(km)] * d + i, c] = np.sqrt(k[i] / n)
    j.setflags(write=False)
    return j


def sym_power(m, n):
    """Matrix of ``m`` acting on the n-th symmetric power.

    Works for a single (d, d) matrix or a stack (..., d, d). The basis is the
    normalised monomial basis in the order of ``exponent_vectors``.
    """
    m = np.asarray(m, dtype=complex)
    d = m.shape[-1]
    if n < 0:
        raise ValueError("degree must be non-negative")
    out = np.ones(m.shape[:-2] + (1, 1), dtype=complex)
    for k in range(1, n + 1):
        j = _lift_isometry(d, k)
        big = np.einsum("...ab,...cd->...acbd", out, m).reshape(
            m.shape[:-2] + (out.shape[-1] * d, out.shape[-1] * d))
        out = j.T @ big @ j
    return out


def sym_power_algebra(a, n):
    """Derivative of ``sym_power(exp(t a), n)`` at t = 0.

    This is the collective one-body operator sum_i a_i restricted to the
    symmetric subspace.
    """
    a = np.asarray(a, dtype=complex)
    d = a.shape[-1]
    gen = np.zeros(a.shape[:-2] + (1, 1), dtype=complex)
    eye = np.eye(d)
    for k in range(1, n + 1):
        j = _lift_isometry(d, k)
        dim = gen.shape[-1]
        big = (np.einsum("...ab,cd->...acbd", gen, eye)
               + np.einsum("ab,...cd->...acbd", np.eye(dim), a))
        big = big.reshape(a.shape[:-2] + (dim * d, dim * d))
        gen = j.T @ big @ j
    return gen


def complete_homogeneous(x, kmax):
    """h_0 .. h_kmax of the variables along the last axis of ``x``."""
    x = np.asarray(x, dtype=complex)
    h = np.zeros(x.shape[:-1] + (kmax + 1,), dtype=complex)
    h[..., 0] = 1.0
    for i in range(x.shape[-1]):
        xi = x[..., i]
        for k in range(1, kmax + 1):
            h[..., k] = h[..., k] + xi * h[..., k - 1]
    return h


# tensor product embeddings -------------------------------------------------


def embed(op, sites, n, d):
    """Place an operator acting on ``sites`` into an n-site register of qudits."""
    op = np.asarray(op, dtype=complex)
    sites = list(sites)
    k = len(sites)
    if op.shape != (d ** k, d ** k):
        raise DimensionMismatch(f"operator shape {op.shape} does not act on {k} sites of dim {d}")
    rest = [s for s in range(n) if s not in sites]
    full = np.kron(op, np.eye(d ** len(rest))).reshape([d] * (2 * n))
    order = sites + rest
    perm = np.argsort(order)
    full = full.transpose(list(perm) + [n + p for p in perm])
    return full.reshape(d ** n, d ** n)


def tensor_power(m, n):
    m = np.asarray(m, dtype=complex)
    if m.ndim == 2:
        return kron_all([m] * n)
    out = m
    for _ in range(n - 1):
        out = np.einsum("...ab,...cd->...acbd", out, m).reshape(
            m.shape[:-2] + (out.shape[-1] * m.shape[-1],) * 2)
    return out
