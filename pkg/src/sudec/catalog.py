"""Generator matrices for the built-in SU(3) subgroups and rotation groups."""
import re

import numpy as np

from .errors import UnknownGroup
from .groups import generate_group


def xi(n):
    return np.exp(2j * np.pi / n)


W3 = xi(3)
NU1 = (-1 + np.sqrt(5)) / 2
NU2 = (-1 - np.sqrt(5)) / 2


def A(n=2):
    return np.diag([1, xi(n), xi(n) ** -1]).astype(complex)


def _mats():
    w = W3
    x7 = xi(7)
    m = {}
    m["A"] = A(2)
    m["C"] = A(3)
    m["B"] = np.array([[0, 0, -1], [0, -1, 0], [-1, 0, 0]], dtype=complex)
    m["D"] = np.diag([xi(9) ** 2, xi(9) ** 2, xi(9) ** 2 * w])
    m["E"] = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
    m["F"] = np.array([[-1, 0, 0], [0, 0, -w], [0, -w ** 2, 0]], dtype=complex)
    m["V"] = np.array([[1, 1, 1], [1, w, w ** 2], [1, w ** 2, w]]) / (np.sqrt(3) * 1j)
    m["W"] = 0.5 * np.array([[-1, NU2, NU1], [NU2, NU1, -1], [NU1, -1, NU2]], dtype=complex)
    m["X"] = np.array([[1, 1, w ** 2], [1, w, w], [w, 1, w]]) / (np.sqrt(3) * 1j)
    m["Y"] = np.diag([x7, x7 ** 2, x7 ** 4])
    a, b, c = x7 ** 4 - x7 ** 3, x7 ** 2 - x7 ** 5, x7 - x7 ** 6
    m["Z"] = 1j / np.sqrt(7) * np.array([[a, b, c], [b, c, a], [c, a, b]])
    return m


MATRICES = _mats()


def matrix(name):
    return MATRICES[name].copy()


# rotation groups ----------------------------------------------------------


def rotation(axis, angle):
    """SO(3) rotation about ``axis`` by ``angle`` (right-hand rule)."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)


GOLDEN = (1 + np.sqrt(5)) / 2

TEDDY_AXES = [np.array([np.sqrt(2), 0, 1]) / np.sqrt(3),
              np.array([-1 / np.sqrt(6), 1 / np.sqrt(2), 1 / np.sqrt(3)])]


def _rotation_generators(name, n):
    z, x = (0, 0, 1), (1, 0, 0)
    if name == "D2":
        return [rotation(z, np.pi), rotation(x, np.pi)], ["C2z", "C2x"]
    if name == "D3":
        return [rotation(z, 2 * np.pi / 3), rotation(x, np.pi)], ["C3z", "C2x"]
    if name == "Dn":
        return [rotation(z, 2 * np.pi / n), rotation(x, np.pi)], [f"C{n}z", "C2x"]
    if name == "T":
        return ([rotation(z, np.pi), rotation(x, np.pi), rotation((1, 1, 1), 2 * np.pi / 3)],
                ["C2z", "C2x", "C3"])
    if name == "O":
        return [rotation(z, np.pi / 2), rotation((1, 1, 1), 2 * np.pi / 3)], ["C4z", "C3"]
    if name == "I":
        return ([rotation(z, np.pi), rotation((1, 1, 1), 2 * np.pi / 3),
                 rotation((0, 1, GOLDEN), 2 * np.pi / 5)], ["C2z", "C3", "C5"])
    if name == "D2teddy":
        return [rotation(TEDDY_AXES[0], np.pi), rotation(TEDDY_AXES[1], np.pi)], ["C2a", "C2b"]
    if name == "Tteddy":
        g, l = _rotation_generators("D2teddy", n)
        return g + [rotation(z, 2 * np.pi / 3)], l + ["C3z"]
    raise UnknownGroup(name)


ROTATION_GROUPS = {"D2", "D3", "Dn", "T", "O", "I", "D2teddy", "Tteddy"}

SU3_SETS = {
    "Sigma60": ["E", "AW"],
    "Sigma168": ["Y", "Z"],
    "Sigma36x3": ["C", "V"],
    "Sigma72x3": ["V", "X"],
    "Sigma216x3": ["V", "D"],
    "Sigma360x3": ["A", "E", "W", "F"],
}

GROUP_NAMES = sorted(["Delta3n2", "Delta6n2", *SU3_SETS, *ROTATION_GROUPS])


def _product(word):
    out = np.eye(3, dtype=complex)
    for ch in word:
        out = out @ MATRICES[ch]
    return out


def resolve_name(name, n=None):
    """Map aliases such as Delta27 or Sigma72 to (canonical name, n)."""
    m = re.fullmatch(r"Delta(\d+)", name)
    if m:
        k = int(m.group(1))
        for base, mult in (("Delta3n2", 3), ("Delta6n2", 6)):
            r = round(np.sqrt(k / mult))
            if mult * r * r == k and r >= 1:
                return base, r
        raise UnknownGroup(name)
    m = re.fullmatch(r"Sigma(\d+)", name)
    if m and name not in SU3_SETS:
        cand = name + "x3"
        if cand in SU3_SETS:
            return cand, n
    m = re.fullmatch(r"D(\d+)", name)
    if m and name not in ROTATION_GROUPS:
        return "Dn", int(m.group(1))
    if name in ("Delta3n2", "Delta6n2", "Dn") and n is None:
        raise UnknownGroup(f"{name} needs a value of n")
    if name not in GROUP_NAMES:
        raise UnknownGroup(name)
    return name, n


def builtin_generators(name, n=None):
    """Generator matrices and their labels for a catalogued group."""
    name, n = resolve_name(name, n)
    if name == "Delta3n2":
        return [A(n), matrix("E")], [f"A{n}", "E"]
    if name == "Delta6n2":
        return [A(n), matrix("E"), matrix("B")], [f"A{n}", "E", "B"]
    if name in SU3_SETS:
        words = SU3_SETS[name]
        return [_product(w) for w in words], list(words)
    return _rotation_generators(name, n)


def display_name(name, n=None):
    name, n = resolve_name(name, n)
    if name == "Delta3n2":
        return f"Delta({3 * n * n})"
    if name == "Delta6n2":
        return f"Delta({6 * n * n})"
    if name == "Dn":
        return f"D{n}"
    return name


def builtin_group(name, n=None, mode="exact", max_order=5000):
    canon, n = resolve_name(name, n)
    gens, labels = builtin_generators(canon, n)
    return generate_group(gens, mode=mode, max_order=max_order, name=display_name(canon, n),
                          labels=labels, so3=canon in ROTATION_GROUPS)


# rows of the SU(3) accessibility table, in display order
TABLE_GROUPS = [("Delta3n2", 2), ("Delta3n2", 3), ("Delta3n2", 4),
                ("Delta6n2", 1), ("Delta6n2", 2), ("Delta6n2", 3),
                ("Sigma60", None), ("Sigma168", None), ("Sigma36x3", None),
                ("Sigma72x3", None), ("Sigma216x3", None), ("Sigma360x3", None)]
