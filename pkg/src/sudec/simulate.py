"""Exact evolution under ideal pulse sequences and averaged distance sweeps."""
import csv
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateWindow, DimensionMismatch, InvalidInput, UnknownKind
from .hamiltonians import build_nv_hamiltonian, build_random_hamiltonian
from .linalg import dagger, eig_unitary, kron_all

CSV_COLUMNS = ["sequence_label", "tau_delta", "tau_gamma", "mean_distance", "n_samples", "seed"]


@dataclass
class RepAssignment:
    """Per-site representation: optional complex conjugation then Q^dagger P Q."""
    n_sites: int
    dual: list = None
    conjugators: list = None

    def __post_init__(self):
        if self.dual is None:
            self.dual = [False] * self.n_sites
        if self.conjugators is None:
            self.conjugators = [None] * self.n_sites
        if len(self.dual) != self.n_sites or len(self.conjugators) != self.n_sites:
            raise InvalidInput("assignment does not cover every site")


def apply_rep_assignment(pulse, assignment):
    pulse = np.asarray(pulse, dtype=complex)
    factors = []
    for dual, q in zip(assignment.dual, assignment.conjugators):
        p = np.conj(pulse) if dual else pulse
        if q is not None:
            q = np.asarray(q, dtype=complex)
            if q.shape != p.shape:
                raise DimensionMismatch("conjugator does not match the site dimension")
            p = dagger(q) @ p @ q
        factors.append(p)
    return kron_all(factors)


def assignment_rep(assignment):
    """Representation callable (stack -> stack) built from an assignment."""
    def rep(mats):
        mats = np.asarray(mats)
        if mats.ndim == 2:
            return apply_rep_assignment(mats, assignment)
        return np.array([apply_rep_assignment(m, assignment) for m in mats])
    return rep


def free_propagator(h, t=1.0):
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ dagger(v)


def evolve_sequence(h, seq, tau=None, rep=None, n_sites=None):
    """Total propagator prod_k rep(P_k) exp(-i tau h), first interval rightmost."""
    tau = seq.tau if tau is None else tau
    f = free_propagator(np.asarray(h, dtype=complex), tau)
    pulses = _site_pulses(seq, f.shape[0], rep, n_sites)
    u = np.eye(f.shape[0], dtype=complex)
    for p in pulses:
        u = p @ (f @ u)
    return u


def _site_pulses(seq, dim, rep=None, n_sites=None):
    mats = seq.unitaries
    if rep is not None:
        out = np.asarray(rep(mats))
    else:
        d = mats.shape[-1]
        n = n_sites or round(np.log(dim) / np.log(d))
        if d ** n != dim:
            raise DimensionMismatch(f"pulses of size {d} cannot act on a space of size {dim}")
        out = np.array([kron_all([m] * n) for m in mats])
    if out.shape[-1] != dim:
        raise DimensionMismatch(f"pulse images have size {out.shape[-1]}, system {dim}")
    return out


def distance_to_target(u, target):
    """sqrt(1 - |Tr(U T^dagger)| / d), computed from eigenphases for accuracy."""
    w = np.asarray(u) @ dagger(np.asarray(target))
    d = w.shape[0]
    phases, _ = eig_unitary(w)
    ref = np.angle(np.sum(np.exp(1j * phases)))
    val = 2.0 / d * np.sum(np.sin((phases - ref) / 2) ** 2)
    return float(np.sqrt(min(max(val, 0.0), 1.0)))


def distance_to_identity(u):
    return distance_to_target(u, np.eye(np.asarray(u).shape[0]))


@dataclass
class SweepGrid:
    """Points (tau*Delta, tau*Gamma); ``points`` overrides the Cartesian product."""
    tau_delta: list = field(default_factory=lambda: [1e-3])
    tau_gamma: list = field(default_factory=lambda: [0.0])
    n_samples: int = 100
    seed: int = 0
    n_sites: int = 3
    points: list = None

    def grid_points(self):
        if self.points is not None:
            return [tuple(map(float, p)) for p in self.points]
        return [(float(a), float(b)) for a in self.tau_delta for b in self.tau_gamma]


MODELS = ("su3-random", "su3-isotropic", "nv")


def build_model(kind, n_sites, seed):
    if kind == "su3-random":
        return build_random_hamiltonian(n_sites, anisotropic=True, seed=seed)
    if kind == "su3-isotropic":
        return build_random_hamiltonian(n_sites, anisotropic=False, seed=seed)
    if kind == "nv":
        return build_nv_hamiltonian(n_sites, seed=seed)
    raise UnknownKind(f"unknown model {kind!r}")


def sample_seed(seed, k):
    return int(np.random.SeedSequence([seed, k]).generate_state(1)[0])


def _sample_distances(args):
    kind, n_sites, seed, points, pulse_stacks, targets, nodd_len = args
    model = build_model(kind, n_sites, seed)
    out = np.zeros((len(pulse_stacks) + (1 if nodd_len else 0), len(points)))
    for j, (td, tg) in enumerate(points):
        f = free_propagator(td * model.disorder + tg * model.interaction)
        for i, (stack, target) in enumerate(zip(pulse_stacks, targets)):
            u = np.eye(f.shape[0], dtype=complex)
            for p in stack:
                u = p @ (f @ u)
            out[i, j] = distance_to_target(u, target)
        if nodd_len:
            u = np.linalg.matrix_power(f, nodd_len)
            out[-1, j] = distance_to_identity(u)
    return out


def sweep(grid, sequences, model="su3-random", include_nodd=True, workers=1, reps=None):
    """Mean distance for every sequence and grid point over random Hamiltonians.

    ``sequences`` maps a label to a PulseSequence. Distances are taken to the
    noiseless product of the pulses, which is the identity for cyclic
    sequences. The NoDD row evolves freely for as long as the shortest
    sequence.
    """
    if model not in MODELS:
        raise UnknownKind(f"unknown model {model!r}")
    labels = list(sequences)
    dim = 3 ** grid.n_sites
    stacks, targets = [], []
    for lab in labels:
        seq = sequences[lab]
        rep = (reps or {}).get(lab)
        stack = _site_pulses(seq, dim, rep, grid.n_sites)
        target = np.eye(dim, dtype=complex)
        for p in stack:
            target = p @ target
        stacks.append(stack)
        targets.append(target)
    nodd_len = min(len(sequences[l]) for l in labels) if (include_nodd and labels) else 0
    if include_nodd and not labels:
        raise InvalidInput("NoDD needs at least one sequence to fix its duration")
    points = grid.grid_points()
    jobs = [(model, grid.n_sites, sample_seed(grid.seed, k), points, stacks, targets, nodd_len)
            for k in range(grid.n_samples)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_sample_distances, jobs))
    else:
        results = [_sample_distances(j) for j in jobs]
    mean = np.mean(results, axis=0)
    names = labels + (["NoDD"] if nodd_len else [])
    rows = []
    for i, name in enumerate(names):
        for j, (td, tg) in enumerate(points):
            rows.append({"sequence_label": name, "tau_delta": td, "tau_gamma": tg,
                         "mean_distance": float(mean[i, j]), "n_samples": grid.n_samples,
                         "seed": grid.seed})
    return rows


def write_csv(rows, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(r[k]) if isinstance(r[k], float) else r[k]) for k in CSV_COLUMNS})
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        for k in ("tau_delta", "tau_gamma", "mean_distance"):
            r[k] = float(r[k])
        r["n_samples"] = int(r["n_samples"])
        r["seed"] = int(r["seed"])
    return rows


def file_sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def axis_rows(rows, label, axis):
    """Points of one sequence along the Delta axis (tau_gamma = 0) or Gamma axis."""
    if axis == "delta":
        pts = [(r["tau_delta"], r["mean_distance"]) for r in rows
               if r["sequence_label"] == label and r["tau_gamma"] == 0 and r["tau_delta"] > 0]
    elif axis == "gamma":
        pts = [(r["tau_gamma"], r["mean_distance"]) for r in rows
               if r["sequence_label"] == label and r["tau_delta"] == 0 and r["tau_gamma"] > 0]
    else:
        raise ValueError(axis)
    pts.sort()
    return [p[0] for p in pts], [p[1] for p in pts]


def slope_estimate(xs, ys, window=None):
    """Least-squares slope of log(y) against log(x)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if window is not None:
        lo, hi = window
        keep = (xs >= lo) & (xs <= hi)
        xs, ys = xs[keep], ys[keep]
    if len(xs) < 4:
        raise DegenerateWindow(f"need at least 4 points, have {len(xs)}")
    if np.any(ys <= 1e-13) or np.any(xs <= 0):
        raise DegenerateWindow("distances at or below 1e-13 cannot be fitted")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def write_manifest(path, inputs, outputs, extra=None):
    """JSON record of input hashes, output hashes and parameters."""
    data = {"inputs": {str(p): file_sha256(p) for p in inputs if os.path.exists(p)},
            "outputs": {str(p): file_sha256(p) for p in outputs if os.path.exists(p)}}
    if extra:
        data.update(extra)
    Path(path).write_text(json.dumps(data, indent=2, default=str))
    return path
