"""Ready-made groups, sequences, grids and scans used by the command line."""
import numpy as np

from .catalog import (MATRICES, ROTATION_GROUPS, TABLE_GROUPS, builtin_generators,
                      builtin_group, display_name, resolve_name)
from .errors import InvalidInput, UnknownKind
from .groups import (TABLE_LABELS, accessibility_scan, contains_center, generate_group,
                     quotient_by_center, trivial_multiplicity)
from .lie import DynkinLabel
from .orientation import (Orientation, conjugate_generators, delta24_embedding,
                          diagonalizer_of_X, parse_perm, perm_name, simplified_orientations,
                          weyl_orientations)
from .sequences import (build_cayley, emit_sequence, eulerian_circuit, hamiltonian_circuit,
                        literal_sequence, nest_sequences)
from .simulate import SweepGrid

ORIENTS = ("identity", "diag-X", "diag-X+P", "diag-X+P'", "teddy", "sigma168")


def _orientation(orient, weyl):
    perm = parse_perm(weyl) if weyl else (0, 1, 2)
    if orient in (None, "identity", "sigma168", "teddy"):
        return Orientation(np.eye(3, dtype=complex), perm, orient or "identity")
    if orient == "diag-X":
        return Orientation(diagonalizer_of_X(), perm, "diag-X")
    for o in simplified_orientations():
        if o.description == orient:
            return Orientation(o.conjugator, perm, orient)
    raise UnknownKind(f"unknown orientation {orient!r}")


def group_generators(name, n=None, orient=None, weyl=None, generators=None):
    """Generators (possibly reoriented) and labels of a catalogued group."""
    if orient == "teddy":
        canon, _ = resolve_name(name, n)
        if canon not in ("D2", "T"):
            raise UnknownKind("the teddy orientation exists for D2 and T")
        gens, labels = builtin_generators(canon + "teddy")
        return gens, labels, None
    if orient == "sigma168":
        canon, n2 = resolve_name(name, n)
        if (canon, n2) != ("Delta6n2", 2):
            raise UnknownKind("the sigma168 orientation exists for Delta(24)")
        gens, _, _ = delta24_embedding()
        labels = ["M1", "M2"]
    elif generators:
        labels = [w.strip() for w in generators.split(",") if w.strip()]
        gens = []
        for word in labels:
            m = np.eye(3, dtype=complex)
            for ch in word:
                if ch not in MATRICES:
                    raise InvalidInput(f"unknown generator letter {ch!r}")
                m = m @ MATRICES[ch]
            gens.append(m)
    else:
        gens, labels = builtin_generators(name, n)
    o = _orientation(orient, weyl)
    if orient not in (None, "identity") or weyl:
        gens = conjugate_generators(gens, o)
    return gens, labels, o


def make_group(name, n=None, mode="exact", orient=None, weyl=None, generators=None,
               quotient_center=False, max_order=5000):
    canon, n = resolve_name(name, n)
    gens, labels, o = group_generators(name, n, orient, weyl, generators)
    so3 = canon in ROTATION_GROUPS
    title = display_name(canon, n)
    if orient and orient != "identity":
        title += f"[{orient}{'/' + perm_name(o.weyl_perm) if o is not None and weyl else ''}]"
    g = generate_group(gens, mode=mode, max_order=max_order, name=title, labels=labels, so3=so3)
    if quotient_center and not so3 and contains_center(g):
        g = quotient_by_center(g)
    return g, o


def synthesize(group, kind="eulerian", seed=None, tau=1.0, budget=10_000_000, orientation=None):
    graph = build_cayley(group)
    if kind == "eulerian":
        path = eulerian_circuit(graph, 0, seed)
    elif kind == "hamiltonian":
        path = hamiltonian_circuit(graph, 0, budget)
    else:
        raise UnknownKind(f"unknown sequence kind {kind!r}")
    info = {"name": group.name, "order": group.order, "mode": group.mode,
            "generators": list(group.labels), "seed": seed}
    if orientation is not None:
        info["orientation"] = {"description": orientation.description,
                               "weyl_perm": list(orientation.weyl_perm)}
    return emit_sequence(path, graph, tau, kind, info)


# simulation presets -----------------------------------------------------

def axis_grid(n_samples=100, seed=0, n_sites=3, lo=-3.0, hi=-1.5, points=6):
    """Points along the tau*Delta axis and the tau*Gamma axis."""
    taus = [float(t) for t in np.logspace(lo, hi, points)]
    pts = [(t, 0.0) for t in taus] + [(0.0, t) for t in taus]
    return SweepGrid(n_samples=n_samples, seed=seed, n_sites=n_sites, points=pts)


def fig5_sequences(seed=0):
    """Eulerian sequences on three centre quotients plus a Hamiltonian one."""
    out = {}
    for label, name, gens in [("Delta27/Z3", "Delta27", "C,E"),
                              ("Sigma36x3/Z3", "Sigma36x3", "V,C"),
                              ("Sigma72x3/Z3", "Sigma72x3", "V,X")]:
        g, _ = make_group(name, generators=gens, quotient_center=True)
        out[label] = synthesize(g, "eulerian", seed)
    g, _ = make_group("Sigma72x3", generators="V,X", quotient_center=True)
    out["Sigma72x3/Z3-ham"] = synthesize(g, "hamiltonian")
    return out


def fig9_sequences(seed=0):
    out = {}
    for o in weyl_orientations(reduced=True):
        g, _ = make_group("Sigma36x3", generators="C,V", orient="diag-X",
                          weyl=perm_name(o.weyl_perm), quotient_center=True)
        out[f"Sigma36x3/Z3 U{perm_name(o.weyl_perm)}"] = synthesize(g, "eulerian", seed)
    return out


def fig10_sequences(seed=0):
    out = {}
    for o in weyl_orientations(reduced=True):
        g, _ = make_group("Delta24", orient="sigma168", weyl=perm_name(o.weyl_perm))
        out[f"Delta24 U{perm_name(o.weyl_perm)}"] = synthesize(g, "eulerian", seed)
    return out


def fig11_sequences():
    inner = literal_sequence(list("EEE"), MATRICES, group_info={"name": "<E>"})
    k4 = literal_sequence(list("XVXV"), MATRICES, group_info={"name": "Sigma72x3/Delta54"})
    q8 = literal_sequence(list("XXXVXXXV"), MATRICES, group_info={"name": "Sigma72x3/Delta27"})
    return {"K4[E]": nest_sequences(k4, inner), "Q8[E]": nest_sequences(q8, inner)}


PRESETS = {
    "fig5": ("su3-random", fig5_sequences),
    "fig9": ("nv", fig9_sequences),
    "fig10": ("nv", fig10_sequences),
    "fig11": ("nv", lambda seed=0: fig11_sequences()),
}


def preset(name, seed=0):
    if name not in PRESETS:
        raise UnknownKind(f"unknown preset {name!r}")
    model, fn = PRESETS[name]
    return model, fn(seed)


# scans ------------------------------------------------------------------

def table3_rows():
    groups = [builtin_group(n, k) for n, k in TABLE_GROUPS]
    return accessibility_scan(groups, TABLE_LABELS)


FIG2_GROUPS = ["D2", "D3", "T", "O", "I"]


def fig2_rows(lmax=30, groups=FIG2_GROUPS):
    """Trivial multiplicity of each rotation group in every spin-L irrep."""
    rows = []
    for name in groups:
        g = builtin_group(name)
        for L in range(lmax + 1):
            rows.append({"group": g.name, "L": L,
                         "multiplicity": trivial_multiplicity(g, DynkinLabel(2, (2 * L,)))})
    return rows
