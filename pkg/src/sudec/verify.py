"""Self-check suites run by ``sudec verify``.

Each suite returns a list of (name, passed, detail) tuples. Expected values
are fixed reference data, never recomputed by the code under test.
"""
import numpy as np

from .catalog import MATRICES, W3, builtin_group, rotation
from .groups import (classify_order4, generate_group, quotient_group,
                     symmetrize, tensor_rep, verify_factorization)
from .lie import DynkinLabel, adjoint_power_labels, tensor_decompose, verify_qudit_formula
from .orientation import delta24_embedding
from .presets import make_group, synthesize, table3_rows
from .qecc import AmbientSpace, build_code, error_set, kl_check, logical_gate_check, refine_basis
from .sequences import first_order_average

L = DynkinLabel.of

# inaccessible (True) pattern over (1,1) (3,0) (2,2) (4,1) (3,3) (6,0) (5,2) (4,4)
EXPECTED_ACCESSIBILITY = {
    "Delta(12)": (12, False, "Y......."),
    "Delta(27)": (27, True, "Y......."),
    "Delta(48)": (48, False, "Y..Y...."),
    "Delta(6)": (6, False, "........"),
    "Delta(24)": (24, False, "YY......"),
    "Delta(54)": (54, True, "YY......"),
    "Sigma60": (60, False, "YY.Y...."),
    "Sigma168": (168, False, "YYYY..Y."),
    "Sigma36x3": (108, True, "YY......"),
    "Sigma72x3": (216, True, "YYY...Y."),
    "Sigma216x3": (648, True, "YYYY.YY."),
    "Sigma360x3": (1080, True, "YYYYY.Y."),
}


def _named(dec):
    return {str(k): v for k, v in dec.as_dict().items()}


def _check(name, ok, detail=""):
    return (name, bool(ok), detail)


def suite_lie():
    out = []
    got = _named(tensor_decompose(L(1, 1), L(1, 1)))
    want = {"(0,0)": 1, "(1,1)": 2, "(0,3)": 1, "(3,0)": 1, "(2,2)": 1}
    out.append(_check("su3 (1,1)x(1,1)", got == want, str(got)))
    got = _named(tensor_decompose(L(1, 0, 1), L(1, 0, 1)))
    want = {"(0,0,0)": 1, "(1,0,1)": 2, "(0,2,0)": 1, "(2,1,0)": 1, "(0,1,2)": 1, "(2,0,2)": 1}
    out.append(_check("su4 (1,0,1)x(1,0,1)", got == want, str(got)))
    k2 = {L(0, 0), L(1, 1), L(0, 3), L(3, 0), L(2, 2)}
    k3 = k2 | {L(4, 1), L(1, 4), L(3, 3)}
    k4 = k3 | {L(6, 0), L(0, 6), L(5, 2), L(2, 5), L(4, 4)}
    for k, want in [(2, k2), (3, k3), (4, k4)]:
        got = set(adjoint_power_labels(3, k))
        out.append(_check(f"adjoint power K={k} label set", want == got,
                          f"{len(got)} labels"))
    for d in (5, 6, 7):
        out.append(_check(f"qudit formula d={d}", verify_qudit_formula(d)))
    return out


def suite_groups():
    out = []
    rows = table3_rows()
    for r in rows:
        order, star, pattern = EXPECTED_ACCESSIBILITY[r["group"]]
        got = "".join("Y" if v else "." for v in r["inaccessible"].values())
        ok = (r["order"], r["center"], got) == (order, star, pattern)
        out.append(_check(f"accessibility {r['group']}", ok, f"{r['order']} {got}"))
    s72 = builtin_group("Sigma72x3")
    s36 = builtin_group("Sigma36x3")
    out.append(_check("Sigma72x3 = Sigma36x3 {1, X}",
                      verify_factorization(s72, s36, [np.eye(3), MATRICES["X"]])))
    s168 = builtin_group("Sigma168")
    gens, _, _ = delta24_embedding(s168)
    d24 = generate_group(gens)
    ys = [np.linalg.matrix_power(MATRICES["Y"], k) for k in range(7)]
    out.append(_check("embedded Delta(24) classes", sorted(d24.class_sizes()) == [1, 3, 6, 6, 8],
                      str(d24.class_sizes())))
    out.append(_check("Sigma168 = Delta(24) <Y>", verify_factorization(s168, d24, ys)))
    d54 = generate_group([MATRICES["C"], MATRICES["E"], MATRICES["B"]])
    d27 = generate_group([MATRICES["C"], MATRICES["E"]])
    out.append(_check("Sigma72x3 / Delta(54) is K4", classify_order4(quotient_group(s72, d54)) == "K4"))
    out.append(_check("Sigma72x3 / Delta(27) is Q8", classify_order4(quotient_group(s72, d27)) == "Q8"))
    return out


def suite_sequences(seed=0, n_ops=3):
    out = []
    rng = np.random.default_rng(seed)
    for name, gens in [("Delta27", "C,E"), ("Sigma36x3", "V,C"), ("Sigma72x3", "V,X")]:
        g, _ = make_group(name, generators=gens, quotient_center=True)
        for kind in ("eulerian", "hamiltonian"):
            seq = synthesize(g, kind, seed)
            worst = 0.0
            for _ in range(n_ops):
                h = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
                h = h + h.conj().T
                diff = first_order_average(seq, h) - symmetrize(h, g, tensor_rep(2))
                worst = max(worst, float(np.linalg.norm(diff)))
            out.append(_check(f"{name}/Z3 {kind} average = group average", worst < 1e-10,
                              f"{len(seq)} pulses, residual {worst:.1e}"))
    x, v = MATRICES["X"], MATRICES["V"]
    p = np.linalg.matrix_power
    out.append(_check("(XV)^4 = w 1", np.allclose(p(x @ v, 4), W3 * np.eye(3), atol=1e-10)))
    out.append(_check("(X^3 V)^4 = 1", np.allclose(p(p(x, 3) @ v, 4), np.eye(3), atol=1e-10)))
    return out


def suite_qecc():
    out = []
    t, o = builtin_group("T"), builtin_group("O")
    code = build_code(t, 0, AmbientSpace.spin(6))
    out.append(_check("T j=6 k=2", code.k == 2))
    out.append(_check("T j=6 spin-linear correct",
                      kl_check(code, error_set("spin-linear", code.ambient)).passed))
    ref = refine_basis(code, o)
    gate = logical_gate_check(ref, rotation((0, 0, 1), np.pi / 2))
    ok = gate is not None and np.allclose(gate / gate[0, 0], np.diag([1, -1]), atol=1e-8)
    out.append(_check("C4 acts as Z on refined T code", ok))
    d2 = builtin_group("D2teddy")
    code = build_code(d2, 0, AmbientSpace.spin(2))
    out.append(_check("D2 teddy j=2 k=2", code.k == 2))
    out.append(_check("D2 teddy j=2 dephasing correct",
                      kl_check(code, error_set("dephasing", code.ambient)).passed))
    dz = builtin_group("D2")
    cz = build_code(dz, 0, AmbientSpace.spin(2))
    out.append(_check("z-aligned D2 fails spin-linear",
                      not kl_check(cz, error_set("spin-linear", cz.ambient)).passed))
    s72 = builtin_group("Sigma72x3")
    code = build_code(s72, 0, AmbientSpace.symmetric(12))
    out.append(_check("Sigma72x3 N=12 k=3", code.k == 3))
    out.append(_check("Sigma72x3 N=12 qutrit-single correct",
                      kl_check(code, error_set("qutrit-single", code.ambient)).passed))
    return out


SUITES = {"lie": suite_lie, "groups": suite_groups, "sequences": suite_sequences,
          "qecc": suite_qecc}


def run_suites(name="all"):
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        results += [(n, *c) for c in SUITES[n]()]
    return results
