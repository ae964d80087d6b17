import numpy as np
import pytest

from sudec.catalog import MATRICES
from sudec.errors import DegenerateWindow, DimensionMismatch, InvalidInput, UnknownKind
from sudec.hamiltonians import build_random_hamiltonian
from sudec.linalg import dagger, hermitian_log
from sudec.presets import axis_grid, make_group, synthesize
from sudec.sequences import PulseSequence, first_order_average, literal_sequence
from sudec.simulate import (CSV_COLUMNS, RepAssignment, SweepGrid, apply_rep_assignment,
                            axis_rows, distance_to_identity, distance_to_target, evolve_sequence,
                            read_csv, slope_estimate, sweep, write_csv, write_manifest)

from conftest import random_hermitian, random_unitary


@pytest.fixture(scope="module")
def s72_seq():
    g, _ = make_group("Sigma72x3", generators="V,X", quotient_center=True)
    return synthesize(g, "eulerian", seed=0)


@pytest.fixture(scope="module")
def d27_seq():
    g, _ = make_group("Delta27", generators="C,E", quotient_center=True)
    return synthesize(g, "eulerian", seed=0)


def test_distance_examples(rng):
    assert distance_to_identity(np.eye(4)) == 0
    assert distance_to_identity(np.exp(0.7j) * np.eye(5)) < 1e-12
    d = 6
    u = np.diag([1] * (d - 1) + [-1]).astype(complex)
    assert np.isclose(distance_to_identity(u), np.sqrt(2 / d))
    v = random_unitary(rng, 4)
    assert distance_to_target(v, v) < 1e-7
    assert 0 < distance_to_identity(v) <= 1


def test_distance_small_rotation_is_accurate():
    # 1 - |Tr|/d would lose all digits here; the eigenphase form does not
    eps = 1e-9
    u = np.diag(np.exp(1j * eps * np.array([1.0, -1.0])))
    assert np.isclose(distance_to_identity(u), eps / 2, rtol=1e-6)


def test_rep_assignment():
    x = MATRICES["X"]
    plain = apply_rep_assignment(x, RepAssignment(2))
    assert np.allclose(plain, np.kron(x, x))
    dual = apply_rep_assignment(x, RepAssignment(2, dual=[False, True]))
    assert np.allclose(dual, np.kron(x, x.conj()))
    q = MATRICES["E"]
    conj = apply_rep_assignment(x, RepAssignment(2, conjugators=[None, q]))
    assert np.allclose(conj, np.kron(x, dagger(q) @ x @ q))
    with pytest.raises(InvalidInput):
        RepAssignment(2, dual=[True])
    with pytest.raises(DimensionMismatch):
        apply_rep_assignment(x, RepAssignment(1, conjugators=[np.eye(2)]))


def test_evolve_trivial_cases(d27_seq):
    seq = PulseSequence([("I", np.eye(3))] * 3)
    assert np.allclose(evolve_sequence(np.zeros((9, 9)), seq), np.eye(9))
    h = build_random_hamiltonian(2, seed=1).matrix()
    u = evolve_sequence(h, d27_seq, tau=0.0)
    net = d27_seq.net_unitary()
    assert np.allclose(u, np.kron(net, net))
    with pytest.raises(DimensionMismatch):
        evolve_sequence(np.eye(8), d27_seq)


def test_unitarity_after_long_products(s72_seq):
    assert len(s72_seq) == 144
    h = build_random_hamiltonian(3, seed=2).matrix()
    u = evolve_sequence(h, s72_seq, tau=0.05)
    u = evolve_sequence(h, s72_seq, tau=0.05) @ u @ evolve_sequence(h, s72_seq, tau=0.05)
    assert np.linalg.norm(dagger(u) @ u - np.eye(27)) < 1e-8


def test_magnus_first_order(d27_seq):
    h = build_random_hamiltonian(2, seed=3).matrix()
    n = len(d27_seq)
    net = np.kron(d27_seq.net_unitary(), d27_seq.net_unitary())
    avg = first_order_average(d27_seq, h)

    def residual(tau):
        u = dagger(net) @ evolve_sequence(h, d27_seq, tau=tau)
        return np.linalg.norm(hermitian_log(u) - n * tau * avg)

    r1, r2 = residual(1e-3), residual(5e-4)
    assert 3.5 < r1 / r2 < 4.5


def test_slope_synthetic():
    t = np.logspace(-3, -1, 6)
    assert abs(slope_estimate(t, 3 * t) - 1) < 1e-6
    assert abs(slope_estimate(t, 0.2 * t ** 2) - 2) < 1e-6
    with pytest.raises(DegenerateWindow):
        slope_estimate(t[:3], t[:3])
    with pytest.raises(DegenerateWindow):
        slope_estimate(t, np.zeros_like(t))
    assert abs(slope_estimate(t, t ** 2, window=(1e-3, 3e-2)) - 2) < 1e-6


def test_sweep_zero_noise(s72_seq):
    grid = SweepGrid(tau_delta=[0.0], tau_gamma=[0.0], n_samples=2, n_sites=2)
    rows = sweep(grid, {"s72": s72_seq})
    assert {r["sequence_label"] for r in rows} == {"s72", "NoDD"}
    assert all(r["mean_distance"] < 1e-7 for r in rows)


def test_sweep_deterministic_and_decoupling(s72_seq):
    grid = SweepGrid(tau_delta=[1e-3], tau_gamma=[1e-3], n_samples=3, seed=5, n_sites=2)
    a = sweep(grid, {"s72": s72_seq})
    b = sweep(grid, {"s72": s72_seq})
    assert a == b
    by = {r["sequence_label"]: r["mean_distance"] for r in a}
    assert by["s72"] < 0.05 * by["NoDD"]


def test_sweep_slopes_two_sites(d27_seq, s72_seq):
    grid = axis_grid(n_samples=4, seed=1, n_sites=2)
    rows = sweep(grid, {"d27": d27_seq, "s72": s72_seq})
    s = {lab: slope_estimate(*axis_rows(rows, lab, "gamma")) for lab in ("d27", "s72", "NoDD")}
    assert abs(s["s72"] - 2) < 0.15
    assert abs(s["d27"] - 1) < 0.15
    assert abs(s["NoDD"] - 1) < 0.15
    assert abs(slope_estimate(*axis_rows(rows, "d27", "delta")) - 2) < 0.15


def test_sweep_rejects_unknown_model(s72_seq):
    with pytest.raises(UnknownKind):
        sweep(SweepGrid(n_samples=1, n_sites=2), {"s": s72_seq}, model="bogus")
    with pytest.raises(InvalidInput):
        sweep(SweepGrid(n_samples=1, n_sites=2), {})


def test_sweep_targets_the_ideal_product():
    # a non-cyclic word: without noise the distance is measured to its own product
    seq = literal_sequence(list("XV"), MATRICES)
    rows = sweep(SweepGrid(tau_delta=[0.0], tau_gamma=[0.0], n_samples=1, n_sites=2),
                 {"xv": seq}, include_nodd=False)
    assert rows[0]["mean_distance"] < 1e-7


def test_csv_roundtrip(tmp_path, s72_seq):
    grid = SweepGrid(tau_delta=[1e-3, 2e-3], tau_gamma=[0.0], n_samples=2, n_sites=2)
    rows = sweep(grid, {"s72": s72_seq})
    path = write_csv(rows, tmp_path / "out" / "sweep.csv")
    assert path.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    back = read_csv(path)
    assert back == rows
    man = write_manifest(tmp_path / "m.json", [path], [path], {"seed": 0})
    assert "sweep.csv" in man.read_text()


def test_workers_match_serial(s72_seq):
    grid = SweepGrid(tau_delta=[1e-3], tau_gamma=[0.0], n_samples=2, n_sites=2)
    assert sweep(grid, {"s": s72_seq}, workers=2) == sweep(grid, {"s": s72_seq})
