"""Cayley graphs, Eulerian and Hamiltonian circuits, and the pulse sequences built on them."""
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExhausted, DimensionMismatch, NotGenerating
from .linalg import dagger, equal_up_to_phase, expm_skew, hermitian_log, traceless


@dataclass
class CayleyGraph:
    """Directed graph on group elements with edges v -> gen * v, coloured by gen."""
    n_vertices: int
    labels: list
    unitaries: list  # generator matrices
    succ: np.ndarray  # succ[v, c] = vertex reached from v with generator c
    vertex_unitaries: np.ndarray

    @property
    def edges(self):
        return [(v, int(self.succ[v, c]), c) for v in range(self.n_vertices)
                for c in range(len(self.labels))]


def build_cayley(group):
    """Cayley graph of a FiniteGroup or QuotientGroup from its generators."""
    n = group.order
    k = len(group.generators)
    succ = np.empty((n, k), dtype=np.int64)
    for v in range(n):
        for c in range(k):
            u = group.act(c, v)
            if u is None:
                raise NotGenerating("generator product left the vertex set")
            succ[v, c] = u
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in succ[v]:
            if int(u) not in seen:
                seen.add(int(u))
                stack.append(int(u))
    if len(seen) != n:
        raise NotGenerating(f"generators reach {len(seen)} of {n} elements")
    return CayleyGraph(n, list(group.labels), [np.asarray(g) for g in group.generators], succ,
                       np.array([group.unitary(v) for v in range(n)]))


def eulerian_circuit(graph, start=0, seed=None):
    """Closed walk using every edge once (Hierholzer), randomised by ``seed``.

    Returns a list of (from, to, colour) triples.
    """
    rng = random.Random(seed)
    remaining = {v: [(int(graph.succ[v, c]), c) for c in range(len(graph.labels))]
                 for v in range(graph.n_vertices)}
    for v in remaining:
        rng.shuffle(remaining[v])
    stack = [(start, None, None)]
    circuit = []
    while stack:
        v, frm, col = stack[-1]
        if remaining[v]:
            u, c = remaining[v].pop()
            stack.append((u, v, c))
        else:
            stack.pop()
            if frm is not None:
                circuit.append((frm, v, col))
    circuit.reverse()
    return circuit


def hamiltonian_circuit(graph, start=0, budget=10_000_000):
    """Cycle visiting every vertex once; Warnsdorff-ordered backtracking.

    Returns (from, to, colour) triples including the closing edge.
    """
    n = graph.n_vertices
    k = len(graph.labels)
    if n == 1:
        for c in range(k):
            if graph.succ[0, c] == 0:
                return [(0, 0, c)]
        raise BudgetExhausted("single vertex without a loop")
    visited = np.zeros(n, dtype=bool)
    visited[start] = True
    path = [start]
    cols = []
    steps = 0

    def onward(u):
        return sum(1 for c in range(k) if not visited[graph.succ[u, c]])

    # iterative DFS with explicit candidate lists
    cands = [sorted(range(k), key=lambda c: onward(int(graph.succ[start, c])))]
    while True:
        steps += 1
        if steps > budget:
            raise BudgetExhausted(f"no Hamiltonian circuit within {budget} steps")
        v = path[-1]
        if len(path) == n:
            closing = [c for c in range(k) if graph.succ[v, c] == start]
            if closing:
                edges = [(path[i], path[i + 1], cols[i]) for i in range(n - 1)]
                edges.append((v, start, closing[0]))
                return edges
            # dead end, backtrack
            cands.pop()
            visited[path.pop()] = False
            cols.pop()
            continue
        if not cands[-1]:
            cands.pop()
            if len(path) == 1:
                raise BudgetExhausted("graph has no Hamiltonian circuit")
            visited[path.pop()] = False
            cols.pop()
            continue
        c = cands[-1].pop(0)
        u = int(graph.succ[v, c])
        if visited[u]:
            continue
        visited[u] = True
        path.append(u)
        cols.append(c)
        nxt = [c2 for c2 in range(k) if not visited[graph.succ[u, c2]] or
               (len(path) == n and graph.succ[u, c2] == start)]
        nxt.sort(key=lambda c2: onward(int(graph.succ[u, c2])))
        cands.append(nxt)


@dataclass
class PulseSequence:
    """Free evolution for ``tau`` before each pulse: -P1-P2-...-PN."""
    pulses: list  # [(label, unitary)]
    tau: float = 1.0
    kind: str = "literal"
    group: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.pulses)

    @property
    def labels(self):
        return [p[0] for p in self.pulses]

    @property
    def unitaries(self):
        return np.array([p[1] for p in self.pulses])

    @property
    def dim(self):
        return self.pulses[0][1].shape[0]

    def net_unitary(self):
        out = np.eye(self.dim, dtype=complex)
        for _, p in self.pulses:
            out = p @ out
        return out

    def duration(self):
        return self.tau * len(self.pulses)


def emit_sequence(path, graph, tau=1.0, kind="eulerian", group_info=None):
    pulses = [(graph.labels[c], graph.unitaries[c]) for _, _, c in path]
    return PulseSequence(pulses, tau, kind, dict(group_info or {}))


def literal_sequence(labels, mats, tau=1.0, group_info=None):
    """Sequence from a word such as ['X', 'V', 'X', 'V'] and a label->matrix map."""
    return PulseSequence([(l, np.asarray(mats[l], dtype=complex)) for l in labels], tau,
                         "literal", dict(group_info or {}))


def nest_sequences(outer, inner):
    """Replace every free interval of ``outer`` by a full cycle of ``inner``.

    The last inner pulse and the following outer pulse act back to back and
    are merged into one, so the result has |outer| * |inner| intervals.
    """
    if not inner.pulses:
        return outer
    if outer.pulses and outer.dim != inner.dim:
        raise DimensionMismatch("sequences act on different dimensions")
    pulses = []
    for olab, op in outer.pulses:
        for ilab, ip in inner.pulses[:-1]:
            pulses.append((ilab, ip))
        ilab, ip = inner.pulses[-1]
        pulses.append((f"{olab}{ilab}", op @ ip))
    info = {"outer": outer.group, "inner": inner.group}
    return PulseSequence(pulses, inner.tau, "nested", info)


def toggling_propagators(seq):
    """U_1 = 1, U_k = P_{k-1} ... P_1 for k = 1..N."""
    out = [np.eye(seq.dim, dtype=complex)]
    for _, p in seq.pulses[:-1]:
        out.append(p @ out[-1])
    return np.array(out)


def verify_cyclicity(seq, tol=1e-9):
    """True when the product of all pulses is the identity up to a phase."""
    return equal_up_to_phase(seq.net_unitary(), np.eye(seq.dim), tol)


def first_order_average(seq, h, rep=None):
    """(1/N) sum_k rep(U_k)^dagger h rep(U_k) over the toggling frames."""
    h = np.asarray(h, dtype=complex)
    props = toggling_propagators(seq)
    if rep is None:
        n = round(np.log(h.shape[0]) / np.log(seq.dim))
        if seq.dim ** n != h.shape[0]:
            raise DimensionMismatch("operator size is not a tensor power of the pulse size")
        from .linalg import tensor_power
        images = tensor_power(props, n) if n > 1 else props
    else:
        images = np.asarray(rep(props))
    return np.einsum("kba,bc,kcd->ad", images.conj(), h, images) / len(images)


def pulse_generator(u):
    """Traceless Hermitian G with exp(-i G) = u up to a global phase."""
    return traceless(hermitian_log(u))


def finite_duration_error(h, pulse_gen, tau_p=1.0, steps=64, rep=None):
    """Midpoint-rule value of (1/tau_p) int_0^tau_p P(t)^dagger h P(t) dt.

    The pulse path is P(t) = exp(-i (t / tau_p) pulse_gen), so the pulse
    reaches exp(-i pulse_gen) at t = tau_p.
    """
    if steps < 8:
        raise ValueError("use at least 8 quadrature steps")
    h = np.asarray(h, dtype=complex)
    s = (np.arange(steps) + 0.5) / steps
    acc = np.zeros_like(h)
    for si in s:
        p = expm_skew(pulse_gen, si)
        if rep is not None:
            p = rep(p)
        acc += dagger(p) @ h @ p
    return acc / steps
