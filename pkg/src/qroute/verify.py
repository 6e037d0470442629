"""
Independent checks for routed circuits.

- connectivity: every two-qubit gate sits on a graph edge
- structural: replaying the routed circuit through the evolving mapping gives
  a valid topological order of the source DAG
- unitary: dense statevector comparison for small devices
"""
from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass
from typing import Mapping as MappingT

import numpy as np

from .arch import ArchGraph
from .circuit import CX, CZ, SWAP, Circuit, Gate, strip_barriers
from .errors import UnboundGateError
from .mapping import Mapping

MAX_UNITARY_QUBITS = 10


@dataclass
class CheckResult:
    ok: bool
    witness: int | None = None  # index of the first offending routed gate
    message: str = ""
    final_mapping: Mapping | None = None


@dataclass
class EquivalenceReport:
    connectivity_ok: bool
    structural_ok: bool
    unitary_ok: bool | None
    max_deviation: float
    witness: int | None
    message: str = ""
    final_mapping: Mapping | None = None

    @property
    def ok(self) -> bool:
        return self.connectivity_ok and self.structural_ok and self.unitary_ok is not False


def check_connectivity(circuit: Circuit, graph: ArchGraph) -> CheckResult:
    for i, g in enumerate(circuit.gates):
        if g.is_two_qubit and not graph.is_edge(*g.qubits):
            return CheckResult(False, i, f"gate {i} ({g}) is not on an edge")
        if max(g.qubits, default=-1) >= graph.n:
            return CheckResult(False, i, f"gate {i} ({g}) uses a vertex outside the graph")
    return CheckResult(True)


def check_structural(source: Circuit, routed: Circuit, initial: Mapping) -> CheckResult:
    """Pull routed gates back to logical qubits and replay them against the source DAG."""
    source = strip_barriers(source)
    queues: list[list[int]] = [[] for _ in range(source.num_qubits)]
    for i, g in enumerate(source.gates):
        for q in g.qubits:
            queues[q].append(i)
    head = [0] * source.num_qubits
    m = initial.copy()
    for r, g in enumerate(routed.gates):
        if g.is_barrier:
            continue
        if g.name == SWAP:
            m.swap(*g.qubits)
            continue
        logical = tuple(m.inv[v] for v in g.qubits)
        if None in logical:
            return CheckResult(False, r, f"routed gate {r} ({g}) acts on an unoccupied vertex")
        fronts = {queues[q][head[q]] if head[q] < len(queues[q]) else None for q in logical}
        if len(fronts) != 1 or None in fronts:
            return CheckResult(False, r, f"routed gate {r} ({g}) is not ready in the source DAG")
        sid = fronts.pop()
        if source.gates[sid] != g.on(*logical):
            return CheckResult(False, r, f"routed gate {r} ({g}) does not match source gate {sid} "
                                         f"({source.gates[sid]})")
        for q in logical:
            head[q] += 1
    for q, h in enumerate(head):
        if h != len(queues[q]):
            sid = queues[q][h]
            return CheckResult(False, None, f"source gate {sid} ({source.gates[sid]}) never executed")
    return CheckResult(True, final_mapping=m)


# -- dense simulation -------------------------------------------------------

_S2 = 1 / math.sqrt(2)


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -np.exp(1j * lam) * s],
                     [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]])


def _phase(lam: float) -> np.ndarray:
    return np.diag([1, np.exp(1j * lam)])


FIXED = {
    "id": np.eye(2),
    "x": np.array([[0, 1], [1, 0]]),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1, -1]),
    "h": np.array([[_S2, _S2], [_S2, -_S2]]),
    "s": _phase(math.pi / 2),
    "sdg": _phase(-math.pi / 2),
    "t": _phase(math.pi / 4),
    "tdg": _phase(-math.pi / 4),
    "sx": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
    "sxdg": 0.5 * np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]]),
}

PARAMETRIC = {
    "rx": lambda t: np.array([[math.cos(t / 2), -1j * math.sin(t / 2)], [-1j * math.sin(t / 2), math.cos(t / 2)]]),
    "ry": lambda t: np.array([[math.cos(t / 2), -math.sin(t / 2)], [math.sin(t / 2), math.cos(t / 2)]]),
    "rz": lambda t: np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)]),
    "p": _phase,
    "u1": _phase,
    "u2": lambda phi, lam: _u3(math.pi / 2, phi, lam),
    "u3": _u3,
    "u": _u3,
    "U": _u3,
}

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv,
        ast.Pow: operator.pow, ast.USub: operator.neg, ast.UAdd: operator.pos}
_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp, "ln": math.log, "sqrt": math.sqrt}


def eval_param(text: str) -> float:
    """Numeric value of an OpenQASM parameter expression (pi, arithmetic, basic functions)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise ValueError(f"cannot evaluate parameter {text!r}")

    return ev(ast.parse(text.replace("^", "**"), mode="eval"))


def gate_matrix(g: Gate, bindings: MappingT[str, np.ndarray] | None = None) -> np.ndarray:
    if bindings and g.name in bindings:
        return np.asarray(bindings[g.name], dtype=complex)
    if g.name in FIXED:
        return np.asarray(FIXED[g.name], dtype=complex)
    if g.name in PARAMETRIC:
        return np.asarray(PARAMETRIC[g.name](*(eval_param(p) for p in g.params)), dtype=complex)
    raise UnboundGateError(f"no matrix bound for gate {g.name!r}")


def simulate(circuit: Circuit, states: np.ndarray, bindings: MappingT[str, np.ndarray] | None = None) -> np.ndarray:
    """Apply ``circuit`` to a batch of statevectors, shape (batch, 2**n).

    Qubit ``k`` is tensor axis ``k + 1`` (axis 0 is the batch), i.e. qubit 0
    is the most significant bit of the flat index.
    """
    n = circuit.num_qubits
    psi = np.array(states, dtype=complex).reshape((-1,) + (2,) * n)
    for g in circuit.gates:
        if g.is_barrier:
            continue
        if g.is_single:
            a = g.qubits[0] + 1
            psi = np.moveaxis(np.tensordot(gate_matrix(g, bindings), psi, axes=([1], [a])), 0, a)
            continue
        a, b = (q + 1 for q in g.qubits)
        idx = lambda i, j: tuple(i if k == a else j if k == b else slice(None) for k in range(n + 1))
        if g.name == CX:
            psi[idx(1, 0)], psi[idx(1, 1)] = psi[idx(1, 1)].copy(), psi[idx(1, 0)].copy()
        elif g.name == CZ:
            psi[idx(1, 1)] *= -1
        elif g.name == SWAP:
            psi[idx(0, 1)], psi[idx(1, 0)] = psi[idx(1, 0)].copy(), psi[idx(0, 1)].copy()
    return psi.reshape(psi.shape[0], -1)


def random_states(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=(count, 2**n)) + 1j * rng.normal(size=(count, 2**n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def embed(states: np.ndarray, mapping: Mapping) -> np.ndarray:
    """Place logical states onto physical vertices; unoccupied vertices start in |0>."""
    n, nv = mapping.num_logical, mapping.num_vertices
    batch = states.shape[0]
    free = [v for v in range(nv) if mapping.inv[v] is None]
    # build with axes (batch, logical 0..n-1, free vertices...), then move each to its vertex axis
    tmp = np.zeros((batch,) + (2,) * nv, dtype=complex)
    tmp[(slice(None),) * (n + 1) + (0,) * len(free)] = states.reshape((batch,) + (2,) * n)
    order = [0] + [v + 1 for v in mapping.tau] + [v + 1 for v in free]
    return np.moveaxis(tmp, list(range(nv + 1)), order).reshape(batch, -1)


def check_unitary(source: Circuit, routed: Circuit, initial: Mapping, final: Mapping,
                  bindings: MappingT[str, np.ndarray] | None = None, num_states: int = 8,
                  seed: int = 0, tol: float = 1e-9) -> tuple[bool, float]:
    """Compare ``routed`` against ``source`` on random inputs, up to a global phase per input."""
    nv = routed.num_qubits
    if nv > MAX_UNITARY_QUBITS:
        raise ValueError(f"unitary check limited to {MAX_UNITARY_QUBITS} qubits, got {nv}")
    rng = np.random.default_rng(seed)
    psi = random_states(source.num_qubits, num_states, rng)
    expected = embed(simulate(source, psi, bindings), final)
    got = simulate(routed, embed(psi, initial), bindings)
    overlap = np.sum(expected.conj() * got, axis=1)
    phase = np.where(np.abs(overlap) > 0, overlap / np.maximum(np.abs(overlap), 1e-300), 1)
    dev = float(np.max(np.abs(got - phase[:, None] * expected)))
    return dev < tol, dev


def verify_routing(source: Circuit, routed: Circuit, graph: ArchGraph, initial: Mapping,
                   final: Mapping | None = None, structural_form: Circuit | None = None,
                   unitary: bool | None = None, bindings: MappingT[str, np.ndarray] | None = None) -> EquivalenceReport:
    """Run all checks. ``structural_form`` is the SWAP-form circuit when ``routed``
    has been decomposed or optimised; ``unitary=None`` means "when small enough"."""
    conn = check_connectivity(routed, graph)
    struct = check_structural(source, structural_form if structural_form is not None else routed, initial)
    final = final or struct.final_mapping
    if unitary is None:
        unitary = graph.n <= MAX_UNITARY_QUBITS
    u_ok, dev = None, 0.0
    if unitary and final is not None:
        u_ok, dev = check_unitary(source, routed, initial, final, bindings)
    elif unitary:
        u_ok = False
    witness = conn.witness if not conn.ok else struct.witness
    msg = "; ".join(m for m in (conn.message, struct.message) if m)
    if u_ok is False:
        msg = "; ".join(filter(None, [msg, f"unitary deviation {dev:.3g}"]))
    return EquivalenceReport(conn.ok, struct.ok, u_ok, dev, witness, msg, final)
