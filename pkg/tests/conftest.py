import functools

import networkx as nx
import numpy as np
import pytest

from qroute.arch import builtin
from qroute.circuit import Circuit

T = np.diag([1, np.exp(1j * np.pi / 4)])
X = np.array([[0, 1], [1, 0]])


def example_bindings(k):
    """Concrete matrices for the opaque gates of the worked example."""
    b = {"W": T}
    for i in range(1, k + 1):
        b[f"V{i}"] = np.linalg.matrix_power(T, i + 1)
        b[f"U{i}"] = X @ np.linalg.matrix_power(T, i)
    return b


@pytest.fixture
def ourense():
    return builtin("ourense")


# -- independent oracles ----------------------------------------------------

def nx_depth(circuit: Circuit) -> int:
    """Longest weighted path through a networkx DAG (SWAP weighs 3, barrier 0)."""
    g = nx.DiGraph()
    last = {}
    g.add_node("src")
    for i, gate in enumerate(circuit.gates):
        w = 3 if gate.name == "swap" else 0 if gate.name == "barrier" else 1
        g.add_node(i)
        preds = {last[q] for q in gate.qubits if q in last} or {"src"}
        for p in preds:
            g.add_edge(p, i, weight=w)
        for q in gate.qubits:
            last[q] = i
    if not circuit.gates:
        return 0
    return nx.dag_longest_path_length(g, weight="weight")


_CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
_CZ = np.diag([1, 1, 1, -1])
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


@functools.lru_cache(maxsize=None)
def _perm_matrix(n, order):
    """Permutation unitary moving qubit order[i] to position i (qubit 0 = most significant)."""
    dim = 2 ** n
    p = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
        new = [bits[order[i]] for i in range(n)]
        p[int("".join(map(str, new)), 2), idx] = 1
    return p


def dense_unitary(circuit: Circuit, one_qubit) -> np.ndarray:
    """Full unitary via Kronecker products and permutations; ``one_qubit(gate)`` gives 2x2 matrices."""
    n = circuit.num_qubits
    u = np.eye(2 ** n, dtype=complex)
    for g in circuit.gates:
        if g.name == "barrier":
            continue
        if len(g.qubits) == 1:
            m, qs = one_qubit(g), g.qubits
        else:
            m, qs = {"cx": _CX, "cz": _CZ, "swap": _SWAP}[g.name], g.qubits
        rest = tuple(q for q in range(n) if q not in qs)
        order = tuple(qs) + rest
        p = _perm_matrix(n, order)
        full = np.kron(m, np.eye(2 ** len(rest)))
        u = p.T @ full @ p @ u
    return u


# -- acceptance summary -----------------------------------------------------

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``criterion(n, ok, detail)`` records one acceptance line and returns ``ok``."""

    def record(n, ok, detail):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[n] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
