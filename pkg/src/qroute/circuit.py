"""
Circuit IR: gates, per-qubit dependency DAG, front-packed layering and depth.

Gates are identified by their index in ``Circuit.gates``. Single-qubit gates
are opaque (name plus verbatim parameter text); the only multi-qubit kinds are
``cx``, ``cz``, ``swap`` and ``barrier``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CircuitError

CX = "cx"
CZ = "cz"
SWAP = "swap"
BARRIER = "barrier"
TWO_QUBIT_KINDS = frozenset({CX, CZ, SWAP})


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    params: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(str(p) for p in self.params))
        n = len(self.qubits)
        if len(set(self.qubits)) != n:
            raise CircuitError(f"repeated qubit in {self}")
        if self.name == BARRIER:
            if n == 0:
                raise CircuitError("barrier without qubits")
        elif self.name in TWO_QUBIT_KINDS:
            if n != 2:
                raise CircuitError(f"{self.name} needs exactly 2 qubits, got {n}")
        elif n != 1:
            raise CircuitError(f"unsupported {n}-qubit gate {self.name!r}")

    @property
    def is_barrier(self) -> bool:
        return self.name == BARRIER

    @property
    def is_single(self) -> bool:
        return len(self.qubits) == 1 and self.name != BARRIER

    @property
    def is_two_qubit(self) -> bool:
        return self.name in TWO_QUBIT_KINDS

    def on(self, *qubits: int) -> Gate:
        """Same gate acting on other qubits."""
        return Gate(self.name, qubits, self.params)

    def __str__(self):
        p = f"({','.join(self.params)})" if self.params else ""
        return f"{self.name}{p} {','.join(map(str, self.qubits))}"


def cx(a: int, b: int) -> Gate:
    return Gate(CX, (a, b))


def cz(a: int, b: int) -> Gate:
    return Gate(CZ, (a, b))


def swap(a: int, b: int) -> Gate:
    return Gate(SWAP, (a, b))


def single(name: str, q: int, *params: str) -> Gate:
    return Gate(name, (q,), params)


@dataclass(frozen=True)
class Dag:
    """Immediate per-qubit predecessors/successors, deduplicated, in gate order."""
    preds: tuple[tuple[int, ...], ...]
    succs: tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        if self.num_qubits < 0:
            raise CircuitError("negative qubit count")
        for i, g in enumerate(gates):
            if not isinstance(g, Gate):
                raise CircuitError(f"gate {i} is not a Gate: {g!r}")
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise CircuitError(f"gate {i} ({g}) uses qubit {q} outside 0..{self.num_qubits - 1}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __getitem__(self, i: int) -> Gate:
        return self.gates[i]

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.num_qubits == other.num_qubits and self.gates == other.gates

    def __hash__(self):
        return hash((self.num_qubits, self.gates))

    def __repr__(self):
        return f"Circuit({self.num_qubits} qubits, {len(self.gates)} gates)"

    @cached_property
    def dag(self) -> Dag:
        return build_dag(self)

    @property
    def depth(self) -> int:
        return depth(self)

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.num_qubits, tuple(gates))

    def count(self, name: str) -> int:
        return sum(1 for g in self.gates if g.name == name)

    def two_qubit_count(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)

    def qubit_sequences(self) -> list[list[Gate]]:
        """Gates touching each qubit, in order."""
        seqs: list[list[Gate]] = [[] for _ in range(self.num_qubits)]
        for g in self.gates:
            for q in g.qubits:
                seqs[q].append(g)
        return seqs


def build_dag(circuit: Circuit) -> Dag:
    last: list[int | None] = [None] * circuit.num_qubits
    preds: list[tuple[int, ...]] = []
    succs: list[list[int]] = [[] for _ in circuit.gates]
    for i, g in enumerate(circuit.gates):
        ps: list[int] = []
        for q in g.qubits:
            j = last[q]
            if j is not None and j not in ps:
                ps.append(j)
            last[q] = i
        for j in ps:
            succs[j].append(i)
        preds.append(tuple(ps))
    return Dag(tuple(preds), tuple(tuple(s) for s in succs))


def decompose_swaps(circuit: Circuit) -> Circuit:
    """Replace each SWAP(a,b) by CX(a,b) CX(b,a) CX(a,b)."""
    if not any(g.name == SWAP for g in circuit.gates):
        return circuit
    out: list[Gate] = []
    for g in circuit.gates:
        if g.name == SWAP:
            a, b = g.qubits
            out += [cx(a, b), cx(b, a), cx(a, b)]
        else:
            out.append(g)
    return circuit.with_gates(out)


def recompose_swaps(circuit: Circuit) -> Circuit:
    """Inverse of :func:`decompose_swaps` for contiguous CX(a,b) CX(b,a) CX(a,b) triples."""
    gates = circuit.gates
    out: list[Gate] = []
    i = 0
    while i < len(gates):
        g = gates[i]
        if g.name == CX and i + 2 < len(gates):
            a, b = g.qubits
            if gates[i + 1] == cx(b, a) and gates[i + 2] == g:
                out.append(swap(a, b))
                i += 3
                continue
        out.append(g)
        i += 1
    return circuit.with_gates(out)


def strip_barriers(circuit: Circuit) -> Circuit:
    if not any(g.is_barrier for g in circuit.gates):
        return circuit
    return circuit.with_gates(g for g in circuit.gates if not g.is_barrier)


def reverse(circuit: Circuit) -> Circuit:
    return circuit.with_gates(reversed(circuit.gates))


@dataclass(frozen=True)
class LayerPartition:
    """Front-packed layers of ``circuit`` (the SWAP-decomposed input).

    ``layers[k]`` holds indices into ``circuit.gates``; barriers are fences
    and belong to no layer.
    """
    circuit: Circuit
    layers: tuple[tuple[int, ...], ...]
    level: tuple[int, ...]  # 1-based layer of each gate, 0 for barriers

    @property
    def depth(self) -> int:
        return len(self.layers)


def _levels(gates: Sequence[Gate], num_qubits: int) -> list[int]:
    t = [0] * num_qubits
    level = []
    for g in gates:
        m = max((t[q] for q in g.qubits), default=0)
        if not g.is_barrier:
            m += 1
        for q in g.qubits:
            t[q] = m
        level.append(0 if g.is_barrier else m)
    return level


def layers(circuit: Circuit) -> LayerPartition:
    flat = decompose_swaps(circuit)
    level = _levels(flat.gates, flat.num_qubits)
    buckets: list[list[int]] = [[] for _ in range(max(level, default=0))]
    for i, lv in enumerate(level):
        if lv:
            buckets[lv - 1].append(i)
    return LayerPartition(flat, tuple(tuple(b) for b in buckets), tuple(level))


def depth(circuit: Circuit) -> int:
    """Number of front-packed layers, SWAP counted as three CX."""
    t = [0] * circuit.num_qubits
    for g in circuit.gates:
        m = max(t[q] for q in g.qubits)
        if g.name == SWAP:
            m += 3
        elif not g.is_barrier:
            m += 1
        for q in g.qubits:
            t[q] = m
    return max(t, default=0)


def qubit_depths(circuit: Circuit) -> list[int]:
    """Layer index of the last gate on each qubit (0 when idle)."""
    t = [0] * circuit.num_qubits
    for g in circuit.gates:
        m = max(t[q] for q in g.qubits) + (3 if g.name == SWAP else 0 if g.is_barrier else 1)
        for q in g.qubits:
            t[q] = m
    return t
