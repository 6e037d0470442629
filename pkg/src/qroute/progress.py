"""
Depth-aware routing: single-qubit gate buffering and progress-weighted SWAPs.

Each physical vertex carries a progress counter (how many time steps of
output have piled up on it) and a buffer of single-qubit gates that are ready
but not yet emitted. Buffers are flushed right before the next two-qubit gate
on their vertex, or partially before a SWAP so that the SWAP lands as early
as the lagging side allows.
"""
from __future__ import annotations

from collections import deque

from .arch import ArchGraph, Edge
from .circuit import Circuit, Gate, swap
from .errors import RoutingInvariantError
from .mapping import Mapping
from .router import HeuristicConfig, RouteResult, SabreRouter, TieBreak


class ProgressTracker:
    """Per-vertex progress counters; never decrease."""

    def __init__(self, num_vertices: int):
        self.pg = [0] * num_vertices

    def __getitem__(self, v: int) -> int:
        return self.pg[v]

    def __len__(self):
        return len(self.pg)

    def _set(self, v: int, value: int) -> None:
        if value < self.pg[v]:
            raise RoutingInvariantError(f"progress of v{v} would drop from {self.pg[v]} to {value}")
        self.pg[v] = value

    def on_single(self, v: int) -> ProgressTracker:
        self._set(v, self.pg[v] + 1)
        return self

    def _realign(self, v: int, w: int, cost: int) -> ProgressTracker:
        top = max(self.pg[v], self.pg[w]) + cost
        self._set(v, top)
        self._set(w, top)
        return self

    def on_two(self, v: int, w: int) -> ProgressTracker:
        return self._realign(v, w, 1)

    def on_swap(self, v: int, w: int) -> ProgressTracker:
        return self._realign(v, w, 3)

    def nu(self, v: int, w: int) -> int:
        return max(self.pg[v], self.pg[w])


class QubitBuffer:
    """Deferred single-qubit gates per vertex, in program order."""

    def __init__(self, num_vertices: int):
        self.slots: list[deque[Gate]] = [deque() for _ in range(num_vertices)]

    def __getitem__(self, v: int) -> deque[Gate]:
        return self.slots[v]

    def push(self, v: int, gate: Gate) -> None:
        self.slots[v].append(gate)

    def take(self, v: int, k: int | None = None) -> list[Gate]:
        slot = self.slots[v]
        k = len(slot) if k is None else k
        return [slot.popleft() for _ in range(k)]

    def exchange(self, v: int, w: int) -> None:
        self.slots[v], self.slots[w] = self.slots[w], self.slots[v]

    def total(self) -> int:
        return sum(len(s) for s in self.slots)


def h_sqgm(base: float, pg: ProgressTracker, edge: Edge, num_vertices: int) -> float:
    return base + pg.nu(*edge) / num_vertices


def flush(out: list[Gate], pg: ProgressTracker, buffers: QubitBuffer, v: int, k: int | None = None) -> int:
    """Emit the first ``k`` (default all) buffered gates of ``v``."""
    gates = buffers.take(v, k)
    for g in gates:
        out.append(g.on(v))
        pg.on_single(v)
    return len(gates)


def place_swap(out: list[Gate], mapping: Mapping, pg: ProgressTracker, buffers: QubitBuffer,
               edge: Edge) -> tuple[int, int, int]:
    """Insert SWAP(edge) aligned with the lagging endpoint.

    The lagging vertex first emits as many of its buffered gates as fit in
    the progress gap, then the SWAP is emitted, buffers trade places and the
    mapping is updated. Returns ``(lagging, leading, flushed_count)``.
    """
    a, b = edge
    lo, hi = (a, b) if pg[a] < pg[b] else (b, a)
    k = min(pg[hi] - pg[lo], len(buffers[lo]))
    flush(out, pg, buffers, lo, k)
    out.append(swap(a, b))
    buffers.exchange(lo, hi)
    pg.on_swap(lo, hi)
    mapping.swap(a, b)
    return lo, hi, k


class SqgmRouter(SabreRouter):

    def __init__(self, circuit: Circuit, graph: ArchGraph, initial: Mapping,
                 config: HeuristicConfig | None = None, tie_break: TieBreak | None = None,
                 debug: bool = False, progress_term: bool = True):
        super().__init__(circuit, graph, initial, config, tie_break, debug)
        self.pg = ProgressTracker(graph.n)
        self.buffers = QubitBuffer(graph.n)
        self.progress_term = progress_term

    def execute(self, gid: int) -> None:
        g = self.circuit.gates[gid]
        tau = self.mapping.tau
        if not g.is_two_qubit:
            self.buffers.push(tau[g.qubits[0]], g)
            return
        u, w = tau[g.qubits[0]], tau[g.qubits[1]]
        out = self.state.out
        flush(out, self.pg, self.buffers, u)
        flush(out, self.pg, self.buffers, w)
        out.append(g.on(u, w))
        self.pg.on_two(u, w)

    def score(self, edge: Edge) -> float:
        base = super().score(edge)
        if not self.progress_term:
            return base
        return h_sqgm(base, self.pg, edge, self.graph.n)

    def insert_swap(self, edge: Edge) -> None:
        place_swap(self.state.out, self.mapping, self.pg, self.buffers, edge)

    def finish(self) -> None:
        for v in range(self.graph.n):
            flush(self.state.out, self.pg, self.buffers, v)


def route_sqgm(circuit: Circuit, graph: ArchGraph, initial: Mapping, config: HeuristicConfig | None = None,
               tie_break: TieBreak | None = None, debug: bool = False,
               progress_term: bool = True) -> RouteResult:
    """Route with buffered single-qubit gates and progress-aware SWAP choice.

    ``progress_term=False`` keeps buffering and SWAP placement but scores
    candidates with the base heuristic alone.
    """
    router = SqgmRouter(circuit, graph, initial, config, tie_break, debug, progress_term)
    return router.run()
