"""
Greedy SWAP-insertion routing with the basic / lookahead / decay heuristics.

The router keeps a front layer F of gates whose predecessors are all done.
Every executable gate in F is executed at once (single-qubit gates always,
two-qubit gates when their endpoints are adjacent). When nothing in F can
run, the SWAP with the smallest heuristic score among the edges incident to
the blocked gates is inserted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .arch import ArchGraph, Edge
from .circuit import Circuit, Gate, strip_barriers, swap
from .errors import CapacityError, RoutingInvariantError
from .mapping import Mapping

MODES = ("basic", "lookahead", "decay")
TIE_EPS = 1e-9

TieBreak = Callable[[Sequence[Edge]], Edge]


@dataclass(frozen=True)
class HeuristicConfig:
    mode: str = "decay"
    w: float = 0.5
    delta: float = 0.001
    extended_set_size: int = 20
    decay_reset_interval: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f"lookahead weight w={self.w} outside [0, 1]")
        if self.delta < 0:
            raise ValueError("decay increment must be non-negative")
        if self.extended_set_size < 0:
            raise ValueError("extended set size must be non-negative")
        if self.decay_reset_interval < 1:
            raise ValueError("decay reset interval must be at least 1")


@dataclass
class RouteResult:
    circuit: Circuit  # over physical vertices, SWAPs kept as SWAP gates
    initial_mapping: Mapping
    final_mapping: Mapping
    swap_count: int
    iterations: int = 0


@dataclass
class RouterState:
    circuit: Circuit
    front: list[int]
    remaining_preds: list[int]
    decay: list[float]
    extended: list[int] = field(default_factory=list)
    out: list[Gate] = field(default_factory=list)
    swaps_since_reset: int = 0

    def front_gates(self) -> list[Gate]:
        return [self.circuit.gates[i] for i in self.front]

    def extended_gates(self) -> list[Gate]:
        return [self.circuit.gates[i] for i in self.extended]


def _moved(v: int, a: int, b: int) -> int:
    return b if v == a else a if v == b else v


def v_score(mapping: Mapping, gates: Iterable[Gate], graph: ArchGraph, edge: Edge | None = None) -> int:
    """Total distance between the endpoints of ``gates`` under ``mapping``,
    optionally after swapping the occupants of ``edge``."""
    d = graph.dist_rows
    tau = mapping.tau
    total = 0
    if edge is None:
        for g in gates:
            p, q = g.qubits
            total += d[tau[p]][tau[q]]
        return total
    a, b = edge
    for g in gates:
        p, q = g.qubits
        total += d[_moved(tau[p], a, b)][_moved(tau[q], a, b)]
    return total


def score_swap(state: RouterState, mapping: Mapping, edge: Edge, config: HeuristicConfig,
               graph: ArchGraph) -> float:
    front = state.front_gates()
    f = v_score(mapping, front, graph, edge)
    if config.mode == "basic":
        return f
    h = f / len(front)
    if state.extended:
        h += config.w * v_score(mapping, state.extended_gates(), graph, edge) / len(state.extended)
    if config.mode == "decay":
        a, b = edge
        h *= max(state.decay[a], state.decay[b])
    return h


def swap_candidates(state: RouterState, mapping: Mapping, graph: ArchGraph) -> list[Edge]:
    """Edges incident to a physical endpoint of a blocked two-qubit front gate."""
    cands: set[Edge] = set()
    d = graph.dist_rows
    for g in state.front_gates():
        if not g.is_two_qubit:
            continue
        u, w = mapping.tau[g.qubits[0]], mapping.tau[g.qubits[1]]
        if d[u][w] == 1:
            continue
        cands.update(graph.incident_edges(u))
        cands.update(graph.incident_edges(w))
    if not cands:
        raise RoutingInvariantError("no SWAP candidates although no front gate is executable")
    return sorted(cands)


class SabreRouter:
    """Baseline greedy router. Subclasses hook ``execute``, ``score`` and ``insert_swap``."""

    def __init__(self, circuit: Circuit, graph: ArchGraph, initial: Mapping,
                 config: HeuristicConfig | None = None, tie_break: TieBreak | None = None,
                 debug: bool = False):
        circuit = strip_barriers(circuit)
        if circuit.num_qubits > graph.n:
            raise CapacityError(f"{circuit.num_qubits} logical qubits do not fit on {graph.n} vertices")
        if initial.num_logical != circuit.num_qubits or initial.num_vertices != graph.n:
            raise ValueError(f"initial mapping {initial.num_logical}->{initial.num_vertices} does not "
                             f"match circuit ({circuit.num_qubits} qubits) on {graph!r}")
        self.circuit = circuit
        self.graph = graph
        self.initial = initial
        self.mapping = initial.copy()
        self.config = config or HeuristicConfig()
        self.tie_break = tie_break
        self.debug = debug
        self.rng = random.Random(self.config.seed)
        dag = circuit.dag
        self.succs = dag.succs
        remaining = [len(p) for p in dag.preds]
        self.state = RouterState(
            circuit=circuit,
            front=[i for i, n in enumerate(remaining) if n == 0],
            remaining_preds=remaining,
            decay=[1.0] * graph.n,
        )
        self.swap_count = 0
        self.iterations = 0
        # consecutive SWAPs without executing anything before forcing a shortest-path route
        self.max_stall = 10 * graph.n

    # -- hooks ---------------------------------------------------------------

    def execute(self, gid: int) -> None:
        g = self.circuit.gates[gid]
        self.state.out.append(g.on(*(self.mapping.tau[q] for q in g.qubits)))

    def score(self, edge: Edge) -> float:
        return score_swap(self.state, self.mapping, edge, self.config, self.graph)

    def insert_swap(self, edge: Edge) -> None:
        self.state.out.append(swap(*edge))
        self.mapping.swap(*edge)

    def finish(self) -> None:
        pass

    # -- loop ----------------------------------------------------------------

    def executable(self, gid: int) -> bool:
        g = self.circuit.gates[gid]
        if not g.is_two_qubit:
            return True
        tau = self.mapping.tau
        return self.graph.dist_rows[tau[g.qubits[0]]][tau[g.qubits[1]]] == 1

    def resolve_successors(self, gid: int) -> None:
        st = self.state
        for s in self.succs[gid]:
            st.remaining_preds[s] -= 1
            if st.remaining_preds[s] == 0:
                st.front.append(s)

    def reset_decay(self) -> None:
        self.state.decay = [1.0] * self.graph.n
        self.state.swaps_since_reset = 0

    def compute_extended_set(self) -> list[int]:
        """First ``extended_set_size`` two-qubit gates that become ready once F is done."""
        size = self.config.extended_set_size
        if size == 0 or self.config.mode == "basic":
            return []
        st = self.state
        gates = self.circuit.gates
        pending: dict[int, int] = {}
        ext: list[int] = []
        layer = list(st.front)
        while layer:
            nxt = []
            for gid in layer:
                for s in self.succs[gid]:
                    left = pending.get(s, st.remaining_preds[s]) - 1
                    pending[s] = left
                    if left == 0:
                        nxt.append(s)
                        if gates[s].is_two_qubit:
                            ext.append(s)
                            if len(ext) == size:
                                return ext
            layer = nxt
        return ext

    def choose(self, cands: Sequence[Edge], scores: Sequence[float]) -> Edge:
        best = min(scores)
        tied = [e for e, s in zip(cands, scores) if s <= best + TIE_EPS]
        if self.tie_break is not None and len(tied) > 1:
            pick = self.tie_break(tied)
            if pick not in tied:
                raise ValueError(f"tie_break returned {pick}, not among {tied}")
            return pick
        return tied[0] if len(tied) == 1 else self.rng.choice(tied)

    def select_swap(self) -> Edge:
        st = self.state
        st.extended = self.compute_extended_set()
        cands = swap_candidates(st, self.mapping, self.graph)
        return self.choose(cands, [self.score(e) for e in cands])

    def after_swap(self, edge: Edge) -> None:
        st = self.state
        self.swap_count += 1
        st.swaps_since_reset += 1
        if st.swaps_since_reset % self.config.decay_reset_interval == 0:
            self.reset_decay()
        else:
            st.decay[edge[0]] += self.config.delta
            st.decay[edge[1]] += self.config.delta
        if self.debug and not self.mapping.is_consistent():
            raise RoutingInvariantError(f"mapping lost injectivity after SWAP {edge}")

    def force_route(self) -> None:
        """Stall escape: walk the closest blocked front gate together along a shortest path."""
        tau = self.mapping.tau
        d = self.graph.dist_rows
        gid = min((i for i in self.state.front if self.circuit.gates[i].is_two_qubit),
                  key=lambda i: d[tau[self.circuit.gates[i].qubits[0]]][tau[self.circuit.gates[i].qubits[1]]])
        p, q = self.circuit.gates[gid].qubits
        path = self.graph.shortest_path(tau[p], tau[q])
        for u, w in zip(path, path[1:-1]):
            edge = (min(u, w), max(u, w))
            self.insert_swap(edge)
            self.swap_count += 1
        self.reset_decay()

    def run(self) -> RouteResult:
        st = self.state
        limit = 10 * max(1, len(self.circuit)) * self.graph.n + 10
        stall = 0
        while st.front:
            self.iterations += 1
            if self.iterations > limit:
                raise RoutingInvariantError(f"routing exceeded {limit} iterations")
            ready = [g for g in st.front if self.executable(g)]
            if ready:
                for gid in ready:
                    self.execute(gid)
                    st.front.remove(gid)
                    self.resolve_successors(gid)
                self.reset_decay()
                stall = 0
            elif stall >= self.max_stall:
                self.force_route()
                stall = 0
            else:
                edge = self.select_swap()
                self.insert_swap(edge)
                self.after_swap(edge)
                stall += 1
        self.finish()
        return RouteResult(
            circuit=Circuit(self.graph.n, st.out),
            initial_mapping=self.initial.copy(),
            final_mapping=self.mapping.copy(),
            swap_count=self.swap_count,
            iterations=self.iterations,
        )


def route(circuit: Circuit, graph: ArchGraph, initial: Mapping, config: HeuristicConfig | None = None,
          tie_break: TieBreak | None = None, debug: bool = False) -> RouteResult:
    """Route ``circuit`` greedily from ``initial``; barriers are dropped."""
    return SabreRouter(circuit, graph, initial, config, tie_break, debug).run()
