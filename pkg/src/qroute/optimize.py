"""
Commutative gate cancellation and the route -> decompose -> cancel pipeline.

Rules (a gate G is slid forward past an overlapping gate H when they commute):
    - CX-CX commute when they share only controls or only targets
    - CZ commutes with CZ, with Z-like gates, and with CX controls
    - Z-like gates commute through CX controls, X-like through CX targets
    - Z-like gates commute with each other, X-like gates likewise
    - identical CX, CZ (either orientation) and x/y/z/h pairs cancel
Unknown single-qubit names, SWAPs and barriers block.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arch import ArchGraph
from .circuit import BARRIER, CX, CZ, SWAP, Circuit, Gate, decompose_swaps, depth
from .layout import get_router
from .mapping import Mapping
from .router import HeuristicConfig, RouteResult, TieBreak

Z_LIKE = frozenset({"z", "s", "sdg", "t", "tdg", "rz", "p", "u1"})
X_LIKE = frozenset({"x", "rx", "sx", "sxdg"})
SELF_INVERSE_1Q = frozenset({"x", "y", "z", "h"})
MAX_SWEEPS = 100


def _role(g: Gate, q: int) -> str | None:
    """How ``g`` acts on wire ``q``: 'z' (diagonal), 'x' (X-axis) or None (opaque)."""
    if g.name == CX:
        return "z" if g.qubits[0] == q else "x"
    if g.name == CZ or g.name in Z_LIKE:
        return "z"
    if g.name in X_LIKE:
        return "x"
    return None


def commutes(g: Gate, h: Gate) -> bool:
    """Sound (not complete) commutation test for gates sharing at least one qubit."""
    if g.name in (SWAP, BARRIER) or h.name in (SWAP, BARRIER):
        return False
    shared = set(g.qubits) & set(h.qubits)
    for q in shared:
        rg, rh = _role(g, q), _role(h, q)
        if rg is None or rh is None or rg != rh:
            return False
    return True


def cancels(g: Gate, h: Gate) -> bool:
    if g.name != h.name:
        return False
    if g.name == CX:
        return g.qubits == h.qubits
    if g.name == CZ:
        return set(g.qubits) == set(h.qubits)
    return g.name in SELF_INVERSE_1Q and g.qubits == h.qubits and not g.params


def _sweep(gates: list[Gate], num_qubits: int) -> list[Gate]:
    wires: list[list[int]] = [[] for _ in range(num_qubits)]
    pos: list[dict[int, int]] = [{} for _ in range(num_qubits)]
    for i, g in enumerate(gates):
        for q in g.qubits:
            pos[q][i] = len(wires[q])
            wires[q].append(i)
    alive = [True] * len(gates)
    for i, g in enumerate(gates):
        if not alive[i] or g.name in (SWAP, BARRIER):
            continue
        partner = None
        for q in g.qubits:
            stop = None
            wire = wires[q]
            for j in wire[pos[q][i] + 1:]:
                if not alive[j]:
                    continue
                if cancels(g, gates[j]) or not commutes(g, gates[j]):
                    stop = j
                    break
            if stop is None or (partner is not None and stop != partner):
                partner = None
                break
            partner = stop
        if partner is not None and cancels(g, gates[partner]):
            alive[i] = alive[partner] = False
    return [g for g, keep in zip(gates, alive) if keep]


def cancel_commutative(circuit: Circuit, max_sweeps: int = MAX_SWEEPS) -> Circuit:
    gates = list(circuit.gates)
    for _ in range(max_sweeps):
        new = _sweep(gates, circuit.num_qubits)
        if len(new) == len(gates):
            break
        gates = new
    return circuit.with_gates(gates)


def cc_sweeps(circuit: Circuit) -> int:
    """Number of sweeps until no further cancellation (the last one changes nothing)."""
    gates = list(circuit.gates)
    n = 0
    while True:
        n += 1
        new = _sweep(gates, circuit.num_qubits)
        if len(new) == len(gates):
            return n
        gates = new


@dataclass
class PipelineResult:
    routed: RouteResult
    circuit: Circuit  # SWAP-decomposed, optionally cancelled
    depth_in: int
    depth_routed: int
    depth_out: int
    gates_routed: int
    gates_out: int

    @property
    def swap_count(self) -> int:
        return self.routed.swap_count


def pipeline(circuit: Circuit, graph: ArchGraph, initial: Mapping, strategy: str = "sqgm", cc: bool = False,
             config: HeuristicConfig | None = None, tie_break: TieBreak | None = None) -> PipelineResult:
    routed = get_router(strategy)(circuit, graph, initial, config, tie_break=tie_break)
    flat = decompose_swaps(routed.circuit)
    out = cancel_commutative(flat) if cc else flat
    return PipelineResult(routed, out, depth(circuit), depth(flat), depth(out), len(flat), len(out))
