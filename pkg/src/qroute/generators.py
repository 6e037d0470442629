"""Circuit generators: the 4-qubit worked example, random circuits, planted-layout benchmarks."""
from __future__ import annotations

import random

from .arch import ArchGraph
from .circuit import Circuit, Gate, cx, single
from .errors import GenerationError
from .mapping import Mapping

# logical q0->v1, q1->v0, q2->v2, q3->v3 on the 5-vertex "ourense" graph
EXAMPLE_MAPPING = (1, 0, 2, 3)


def running_example(k: int = 4) -> Circuit:
    """CX(q0,q1) W(q0) CX(q1,q3) CX(q0,q3) CX(q1,q2) V1..Vk(q0) U1..Uk(q1).

    Depth k+3. W, Ui, Vi are opaque single-qubit gates.
    """
    gates = [cx(0, 1), single("W", 0), cx(1, 3), cx(0, 3), cx(1, 2)]
    gates += [single(f"V{i}", 0) for i in range(1, k + 1)]
    gates += [single(f"U{i}", 1) for i in range(1, k + 1)]
    return Circuit(4, gates)


SINGLE_NAMES = ("h", "x", "z", "s", "t", "sdg", "tdg", "sx")
PARAM_NAMES = ("rz", "rx", "ry")
ANGLES = ("pi/2", "pi/4", "-pi/8", "0.3", "3*pi/4")


def random_single(rng: random.Random, q: int, names: tuple[str, ...] = SINGLE_NAMES) -> Gate:
    if rng.random() < 0.25:
        return single(rng.choice(PARAM_NAMES), q, rng.choice(ANGLES))
    return single(rng.choice(names), q)


def random_circuit(n: int, m: int, seed: int | random.Random, two_qubit_fraction: float = 0.5,
                   kinds: tuple[str, ...] = ("cx", "cz")) -> Circuit:
    """``m`` gates on ``n`` qubits: two-qubit gates from ``kinds`` between
    uniformly random pairs, otherwise random named single-qubit gates."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    gates = []
    for _ in range(m):
        if n >= 2 and rng.random() < two_qubit_fraction:
            a, b = rng.sample(range(n), 2)
            gates.append(Gate(rng.choice(kinds), (a, b)))
        else:
            gates.append(random_single(rng, rng.randrange(n)))
    return Circuit(n, gates)


def chain_circuit(n: int, num_two_qubit: int, seed: int | random.Random, chain_fraction: float = 0.3,
                  chain_length: tuple[int, int] = (8, 16)) -> Circuit:
    """Random CX circuit where ``chain_fraction`` of the CX gates are followed by
    a run of single-qubit gates (length drawn from ``chain_length``) on one of
    their qubits."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    with_chain = set(rng.sample(range(num_two_qubit), round(chain_fraction * num_two_qubit)))
    gates = []
    for i in range(num_two_qubit):
        a, b = rng.sample(range(n), 2)
        gates.append(cx(a, b))
        if i in with_chain:
            q = rng.choice((a, b))
            gates += [random_single(rng, q) for _ in range(rng.randint(*chain_length))]
    return Circuit(n, gates)


def _random_matching(graph: ArchGraph, pairs: int, rng: random.Random, attempts: int = 50) -> list[tuple[int, int]]:
    best: list[tuple[int, int]] = []
    for _ in range(attempts):
        edges = list(graph.edges)
        rng.shuffle(edges)
        used: set[int] = set()
        chosen = []
        for a, b in edges:
            if a in used or b in used:
                continue
            chosen.append((a, b) if rng.random() < 0.5 else (b, a))
            used.update((a, b))
            if len(chosen) == pairs:
                return chosen
        if len(chosen) > len(best):
            best = chosen
    raise GenerationError(f"could not find {pairs} disjoint edges on {graph!r} (best {len(best)})")


def generate_queko(graph: ArchGraph, target_depth: int, two_qubit_density: float,
                   seed: int | random.Random) -> tuple[Circuit, Mapping]:
    """Circuit of exactly ``target_depth`` layers with a zero-SWAP planted mapping.

    Each layer is a random matching of graph edges covering about
    ``two_qubit_density`` of the vertices (CX gates); every other vertex gets
    an X gate. Vertices are then relabelled by a random bijection, returned as
    the planted mapping (logical -> physical).
    """
    if target_depth < 1:
        raise GenerationError("target depth must be at least 1")
    if not 0 < two_qubit_density <= 1:
        raise GenerationError(f"two-qubit density {two_qubit_density} outside (0, 1]")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = graph.n
    pairs = max(1, round(two_qubit_density * n / 2))
    if 2 * pairs > n:
        raise GenerationError(f"density {two_qubit_density} needs {pairs} pairs on {n} vertices")
    physical: list[Gate] = []
    for _ in range(target_depth):
        matching = _random_matching(graph, pairs, rng)
        busy = {v for e in matching for v in e}
        physical += [cx(a, b) for a, b in matching]
        physical += [single("x", v) for v in range(n) if v not in busy]
    planted = rng.sample(range(n), n)  # logical -> physical
    inv = [0] * n
    for q, v in enumerate(planted):
        inv[v] = q
    gates = [g.on(*(inv[v] for v in g.qubits)) for g in physical]
    return Circuit(n, gates), Mapping(planted, n)
