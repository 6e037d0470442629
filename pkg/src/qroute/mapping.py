"""Logical-to-physical qubit mappings."""
from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Sequence

from .arch import ArchGraph
from .errors import CapacityError, IllegalSwapError


class Mapping:
    """Injective map tau: logical qubit -> physical vertex, with its partial inverse.

    Mutating methods (``swap``) are used by the routers on private copies;
    ``apply_swap`` is the value-returning form.
    """

    __slots__ = ("tau", "inv")

    def __init__(self, tau: Sequence[int], num_vertices: int):
        self.tau = [int(v) for v in tau]
        self.inv: list[int | None] = [None] * num_vertices
        for q, v in enumerate(self.tau):
            if not 0 <= v < num_vertices:
                raise ValueError(f"logical {q} mapped to vertex {v} outside 0..{num_vertices - 1}")
            if self.inv[v] is not None:
                raise ValueError(f"vertex {v} assigned to logical {self.inv[v]} and {q}")
            self.inv[v] = q

    @property
    def num_logical(self) -> int:
        return len(self.tau)

    @property
    def num_vertices(self) -> int:
        return len(self.inv)

    def __getitem__(self, q: int) -> int:
        return self.tau[q]

    def copy(self) -> Mapping:
        m = Mapping.__new__(Mapping)
        m.tau = list(self.tau)
        m.inv = list(self.inv)
        return m

    def swap(self, v: int, w: int) -> None:
        """Exchange the occupants of vertices ``v`` and ``w`` in place."""
        p, q = self.inv[v], self.inv[w]
        self.inv[v], self.inv[w] = q, p
        if p is not None:
            self.tau[p] = w
        if q is not None:
            self.tau[q] = v

    def is_consistent(self) -> bool:
        if len(set(self.tau)) != len(self.tau):
            return False
        return all(self.inv[v] == q for q, v in enumerate(self.tau)) and \
            sum(x is not None for x in self.inv) == len(self.tau)

    def __eq__(self, other):
        return isinstance(other, Mapping) and self.tau == other.tau and len(self.inv) == len(other.inv)

    def __hash__(self):
        return hash((tuple(self.tau), len(self.inv)))

    def __repr__(self):
        return "Mapping(" + ", ".join(f"q{q}->v{v}" for q, v in enumerate(self.tau)) + ")"

    def to_json(self) -> str:
        return json.dumps(self.tau)


def apply_swap(mapping: Mapping, v: int, w: int, graph: ArchGraph) -> Mapping:
    if not graph.is_edge(v, w):
        raise IllegalSwapError(f"({v},{w}) is not an edge of {graph!r}")
    m = mapping.copy()
    m.swap(v, w)
    return m


def identity_mapping(n_logical: int, graph: ArchGraph) -> Mapping:
    if n_logical > graph.n:
        raise CapacityError(f"{n_logical} logical qubits do not fit on {graph.n} vertices")
    return Mapping(range(n_logical), graph.n)


def random_mapping(n_logical: int, graph: ArchGraph, seed: int | random.Random) -> Mapping:
    if n_logical > graph.n:
        raise CapacityError(f"{n_logical} logical qubits do not fit on {graph.n} vertices")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Mapping(rng.sample(range(graph.n), n_logical), graph.n)


def save_mapping(mapping: Mapping, path: str | Path) -> None:
    Path(path).write_text(mapping.to_json() + "\n")


def load_mapping(path: str | Path, num_vertices: int) -> Mapping:
    return Mapping(json.loads(Path(path).read_text()), num_vertices)
