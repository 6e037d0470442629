"""Device connectivity graphs and hop-count distance matrices."""
from __future__ import annotations

import json
import re
from collections import deque
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ArchitectureError, ConnectivityError, UnknownArchitectureError

Edge = tuple[int, int]


class ArchGraph:
    """Undirected, connected coupling graph with all-pairs BFS distances."""

    def __init__(self, n: int, edges: Iterable[Iterable[int]], name: str = ""):
        self.n = int(n)
        self.name = name
        es: set[Edge] = set()
        for e in edges:
            a, b = (int(x) for x in e)
            if a == b:
                raise ArchitectureError(f"self-loop on vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ArchitectureError(f"edge ({a},{b}) outside 0..{self.n - 1}")
            es.add((min(a, b), max(a, b)))
        self.edges: tuple[Edge, ...] = tuple(sorted(es))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        self.neighbors: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in adj)
        self._edge_set = es
        self.dist = self._bfs_all()
        self.dist.setflags(write=False)

    def _bfs_all(self) -> np.ndarray:
        n = self.n
        dist = np.full((n, n), -1, dtype=np.int64)
        for s in range(n):
            row = dist[s]
            row[s] = 0
            todo = deque([s])
            while todo:
                u = todo.popleft()
                for w in self.neighbors[u]:
                    if row[w] < 0:
                        row[w] = row[u] + 1
                        todo.append(w)
        if n and (dist < 0).any():
            raise ConnectivityError(self._components())
        return dist

    def _components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp, todo = [], [s]
            seen.add(s)
            while todo:
                u = todo.pop()
                comp.append(u)
                for w in self.neighbors[u]:
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            comps.append(sorted(comp))
        return comps

    @cached_property
    def dist_rows(self) -> list[list[int]]:
        """Distances as nested lists (faster scalar indexing in the routers)."""
        return self.dist.tolist()

    def is_edge(self, a: int, b: int) -> bool:
        return (a, b) in self._edge_set or (b, a) in self._edge_set

    def incident_edges(self, v: int) -> list[Edge]:
        return [(min(v, w), max(v, w)) for w in self.neighbors[v]]

    def shortest_path(self, a: int, b: int) -> list[int]:
        """One shortest vertex path a..b, smallest-index neighbour first."""
        path = [a]
        d = self.dist_rows
        while path[-1] != b:
            u = path[-1]
            path.append(next(w for w in self.neighbors[u] if d[w][b] == d[u][b] - 1))
        return path

    def without_vertex(self, v: int, name: str = "") -> ArchGraph:
        """Drop ``v`` and its incident edges; later vertices shift down by one."""
        relabel = lambda x: x - (x > v)
        edges = [(relabel(a), relabel(b)) for a, b in self.edges if v not in (a, b)]
        return ArchGraph(self.n - 1, edges, name)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def __eq__(self, other):
        return isinstance(other, ArchGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"ArchGraph({label}{self.n} vertices, {len(self.edges)} edges)"


def from_edges(n: int, edges: Iterable[Iterable[int]], name: str = "") -> ArchGraph:
    return ArchGraph(n, edges, name)


def line(k: int) -> ArchGraph:
    return ArchGraph(k, [(i, i + 1) for i in range(k - 1)], f"line-{k}")


def grid(rows: int, cols: int) -> ArchGraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return ArchGraph(rows * cols, edges, f"grid-{rows}x{cols}")


OURENSE_EDGES = ((0, 1), (0, 2), (0, 3), (3, 4))


def _load(name: str) -> dict:
    text = resources.files("qroute.data").joinpath(f"{name}.json").read_text()
    return json.loads(text)


BUILTIN_NAMES = ("ourense", "tokyo20", "rochester53", "sycamore54", "sycamore53", "line-k", "grid-RxC")


@lru_cache(maxsize=None)
def builtin(name: str) -> ArchGraph:
    key = name.strip().lower()
    if key == "ourense":
        return ArchGraph(5, OURENSE_EDGES, "ourense")
    if key in ("tokyo20", "rochester53", "sycamore54"):
        d = _load(key)
        return ArchGraph(d["n"], d["edges"], key)
    if key == "sycamore53":
        d = _load("sycamore54")
        return builtin("sycamore54").without_vertex(d["bad_qubit"], "sycamore53")
    if m := re.fullmatch(r"line-(\d+)", key):
        return line(int(m[1]))
    if m := re.fullmatch(r"grid-(\d+)x(\d+)", key):
        return grid(int(m[1]), int(m[2]))
    raise UnknownArchitectureError(f"unknown architecture {name!r}; valid names: {', '.join(BUILTIN_NAMES)}")


def load_graph(spec: str | Path) -> ArchGraph:
    """Builtin name, or path to ``{"n": int, "edges": [[a, b], ...]}``."""
    p = Path(spec)
    if p.suffix == ".json" or p.is_file():
        d = json.loads(p.read_text())
        return ArchGraph(d["n"], d["edges"], p.stem)
    return builtin(str(spec))
