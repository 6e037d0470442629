"""
Repeat-based benchmarking: shared layouts, best-of-k depths and geomean ratios.

For circuit ``c`` and repeat ``r`` the run seed is ``base_seed + r``; one
initial mapping is drawn per (c, r) and fed to every strategy, so strategies
differ only in routing. Prefixes of the seed list are nested, which makes
best-of-k non-increasing in k.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Mapping as MappingT, Sequence

from .arch import ArchGraph
from .circuit import Circuit, depth
from .layout import sabre_layout
from .optimize import pipeline
from .router import HeuristicConfig

log = logging.getLogger(__name__)

CSV_COLUMNS = ("circuit", "strategy", "seed", "repeats", "swaps", "depth_in", "depth_out", "ratio", "ms")


@dataclass(frozen=True)
class RunRecord:
    circuit: str
    strategy: str
    seed: int
    repeats: int
    swaps: int
    depth_in: int
    depth_out: int
    ms: float | None = None

    @property
    def ratio(self) -> float:
        return self.depth_out / self.depth_in if self.depth_in else 0.0

    def row(self) -> list[str]:
        ms = "" if self.ms is None else f"{self.ms:.3f}"
        return [self.circuit, self.strategy, str(self.seed), str(self.repeats), str(self.swaps),
                str(self.depth_in), str(self.depth_out), f"{self.ratio:.6f}", ms]


def geomean(values: Iterable[float]) -> float:
    """Geometric mean of the positive entries; non-positive ones are skipped with a warning."""
    vals = list(values)
    pos = [v for v in vals if v > 0]
    if len(pos) != len(vals):
        log.warning("geomean: ignoring %d non-positive value(s)", len(vals) - len(pos))
    if not pos:
        return math.nan
    return math.exp(math.fsum(math.log(v) for v in pos) / len(pos))


def best_of_k(depths: Sequence[int], k: int) -> int:
    if not 1 <= k <= len(depths):
        raise ValueError(f"k={k} outside recorded range 1..{len(depths)}")
    return min(depths[:k])


def delta_k(series: MappingT[str, Sequence[int]], k: int, base: int = 5) -> float:
    """Geomean over circuits of best-of-k depth divided by best-of-``base`` depth."""
    return geomean(best_of_k(d, k) / best_of_k(d, base) for d in series.values())


def lambda_k(series_a: MappingT[str, Sequence[int]], series_b: MappingT[str, Sequence[int]], k: int) -> float:
    """Geomean over shared circuits of best-of-k depth of ``a`` divided by that of ``b``."""
    keys = [c for c in series_a if c in series_b]
    return geomean(best_of_k(series_a[c], k) / best_of_k(series_b[c], k) for c in keys)


@dataclass
class BenchReport:
    records: list[RunRecord]
    repeats: int
    failures: int = 0
    strategies: tuple[str, ...] = field(default=())

    def circuits(self) -> list[str]:
        return sorted({r.circuit for r in self.records})

    def series(self, strategy: str) -> dict[str, list[int]]:
        """Output depths per circuit in seed order."""
        out: dict[str, list[int]] = {}
        for r in self.records:
            if r.strategy == strategy:
                out.setdefault(r.circuit, []).append(r.depth_out)
        return out

    def depth_in(self) -> dict[str, int]:
        return {r.circuit: r.depth_in for r in self.records}

    def best_ratios(self, strategy: str, k: int | None = None) -> dict[str, float]:
        k = k or self.repeats
        d_in = self.depth_in()
        return {c: best_of_k(d, k) / d_in[c] for c, d in self.series(strategy).items()}

    def geomean_ratio(self, strategy: str, k: int | None = None) -> float:
        return geomean(self.best_ratios(strategy, k).values())

    def delta(self, strategy: str, k: int, base: int = 5) -> float:
        return delta_k(self.series(strategy), k, base)

    def lambda_(self, strategy_a: str, strategy_b: str, k: int) -> float:
        return lambda_k(self.series(strategy_a), self.series(strategy_b), k)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            w.writerow(r.row())
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.records:
            d = asdict(r)
            d["ratio"] = round(r.ratio, 6)
            rows.append(d)
        summary = {s: {"geomean_ratio": round(self.geomean_ratio(s), 6)} for s in self.strategies}
        if self.repeats >= 5:
            for s in self.strategies:
                summary[s]["delta"] = {str(k): round(self.delta(s, k), 6) for k in range(5, self.repeats + 1)}
        if len(self.strategies) == 2:
            a, b = self.strategies
            summary[f"{a}/{b}"] = {"lambda": {str(k): round(self.lambda_(a, b, k), 6)
                                              for k in range(1, self.repeats + 1)}}
        doc = {"repeats": self.repeats, "failures": self.failures, "runs": rows, "summary": summary}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _run_one(name: str, circuit: Circuit, graph: ArchGraph, strategies: Sequence[str], seed: int, repeats: int,
             layout_iterations: int, config: HeuristicConfig, cc: bool, timing: bool,
             layout_strategy: str) -> tuple[list[RunRecord], int]:
    try:
        initial = sabre_layout(circuit, graph, layout_strategy, layout_iterations, seed, config)
    except Exception:
        log.exception("layout failed for %s seed %d", name, seed)
        return [], len(strategies)
    cfg = replace(config, seed=seed)
    d_in = depth(circuit)
    out, failed = [], 0
    for s in strategies:
        t0 = time.monotonic()
        try:
            res = pipeline(circuit, graph, initial, s, cc, cfg)
        except Exception:
            log.exception("routing failed for %s / %s seed %d", name, s, seed)
            failed += 1
            continue
        ms = (time.monotonic() - t0) * 1000 if timing else None
        out.append(RunRecord(name, s, seed, repeats, res.swap_count, d_in, res.depth_out, ms))
    return out, failed


def run_suite(circuits: MappingT[str, Circuit] | Sequence[tuple[str, Circuit]], graph: ArchGraph,
              strategies: Sequence[str] = ("sabre", "sqgm"), repeats: int = 5, seed: int = 0,
              layout_iterations: int = 3, config: HeuristicConfig | None = None, cc: bool = False,
              workers: int = 1, timing: bool = False, layout_strategy: str = "sabre") -> BenchReport:
    """Route every circuit ``repeats`` times with each strategy.

    Records come back sorted by (circuit, strategy, seed) whatever the worker
    count. Failed runs are logged, counted and left out of the aggregates.
    """
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    items = list(circuits.items()) if hasattr(circuits, "items") else list(circuits)
    config = config or HeuristicConfig()
    jobs = [(name, c, graph, tuple(strategies), seed + r, repeats, layout_iterations, config, cc, timing,
             layout_strategy) for name, c in items for r in range(repeats)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_one, *zip(*jobs)))
    else:
        results = [_run_one(*j) for j in jobs]
    records = [rec for recs, _ in results for rec in recs]
    failures = sum(f for _, f in results)
    records.sort(key=lambda r: (r.circuit, r.strategy, r.seed))
    return BenchReport(records, repeats, failures, tuple(strategies))
