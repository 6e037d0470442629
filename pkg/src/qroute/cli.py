"""Command line: route, bench, verify, gen.

Exit codes: 0 ok, 1 verification failed, 2 bad usage or input, 3 internal invariant violated.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .arch import load_graph
from .bench import run_suite
from .circuit import Circuit, depth, recompose_swaps
from .errors import ArchitectureError, CapacityError, CircuitError, GenerationError, QasmError, \
    RoutingInvariantError, UnboundGateError, UnknownArchitectureError
from .generators import generate_queko
from .layout import sabre_layout
from .mapping import load_mapping, save_mapping
from .optimize import pipeline
from .qasm import load_qasm, save_qasm
from .router import MODES, HeuristicConfig
from .verify import MAX_UNITARY_QUBITS, check_connectivity, check_structural, check_unitary

log = logging.getLogger("qroute")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3

_INPUT_ERRORS = (QasmError, ArchitectureError, UnknownArchitectureError, CapacityError, CircuitError,
                 GenerationError, UnboundGateError, OSError, ValueError)


def _config(args) -> HeuristicConfig:
    return HeuristicConfig(args.heuristic, args.w, args.delta, args.ext_size, seed=args.seed)


def _add_heuristic(p: argparse.ArgumentParser) -> None:
    p.add_argument("--heuristic", choices=MODES, default="decay")
    p.add_argument("--w", type=float, default=0.5, help="extended-set weight")
    p.add_argument("--delta", type=float, default=0.001, help="decay increment")
    p.add_argument("--ext-size", type=int, default=20, help="extended-set size")
    p.add_argument("--layout-iters", type=int, default=3, help="forward-backward layout rounds")


def cmd_route(args) -> int:
    graph = load_graph(args.arch)
    circuit = load_qasm(args.circuit)
    if args.repeats < 1:
        raise ValueError("--repeats must be at least 1")
    base = _config(args)
    best = None
    for r in range(args.repeats):
        seed = args.seed + r
        cfg = HeuristicConfig(base.mode, base.w, base.delta, base.extended_set_size, seed=seed)
        initial = sabre_layout(circuit, graph, args.strategy, args.layout_iters, seed, cfg)
        res = pipeline(circuit, graph, initial, args.strategy, args.cc, cfg)
        if best is None or res.depth_out < best[1].depth_out:
            best = (initial, res)
    initial, res = best
    save_qasm(res.circuit, args.output, graph.n)
    if args.mapping_out:
        save_mapping(initial, args.mapping_out)
    if args.final_mapping_out:
        save_mapping(res.routed.final_mapping, args.final_mapping_out)
    print(f"depth {res.depth_in} -> {res.depth_out}, swaps {res.swap_count}")
    return EXIT_OK


def cmd_bench(args) -> int:
    graph = load_graph(args.arch)
    files = sorted(Path(args.suite).glob("*.qasm"))
    if not files:
        raise ValueError(f"no .qasm files in {args.suite}")
    circuits = [(f.stem, load_qasm(f)) for f in files]
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    report = run_suite(circuits, graph, strategies, args.repeats, args.seed, args.layout_iters, _config(args),
                       args.cc, args.workers, args.timing)
    Path(args.csv).write_text(report.to_csv())
    if args.json:
        Path(args.json).write_text(report.to_json())
    for s in strategies:
        print(f"{s}: geomean best-of-{args.repeats} depth ratio {report.geomean_ratio(s):.4f}")
    if report.failures:
        print(f"{report.failures} run(s) failed", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    graph = load_graph(args.arch)
    source = load_qasm(args.source)
    routed = load_qasm(args.routed)
    initial = load_mapping(args.mapping, graph.n)
    if routed.num_qubits > graph.n:
        raise ValueError(f"routed circuit has {routed.num_qubits} qubits, graph has {graph.n}")
    if args.skip_structural and args.unitary and not args.final_mapping:
        raise ValueError("--skip-structural with --unitary needs --final-mapping")
    if args.unitary and graph.n > MAX_UNITARY_QUBITS:
        raise ValueError(f"unitary check supports at most {MAX_UNITARY_QUBITS} vertices")
    ok = True
    conn = check_connectivity(routed, graph)
    if not conn.ok:
        print(f"connectivity: FAIL at gate {conn.witness}: {conn.message}")
        ok = False
    final = load_mapping(args.final_mapping, graph.n) if args.final_mapping else None
    if not args.skip_structural:
        struct = check_structural(source, recompose_swaps(routed), initial)
        if struct.ok:
            print("structural: ok")
        else:
            print(f"structural: FAIL at gate {struct.witness}: {struct.message}")
            ok = False
        final = final or struct.final_mapping
    if args.unitary:
        if final is None:
            print("unitary: skipped, final mapping unknown")
        else:
            u_ok, dev = check_unitary(source, Circuit(graph.n, routed.gates), initial, final)
            print(f"unitary: {'ok' if u_ok else 'FAIL'} (max deviation {dev:.3g})")
            ok = ok and u_ok
    print("verified" if ok else "verification failed")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gen(args) -> int:
    graph = load_graph(args.arch)
    circuit, planted = generate_queko(graph, args.depth, args.density, args.seed)
    save_qasm(circuit, args.output)
    if args.mapping_out:
        save_mapping(planted, args.mapping_out)
    print(f"{len(circuit)} gates, depth {depth(circuit)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qroute", description="Qubit routing with depth-aware SWAP insertion.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("route", help="route a QASM circuit onto a device graph")
    p.add_argument("--circuit", required=True)
    p.add_argument("--arch", required=True, help="builtin name or graph JSON")
    p.add_argument("--strategy", choices=("sabre", "sqgm"), default="sqgm")
    p.add_argument("--cc", action="store_true", help="run commutative cancellation afterwards")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=1)
    _add_heuristic(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--mapping-out", help="write the initial mapping (JSON array)")
    p.add_argument("--final-mapping-out", help="write the final mapping (JSON array)")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("bench", help="benchmark strategies over a directory of QASM files")
    p.add_argument("--suite", required=True)
    p.add_argument("--arch", required=True)
    p.add_argument("--strategies", default="sabre,sqgm")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cc", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill the ms column (makes output non-reproducible)")
    _add_heuristic(p)
    p.add_argument("--csv", required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check a routed circuit against its source")
    p.add_argument("--source", required=True)
    p.add_argument("--routed", required=True)
    p.add_argument("--arch", required=True)
    p.add_argument("--mapping", required=True, help="initial mapping JSON")
    p.add_argument("--final-mapping", help="final mapping JSON (needed with --skip-structural)")
    p.add_argument("--unitary", action="store_true", help="also compare statevectors (small devices)")
    p.add_argument("--skip-structural", action="store_true",
                   help="skip gate-order replay, e.g. after cancellation removed gates")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a benchmark with a known zero-SWAP mapping")
    p.add_argument("--arch", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--mapping-out")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except RoutingInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except _INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
