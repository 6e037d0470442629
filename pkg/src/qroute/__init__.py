"""Qubit routing onto device coupling graphs, with independent checks of the routed output."""
from .arch import ArchGraph, builtin, grid, line, load_graph
from .bench import BenchReport, RunRecord, delta_k, geomean, lambda_k, run_suite
from .circuit import Circuit, Gate, decompose_swaps, depth, layers
from .generators import generate_queko, running_example
from .layout import sabre_layout
from .mapping import Mapping, apply_swap, random_mapping
from .optimize import cancel_commutative, pipeline
from .progress import route_sqgm
from .qasm import emit_qasm, parse_qasm
from .router import HeuristicConfig, RouteResult, route
from .verify import verify_routing

__all__ = [
    "ArchGraph", "builtin", "grid", "line", "load_graph",
    "BenchReport", "RunRecord", "delta_k", "geomean", "lambda_k", "run_suite",
    "Circuit", "Gate", "decompose_swaps", "depth", "layers",
    "generate_queko", "running_example", "sabre_layout",
    "Mapping", "apply_swap", "random_mapping",
    "cancel_commutative", "pipeline", "route_sqgm", "emit_qasm", "parse_qasm",
    "HeuristicConfig", "RouteResult", "route", "verify_routing",
]
