"""Router registry and forward-backward initial layout search."""
from __future__ import annotations

import random
from typing import Callable

from .arch import ArchGraph
from .circuit import Circuit, reverse, strip_barriers
from .mapping import Mapping, random_mapping
from .progress import route_sqgm
from .router import HeuristicConfig, RouteResult, route

Router = Callable[..., RouteResult]

STRATEGIES: dict[str, Router] = {"sabre": route, "sqgm": route_sqgm}


def get_router(strategy: str | Router) -> Router:
    if callable(strategy):
        return strategy
    try:
        return STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {sorted(STRATEGIES)}") from None


def sabre_layout(circuit: Circuit, graph: ArchGraph, router: str | Router = "sabre", iterations: int = 3,
                 seed: int = 0, config: HeuristicConfig | None = None,
                 initial: Mapping | None = None) -> Mapping:
    """Refine a random start mapping by routing the circuit forwards, then backwards.

    Each pass starts from the previous pass's final mapping; after
    ``iterations`` round trips the current mapping is returned. ``initial``
    replaces the random start.
    """
    route_fn = get_router(router)
    config = config or HeuristicConfig()
    rng = random.Random(seed)
    circuit = strip_barriers(circuit)
    mapping = initial.copy() if initial is not None else random_mapping(circuit.num_qubits, graph, rng)
    backward = reverse(circuit)
    for _ in range(iterations):
        for c in (circuit, backward):
            cfg = HeuristicConfig(config.mode, config.w, config.delta, config.extended_set_size,
                                  config.decay_reset_interval, rng.randrange(2**32))
            mapping = route_fn(c, graph, mapping, cfg).final_mapping
    return mapping
