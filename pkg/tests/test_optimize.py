import numpy as np
from hypothesis import given, settings, strategies as st

from qroute.arch import builtin
from qroute.circuit import Circuit, Gate, cx, cz, depth, single
from qroute.generators import EXAMPLE_MAPPING, random_circuit, running_example
from qroute.mapping import Mapping, random_mapping
from qroute.optimize import MAX_SWEEPS, cancel_commutative, cancels, cc_sweeps, commutes, pipeline

from conftest import dense_unitary
from strategies import circuits, gates

S2 = 1 / np.sqrt(2)
ONE_QUBIT = {
    "h": np.array([[S2, S2], [S2, -S2]]),
    "x": np.array([[0, 1], [1, 0]]),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1, -1]),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "t": np.diag([1, np.exp(1j * np.pi / 4)]),
    "tdg": np.diag([1, np.exp(-1j * np.pi / 4)]),
    "sx": np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2,
}


def unitary(c):
    return dense_unitary(c, lambda g: ONE_QUBIT[g.name])


def test_cancel_rules():
    assert cancels(cx(0, 1), cx(0, 1))
    assert not cancels(cx(0, 1), cx(1, 0))
    assert cancels(cz(0, 1), cz(1, 0))
    assert cancels(single("h", 2), single("h", 2))
    assert not cancels(single("t", 2), single("t", 2))
    assert not cancels(single("rx", 0, "pi"), single("rx", 0, "pi"))


def test_commutation_rules():
    assert commutes(cx(0, 1), cx(0, 2))        # shared control
    assert commutes(cx(0, 2), cx(1, 2))        # shared target
    assert not commutes(cx(0, 1), cx(1, 2))    # target meets control
    assert commutes(single("t", 0), cx(0, 1))
    assert not commutes(single("t", 1), cx(0, 1))
    assert commutes(single("x", 1), cx(0, 1))
    assert commutes(cz(0, 1), cx(0, 2))
    assert not commutes(single("h", 0), cx(0, 1))
    assert not commutes(single("W", 0), single("W", 0))


def test_cancels_across_commuting_gates():
    c = Circuit(3, [cx(0, 1), single("t", 0), cx(0, 2), single("x", 1), cx(0, 1)])
    assert cancel_commutative(c).gates == (single("t", 0), cx(0, 2), single("x", 1))


def test_blocked_by_non_commuting_gate():
    c = Circuit(2, [cx(0, 1), single("h", 1), cx(0, 1)])
    assert cancel_commutative(c) == c


def test_cascading_cancellation_needs_sweeps():
    c = Circuit(2, [cx(0, 1), single("h", 1), single("h", 1), cx(0, 1)])
    assert len(cancel_commutative(c)) == 0
    assert cc_sweeps(c) <= 3


def test_example_cancellation_eleven_to_nine():
    g = builtin("ourense")
    res = pipeline(running_example(), g, Mapping(EXAMPLE_MAPPING, 5), "sqgm", cc=False,
                   tie_break=lambda c: (0, 3))
    assert res.depth_out == 11
    res = pipeline(running_example(), g, Mapping(EXAMPLE_MAPPING, 5), "sqgm", cc=True,
                   tie_break=lambda c: (0, 3))
    assert (res.depth_routed, res.depth_out) == (11, 9)
    assert res.gates_routed - res.gates_out == 2


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_commutes_is_sound(data):
    g = data.draw(gates(3, kinds=("cx", "cz"), barriers=False))
    h = data.draw(gates(3, kinds=("cx", "cz"), barriers=False))
    if commutes(g, h):
        a, b = unitary(Circuit(3, [g, h])), unitary(Circuit(3, [h, g]))
        assert np.allclose(a, b)


@settings(max_examples=150, deadline=None)
@given(circuits(max_qubits=4, max_gates=30, kinds=("cx", "cz"), barriers=False))
def test_cancellation_preserves_unitary_and_depth(c):
    out = cancel_commutative(c)
    assert np.allclose(unitary(out), unitary(c))
    assert depth(out) <= depth(c)
    assert len(cancel_commutative(out)) == len(out)  # fixpoint
    assert cc_sweeps(c) <= MAX_SWEEPS


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["sabre", "sqgm"]))
def test_pipeline_cancellation_on_routed_output(seed, strategy):
    g = builtin("grid-3x3")
    c = random_circuit(7, 60, seed)
    res = pipeline(c, g, random_mapping(7, g, seed), strategy, cc=True)
    assert res.depth_out <= res.depth_routed
    assert res.gates_out <= res.gates_routed
    assert res.circuit.count("swap") == 0


def test_barrier_blocks_cancellation():
    c = Circuit(2, [cx(0, 1), Gate("barrier", (0, 1)), cx(0, 1)])
    assert cancel_commutative(c) == c
