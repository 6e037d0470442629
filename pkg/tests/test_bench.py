import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from qroute.arch import builtin
from qroute.bench import CSV_COLUMNS, RunRecord, best_of_k, delta_k, geomean, lambda_k, run_suite
from qroute.circuit import Circuit, cx
from qroute.generators import random_circuit


def test_geomean():
    assert geomean([2, 8]) == pytest.approx(4)
    assert geomean([0.5, 2.0]) == pytest.approx(1)
    assert geomean([3, 0, 3]) == pytest.approx(3)
    assert math.isnan(geomean([]))


def test_ratio_and_row():
    r = RunRecord("c", "sqgm", 3, 5, 2, 10, 15)
    assert r.ratio == 1.5
    assert r.row() == ["c", "sqgm", "3", "5", "2", "10", "15", "1.500000", ""]


def test_delta_and_lambda():
    series = {"a": [10, 9, 9, 8, 8, 8, 7], "b": [5, 5, 5, 5, 5, 5, 5]}
    assert delta_k(series, 5) == 1.0
    assert delta_k(series, 7) == pytest.approx(math.sqrt(7 / 8))
    assert lambda_k({"a": [4], "b": [2]}, {"a": [8], "b": [1]}, 1) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        best_of_k([1, 2], 3)


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.text(min_size=1, max_size=3), st.lists(st.integers(1, 50), min_size=50, max_size=50),
                       min_size=1, max_size=5))
def test_delta_non_increasing_over_nested_prefixes(series):
    values = [delta_k(series, k) for k in (5, 10, 20, 50)]
    assert values[0] == pytest.approx(1.0)
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_single_run_report():
    rep = run_suite({"c": Circuit(3, [cx(0, 1), cx(1, 2), cx(0, 2)])}, builtin("line-3"), ["sabre"], repeats=1)
    assert len(rep.records) == 1
    rec = rep.records[0]
    assert rep.geomean_ratio("sabre") == pytest.approx(rec.depth_out / rec.depth_in)


def test_shared_layouts_and_ordering():
    circuits = [("z", random_circuit(5, 30, 1)), ("a", random_circuit(5, 30, 2))]
    rep = run_suite(circuits, builtin("grid-2x3"), ["sqgm", "sabre"], repeats=3, seed=10)
    keys = [(r.circuit, r.strategy, r.seed) for r in rep.records]
    assert keys == sorted(keys)
    assert {r.seed for r in rep.records} == {10, 11, 12}
    assert rep.failures == 0


def test_parallel_matches_serial():
    circuits = {f"c{i}": random_circuit(5, 30, i) for i in range(3)}
    a = run_suite(circuits, builtin("ourense"), repeats=2)
    b = run_suite(circuits, builtin("ourense"), repeats=2, workers=2)
    assert a.to_csv() == b.to_csv()


def test_csv_and_json_reports():
    rep = run_suite({"c": random_circuit(4, 20, 0)}, builtin("ourense"), repeats=5)
    lines = rep.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 11
    doc = json.loads(rep.to_json())
    assert doc["summary"]["sabre"]["delta"]["5"] == 1.0
    assert set(doc["summary"]) == {"sabre", "sqgm", "sabre/sqgm"}
    assert len(doc["runs"]) == 10


def test_timing_fills_ms():
    rep = run_suite({"c": random_circuit(4, 20, 0)}, builtin("ourense"), ["sabre"], repeats=1, timing=True)
    assert rep.records[0].ms is not None and rep.records[0].ms >= 0


def test_failures_are_counted(caplog):
    rep = run_suite({"c": random_circuit(4, 20, 0)}, builtin("ourense"), ["sabre", "nope"], repeats=2)
    assert rep.failures == 2
    assert {r.strategy for r in rep.records} == {"sabre"}
    assert "routing failed" in caplog.text


def test_rejects_zero_repeats():
    with pytest.raises(ValueError):
        run_suite({}, builtin("ourense"), repeats=0)
