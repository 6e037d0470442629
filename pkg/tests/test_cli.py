import json
import subprocess
import sys

import pytest

from qroute.cli import main
from qroute.circuit import Circuit, cx, single
from qroute.generators import random_circuit
from qroute.qasm import load_qasm, save_qasm


@pytest.fixture
def source(tmp_path):
    p = tmp_path / "c.qasm"
    save_qasm(random_circuit(5, 40, 1), p)
    return p


def test_route_then_verify(tmp_path, source, capsys):
    out, m, f = tmp_path / "o.qasm", tmp_path / "m.json", tmp_path / "f.json"
    assert main(["route", "--circuit", str(source), "--arch", "ourense", "--strategy", "sqgm", "--seed", "3",
                 "--repeats", "2", "-o", str(out), "--mapping-out", str(m), "--final-mapping-out", str(f)]) == 0
    assert load_qasm(out).num_qubits == 5
    assert main(["verify", "--source", str(source), "--routed", str(out), "--arch", "ourense",
                 "--mapping", str(m), "--unitary"]) == 0
    assert "verified" in capsys.readouterr().out


def test_verify_after_cancellation_uses_final_mapping(tmp_path, source):
    out, m, f = tmp_path / "o.qasm", tmp_path / "m.json", tmp_path / "f.json"
    main(["route", "--circuit", str(source), "--arch", "ourense", "--cc", "-o", str(out),
          "--mapping-out", str(m), "--final-mapping-out", str(f)])
    assert main(["verify", "--source", str(source), "--routed", str(out), "--arch", "ourense", "--mapping", str(m),
                 "--final-mapping", str(f), "--skip-structural", "--unitary"]) == 0


def test_verify_failure_exit_code(tmp_path, capsys):
    src, routed, m = tmp_path / "s.qasm", tmp_path / "r.qasm", tmp_path / "m.json"
    save_qasm(Circuit(2, [cx(0, 1)]), src)
    save_qasm(Circuit(5, [cx(1, 2)]), routed)
    m.write_text("[1, 2]")
    assert main(["verify", "--source", str(src), "--routed", str(routed), "--arch", "ourense",
                 "--mapping", str(m)]) == 1
    assert "connectivity: FAIL at gate 0" in capsys.readouterr().out


def test_gen_and_bench(tmp_path):
    suite = tmp_path / "suite"
    suite.mkdir()
    for s in range(2):
        assert main(["gen", "--arch", "ourense", "--depth", "5", "--density", "0.8", "--seed", str(s),
                     "-o", str(suite / f"g{s}.qasm"), "--mapping-out", str(tmp_path / f"g{s}.json")]) == 0
    assert json.loads((tmp_path / "g0.json").read_text())
    assert main(["bench", "--suite", str(suite), "--arch", "ourense", "--strategies", "sabre,sqgm",
                 "--repeats", "2", "--seed", "4", "--csv", str(tmp_path / "r.csv"),
                 "--json", str(tmp_path / "r.json")]) == 0
    assert len((tmp_path / "r.csv").read_text().splitlines()) == 1 + 2 * 2 * 2


@pytest.mark.parametrize("argv", [
    ["route", "--circuit", "missing.qasm", "--arch", "ourense", "-o", "x.qasm"],
    ["gen", "--arch", "nowhere", "--depth", "3", "-o", "x.qasm"],
    ["gen", "--arch", "ourense", "--depth", "0", "-o", "x.qasm"],
])
def test_input_errors_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2


def test_bad_qasm_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.qasm"
    p.write_text("OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n")
    assert main(["route", "--circuit", str(p), "--arch", "ourense", "-o", str(tmp_path / "o.qasm")]) == 2
    assert "line 3, column 1" in capsys.readouterr().err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["route"])
    assert e.value.code == 2


def test_invariant_violation_exit_3(tmp_path, monkeypatch, source):
    from qroute import cli
    from qroute.errors import RoutingInvariantError

    def boom(*a, **k):
        raise RoutingInvariantError("forced")
    monkeypatch.setattr(cli, "pipeline", boom)
    assert main(["route", "--circuit", str(source), "--arch", "ourense", "-o", str(tmp_path / "o.qasm")]) == 3


def test_module_entry_point(tmp_path):
    p = tmp_path / "c.qasm"
    save_qasm(Circuit(2, [single("h", 0), cx(0, 1)]), p)
    r = subprocess.run([sys.executable, "-m", "qroute", "route", "--circuit", str(p), "--arch", "line-3",
                        "-o", str(tmp_path / "o.qasm")], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
