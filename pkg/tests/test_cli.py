import json

import numpy as np
import pytest

from ctrlu.circuit import Circuit, Cnot, evaluate, matrix_to_json, to_json
from ctrlu.cli import main
from ctrlu.linalg import H, T
from ctrlu.qasm import from_qasm3
from ctrlu.verify import controlled


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    good = tmp_path / "t.json"
    good.write_text(json.dumps({"u": matrix_to_json(T)}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"u": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    cnot = tmp_path / "cnot.json"
    cnot.write_text(to_json(Circuit([Cnot(1, 0)])))
    return {"good": good, "bad": bad, "broken": broken, "cnot": cnot, "dir": tmp_path}


def test_classify(capsys, files):
    code, out, _ = run(["classify", "--name", "T"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["tag"] == "i" and d["m"] == 5
    code, out, _ = run(["classify", "--matrix", str(files["good"])], capsys)
    assert code == 0 and json.loads(out)["tag"] == "i"
    code, out, _ = run(["classify", "--name", "X"], capsys)
    assert json.loads(out)["m"] == 1


def test_input_errors_exit_2(capsys, files):
    for argv in (["classify", "--matrix", str(files["bad"])],
                 ["classify", "--matrix", str(files["broken"])],
                 ["classify", "--matrix", str(files["dir"] / "missing.json")],
                 ["classify", "--name", "T", "--eps", "0.5"],
                 ["classify"],
                 ["verify", "--name", "X", "--circuit", str(files["broken"])]):
        code, out, err = run(argv, capsys)
        assert code == 2, argv
        assert err


def test_synth_outputs(capsys, files):
    qasm = files["dir"] / "h.qasm"
    code, out, _ = run(["synth", "--name", "H", "--qasm", str(qasm), "--ascii"], capsys)
    assert code == 0
    text = out[:out.index("\n")] if out.startswith("{") else out
    d = json.loads(text)
    assert d["m"] == 3 and d["verified"]
    back = from_qasm3(qasm.read_text())
    assert np.max(np.abs(evaluate(back) - controlled(H))) <= 1e-8
    code, out, _ = run(["synth", "--rz", "0.7"], capsys)
    assert code == 0 and json.loads(out)["m"] == 4
    code, out, _ = run(["synth", "--name", "I", "--pretty"], capsys)
    assert code == 0 and json.loads(out)["circuit"]["gates"] == []


def test_verify_exit_codes(capsys, files):
    code, out, _ = run(["verify", "--name", "X", "--circuit", str(files["cnot"])], capsys)
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(["verify", "--name", "Z", "--circuit", str(files["cnot"])], capsys)
    assert code == 1 and json.loads(out)["distance"] == pytest.approx(2)


def test_out_file(capsys, files):
    dest = files["dir"] / "report.json"
    code, out, _ = run(["classify", "--phase", "0.3", "--out", str(dest)], capsys)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["tag"] == "i"


def test_lemmas(capsys):
    code, out, _ = run(["lemmas", "--trials", "500", "--seed", "3"], capsys)
    assert code == 0 and json.loads(out)["failures"] == 0


def test_falsify_small(capsys):
    code, out, _ = run(["falsify", "--name", "X", "--gates", "1", "--restarts", "10"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "realization found" and d["k"] == 1
    code, out, _ = run(["falsify", "--name", "Z", "--gates", "1", "--restarts", "20"], capsys)
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "no realization found"
    assert d["threshold"] == 0.01
    code, _, _ = run(["falsify", "--name", "X", "--gates", "9"], capsys)
    assert code == 2
