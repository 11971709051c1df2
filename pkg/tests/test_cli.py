import io
import json

import numpy as np
import pytest

from tensorgap import cli, gpt

ID2_L1_L2 = json.dumps({"x_space": {"kind": "l1", "dim": 2}, "y_space": {"kind": "l2", "dim": 2},
                        "coeffs": [[1, 0], [0, 1]]})


def chsh_json():
    c = gpt.compose(gpt.classical(2), gpt.classical(2), "min")
    qs = [np.kron(np.eye(2)[x], np.eye(2)[y]) for x in range(2) for y in range(2)]
    return json.dumps({"game": gpt.XorGame(c, qs, [0.25] * 4, [0, 0, 0, 1]).to_json()})


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), buf)
    return code, buf.getvalue()


def test_norm_command():
    code, out = call("norm", "--inline", '{"space": {"kind": "l1", "dim": 2}, "vector": [1, -2]}')
    assert code == 0 and json.loads(out)["value"] == 3
    code, out = call("norm", "--op", "dual", "--inline", '{"space": {"kind": "l1", "dim": 2}, "vector": [1, -2]}')
    assert json.loads(out)["value"] == 2


def test_norm_gpt():
    obj = {"gpt": gpt.classical(2).to_json(), "vector": [1, -2]}
    code, out = call("norm", "--inline", json.dumps(obj))
    assert code == 0 and json.loads(out)["value"] == pytest.approx(3)


def test_tensor_ratio(tmp_path):
    p = tmp_path / "id2.json"
    p.write_text(ID2_L1_L2)
    code, out = call("tensor", "--op", "ratio", "--in", str(p))
    assert code == 0
    assert json.loads(out)["value"] == 1.41421356237
    code, out = call("tensor", "--op", "ratio", "--in", str(p), "--format", "text")
    assert "1.41421356237" in out


def test_quantum_tensor_interval():
    obj = {"n": 2, "m": 2, "coeffs": np.eye(4).tolist()}
    code, out = call("tensor", "--op", "eps", "--inline", json.dumps(obj))
    d = json.loads(out)
    assert code == 0 and d["eps"]["lower"] <= d["eps"]["upper"]


def test_game_chsh():
    code, out = call("game", "--inline", chsh_json())
    d = json.loads(out)
    assert code == 0
    assert d["local"] == 0.5
    assert d["global"] == 1.0


def test_witness_chsh19_default():
    code, out = call("witness", "--op", "chsh19")
    d = json.loads(out)
    assert code == 0 and d["value"] == pytest.approx(19 / 18)


def test_witness_projection_constant():
    code, out = call("witness", "--op", "projection-constant", "--inline", '{"n": 4}')
    assert json.loads(out)["certificate"]["exact"] == "8/3"


def test_mc_csv():
    code, out = call("mc", "--op", "opnorm", "--inline", '{"k": [3]}', "--samples", "40", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "quantity,k,samples,seed,estimate,stderr,target,pass"
    assert len(lines) == 2


def test_seed_determinism():
    a = call("rho-search", "--inline", '{"x_space": {"kind": "l1", "dim": 2}, "y_space": {"kind": "l1", "dim": 2}}',
             "--seed", "5", "--samples", "30")
    b = call("rho-search", "--inline", '{"x_space": {"kind": "l1", "dim": 2}, "y_space": {"kind": "l1", "dim": 2}}',
             "--seed", "5", "--samples", "30")
    assert a == b and a[0] == 0


def test_verify_exit_zero():
    code, out = call("verify", "--suite", "paper-constants", "--format", "text")
    assert code == 0, out
    assert "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ("tensor", "--inline", "{not json"),
    ("tensor", "--inline", '{"x_space": {"kind": "l7", "dim": 2}, "y_space": {"kind": "l1", "dim": 2}, "coeffs": [[1]]}'),
    ("tensor",),
    ("norm", "--inline", '{"space": {"kind": "l1", "dim": 2}, "vector": [1, 2, 3]}'),
    ("witness", "--op", "nope"),
    ("verify", "--suite", "nope"),
    ("mc", "--seed", "-1"),
    ("frobnicate",),
])
def test_invalid_input_exit_2(argv):
    assert call(*argv)[0] == 2


def test_budget_exit_3():
    z = {"x_space": {"kind": "linf", "dim": 30}, "y_space": {"kind": "linf", "dim": 2},
         "coeffs": np.ones((30, 2)).tolist()}
    assert call("tensor", "--op", "pi", "--inline", json.dumps(z))[0] == 3
    q = {"n": 9, "m": 2, "coeffs": np.zeros((81, 4)).tolist()}
    assert call("tensor", "--inline", json.dumps(q))[0] == 3


def test_json_round_trip():
    code, out = call("tensor", "--op", "all", "--inline", ID2_L1_L2)
    d = json.loads(out)
    code2, out2 = call("tensor", "--op", "all", "--inline", json.dumps(d["tensor"]))
    assert out == out2
