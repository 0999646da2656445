import json
import math
import subprocess
import sys

import numpy as np
import pytest

from boskernel.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, decode_complex, encode_complex, main


def cplx(z):
    return {"re": complex(z).real, "im": complex(z).imag}


def map_doc(C, A, kind="symplectic", **extra):
    C, A = np.atleast_2d(C), np.atleast_2d(A)
    doc = {"C": [[cplx(z) for z in row] for row in C],
           "A": [[cplx(z) for z in row] for row in A], "kind": kind}
    doc.update(extra)
    return doc


IDENTITY = map_doc([[1]], [[0]])
SQUEEZE = map_doc([[math.cosh(0.3)]], [[math.sinh(0.3)]])
CONJ = map_doc([[0]], [[1]], kind="antisymplectic")


def run(tmp_path, command, doc, *flags):
    src, out = tmp_path / "in.json", tmp_path / "out.json"
    src.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    code = main([command, "--input", str(src), "--output", str(out), *flags])
    return code, json.loads(out.read_text())


def test_complex_codec():
    assert decode_complex(encode_complex(1.5 - 2j)) == 1.5 - 2j
    assert decode_complex(3) == 3


def test_check_identity(tmp_path):
    code, rep = run(tmp_path, "check", IDENTITY)
    assert code == EXIT_OK and rep["ok"]
    assert rep["omega_residual"] == 0 and rep["symmetry_residual"] == 0
    assert rep["Z_g"] == [[{"re": 0.0, "im": 0.0}]]
    assert rep["tolerance"] == 1e-10 and rep["truncation"] == 8


def test_check_squeeze(tmp_path):
    code, rep = run(tmp_path, "check", SQUEEZE)
    assert code == EXIT_OK
    assert rep["Z_g"][0][0]["re"] == pytest.approx(0.2913126124515909, abs=1e-15)


def test_check_non_symplectic(tmp_path):
    code, rep = run(tmp_path, "check", map_doc([[1.2, 0.1], [0.3, 0.9]], [[0.2, 0], [0, 0.1]]))
    assert code == EXIT_FAIL and not rep["ok"]
    assert rep["omega_residual"] > 1e-3


def test_kernel_identity(tmp_path):
    code, rep = run(tmp_path, "kernel", IDENTITY, "--trunc", "4")
    assert code == EXIT_OK
    e = rep["entries"]
    assert e["0;0"]["re"] == 1 and e["1;1"]["re"] == 1 and e["2;2"]["re"] == 2
    assert e["1;0"]["re"] == 0 and rep["shale_constant"] == 1


def test_kernel_squeeze(tmp_path):
    code, rep = run(tmp_path, "kernel", SQUEEZE, "--trunc", "10")
    assert code == EXIT_OK
    assert rep["entries"]["0;0"] == {"re": 1.0, "im": 0.0}
    assert rep["intertwine_residual"] <= 1e-10
    assert rep["shale_constant"] == pytest.approx(math.cosh(0.3) ** -0.5)


def test_kernel_conjugation(tmp_path):
    code, rep = run(tmp_path, "kernel", CONJ, "--trunc", "6")
    assert code == EXIT_OK and rep["anti_shale_constant"] == 1
    assert rep["entries"]["3;3"]["re"] == 6 and rep["entries"]["2;1"]["re"] == 0


def test_element_examples(tmp_path):
    code, rep = run(tmp_path, "element", dict(IDENTITY, x=[1], y=[1]), "--trunc", "12")
    assert code == EXIT_OK
    assert rep["closed_form"]["re"] == pytest.approx(math.e, rel=1e-15)
    assert rep["abs_difference"] <= rep["tail_bound"]
    code, rep = run(tmp_path, "element", dict(SQUEEZE, x=[0], y=[0]))
    assert rep["closed_form"] == {"re": 1.0, "im": 0.0} and rep["truncated_pairing"]["re"] == 1
    code, rep = run(tmp_path, "element", dict(SQUEEZE, x=[1], y=[1]), "--trunc", "20")
    assert code == EXIT_OK
    assert rep["closed_form"]["re"] == pytest.approx(math.exp(1 / math.cosh(0.3)), rel=1e-14)
    assert rep["abs_difference"] <= 1e-8


@pytest.mark.parametrize("text", ["{not json", "[]", '{"C": [[1]]}', '{"C": [[1]], "A": [[0, 1]]}'])
def test_input_errors(tmp_path, text):
    code, rep = run(tmp_path, "check", text)
    assert code == EXIT_INPUT and "input_error" in rep


def test_bad_config(tmp_path):
    assert run(tmp_path, "check", IDENTITY, "--trunc", "31")[0] == EXIT_INPUT
    assert run(tmp_path, "check", IDENTITY, "--dim", "2")[0] == EXIT_INPUT
    assert run(tmp_path, "check", IDENTITY, "--tol", "-1")[0] == EXIT_INPUT


@pytest.mark.parametrize("d,N,seed", [(1, 8, 1), (2, 6, 7)])
def test_selftest_passes(tmp_path, d, N, seed):
    out = tmp_path / "st.json"
    code = main(["selftest", "--dim", str(d), "--trunc", str(N), "--seed", str(seed), "--output", str(out)])
    rep = json.loads(out.read_text())
    assert code == EXIT_OK and rep["ok"] and rep["failed"] == []


def test_selftest_force_fail(tmp_path):
    out = tmp_path / "st.json"
    code = main(["selftest", "--dim", "1", "--trunc", "6", "--force-fail", "--output", str(out)])
    rep = json.loads(out.read_text())
    assert code == EXIT_FAIL and "metaplectic_Z_symmetry" in rep["failed"]


def test_output_is_deterministic_and_round_trips(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        main(["selftest", "--dim", "1", "--trunc", "5", "--seed", "3", "--output", str(path)])
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert json.dumps(rep, indent=2, sort_keys=True) + "\n" == a.read_text()


def test_subprocess_stdin_stdout():
    proc = subprocess.run([sys.executable, "-m", "boskernel", "check"], input=json.dumps(SQUEEZE),
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
    proc = subprocess.run([sys.executable, "-m", "boskernel", "kernel"], input="{]",
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
