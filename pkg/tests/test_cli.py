import io
import json
import subprocess
import sys

import pytest

from qlat import FIXTURES
from qlat.cli import run_command


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return str(FIXTURES / name)


def test_check_boolean8():
    code, out, _ = run("check", fx("boolean8.qlat"))
    assert code == 0
    assert "result: PASS" in out


def test_check_benzene():
    code, out, _ = run("check", fx("benzene.qlat"))
    assert code == 1
    assert "weak-modularity        FAIL  witness=(a, b)" in out


def test_demo_epr():
    code, out, _ = run("demo", "epr")
    assert code == 0
    for line in ("P(x1,y1) = 0", "P(x1,y2) = 1/2", "P(x2,y1) = 1/2", "P(x2,y2) = 0"):
        assert line in out
    assert "not separate measurements" in out


def test_demo_epr_json():
    code, out, _ = run("demo", "epr", "--dim", "3", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == [3, 2]
    assert doc["probabilities"] == {"x1,y1": "0", "x1,y2": "1/2", "x2,y1": "1/2", "x2,y2": "0"}


def test_demo_chsh():
    code, out, _ = run("demo", "chsh", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["abs_S"] == pytest.approx(2 * 2 ** 0.5, abs=1e-9)
    code, out, _ = run("demo", "chsh", "--angles", "0", "0", "0", "0")
    assert "|S| = 2.000000000000" in out


def test_product_and_gen_hilbert():
    code, out, _ = run("product", fx("qubit4.qlat"), fx("qubit4.qlat"))
    assert code == 1 and "covering-law           FAIL" in out
    code, out, _ = run("product", fx("classical2.qlat"), fx("qubit4.qlat"), "--format", "json")
    assert code == 0 and json.loads(out)["result"] == "pass"
    code, out, _ = run("gen-hilbert", fx("c2_lines.qlat"))
    assert code == 0 and "elements: 8" in out


def test_check_product_job():
    code, out, _ = run("check", fx("qubit_pair.qlat"), "--format", "json")
    doc = json.loads(out)
    assert code == 1
    assert {r["axiom"]: r["verdict"] for r in doc["reports"]}["ssr"] == "fail"


def test_usage_errors():
    code, out, err = run("frobnicate")
    assert code == 2 and "usage:" in err and out == ""
    code, _, err = run("check", fx("boolean8.qlat"), "--colour")
    assert code == 2 and "usage:" in err
    code, _, err = run("demo")
    assert code == 2


def test_input_errors_go_to_stderr(tmp_path):
    bad = tmp_path / "bad.qlat"
    bad.write_text('{"version": 1, "kind": "lattice",\n "elements": ["0"], "order": [["0", "x"]]}')
    code, out, err = run("check", str(bad))
    assert code == 2 and out == ""
    assert err.startswith("qlat: bad.qlat:2:")
    assert "'x'" in err
    code, out, err = run("check", str(tmp_path / "missing.qlat"))
    assert code == 2 and "cannot read" in err
    code, _, err = run("gen-hilbert", fx("wood.qlat"))
    assert code == 2 and "hilbert-seeds" in err
    code, _, err = run("product", fx("mo2.qlat"), fx("wood.qlat"))
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "wood.qlat"),
        ("check", "qubit_pair.qlat", "--format", "json"),
        ("demo", "epr"),
        ("demo", "chsh"),
        ("gen-hilbert", "c2_lines.qlat", "--format", "json"),
    ],
)
def test_deterministic_output(argv):
    argv = [fx(a) if a.endswith(".qlat") else a for a in argv]
    first, second = run(*argv), run(*argv)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qlat", "check", fx("mo2.qlat")], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "result: PASS" in proc.stdout
