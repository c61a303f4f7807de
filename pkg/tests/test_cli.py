import json
import os
import subprocess
import sys

import pytest

from selmerbounds.cli import EXIT_CONDITIONAL, EXIT_ERROR, EXIT_OK, main
from selmerbounds.schemas import validate_document

from conftest import CLASSDATA, curve_path


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,window", [
    ("277", [0, 2]),
    ("x5x2_1", [0, 2]),
    ("x5x2_1_twist31", [0, 2]),
    ("deg11_a", [0, 5]),
    ("sqrt5_a", [0, 4]),
])
def test_analyze_unconditional(name, window, capsys):
    code, out, _ = run(["analyze", curve_path(name)], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    validate_document(doc, "report")
    assert [doc["bounds"]["lower"], doc["bounds"]["upper"]] == window
    assert doc["bounds"]["mode"] == "unconditional"
    assert doc["hypotheses"]["dagger_ii"] == "undecided"


def test_analyze_conditional_exit_code_and_relaxed(capsys):
    code, out, _ = run(["analyze", curve_path("x5_minus_3x")], capsys)
    assert code == EXIT_CONDITIONAL
    doc = json.loads(out)
    assert doc["bounds"]["mode"] == "conditional"
    assert doc["relaxed_bounds"]["lower"] == 1 and doc["relaxed_bounds"]["upper"] == 3
    code, _, _ = run(["analyze", curve_path("x5_minus_3x"), "--conditional-ok"], capsys)
    assert code == EXIT_OK


def test_bad_spec_reports_line(capsys):
    code, out, err = run(["analyze", curve_path("bad")], capsys)
    assert code == EXIT_ERROR
    assert out == ""
    assert "line 5" in err and "degree must be odd" in err


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text('{"schema": "selmerbounds.curve/1",\n "poly": [1, 0,\n')
    code, _, err = run(["analyze", str(p)], capsys)
    assert code == EXIT_ERROR
    assert "line" in err


def test_missing_class_data_is_an_error(tmp_path, capsys):
    spec = json.load(open(curve_path("277")))
    spec["class_data"] = [str(tmp_path / "nope.json")]
    p = tmp_path / "c.json"
    p.write_text(json.dumps(spec))
    code, _, err = run(["analyze", str(p)], capsys)
    assert code == EXIT_ERROR
    assert "nope.json" in err


def test_import_provider_with_broken_chain(capsys):
    prov = "import:" + os.path.join(CLASSDATA, "bad_chain.json")
    code, _, err = run(["analyze", curve_path("x5x2_1"), "--classgroup-provider", prov], capsys)
    assert code == EXIT_ERROR
    assert "error" in err


def test_analyze_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["analyze", curve_path("x5x2_1"), "--out", str(a)]) == EXIT_OK
    assert main(["analyze", curve_path("x5x2_1"), "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_local_place_2(capsys):
    code, out, _ = run(["local", curve_path("277"), "--place", "2"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    validate_document(doc, "place")
    assert doc["dagger_i"]["verdict"] == "holds"
    assert doc["r_v"] == 1


def test_local_over_quadratic_base(capsys):
    code, out, _ = run(["local", curve_path("sqrt5_a"), "--place", "2"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["dagger_i"]["verdict"] == "holds"


def test_local_failing_place(capsys):
    code, out, _ = run(["local", curve_path("x5_minus_3x"), "--place", "3"], capsys)
    assert code == EXIT_CONDITIONAL
    assert json.loads(out)["dagger_i"]["verdict"] == "fails"


def test_delta(capsys):
    code, out, _ = run(["delta", curve_path("x5x2_1"), "--point", "0,1"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    validate_document(doc, "delta")
    assert doc["all_even"]
    code, _, err = run(["delta", curve_path("x5x2_1"), "--point", "0,2"], capsys)
    assert code == EXIT_ERROR and "not on the curve" in err
    code, _, _ = run(["delta", curve_path("x5x2_1"), "--point", "zero"], capsys)
    assert code == EXIT_ERROR


def test_twist_scan_cli(tmp_path, capsys):
    out = tmp_path / "scan.ndjson"
    code, summary, _ = run(["twist-scan", curve_path("277"), "--max-prime", "50",
                            "--out", str(out)], capsys)
    assert code == EXIT_OK
    doc = json.loads(summary)
    validate_document(doc, "density")
    assert doc["expected_density"] == "1/5"
    for line in out.read_text().splitlines():
        validate_document(json.loads(line), "twist-record")


def test_twist_scan_refuses_conditional_base(tmp_path, capsys):
    out = tmp_path / "scan.ndjson"
    code, _, err = run(["twist-scan", curve_path("x5_minus_3x"), "--max-prime", "20",
                        "--out", str(out)], capsys)
    assert code == EXIT_CONDITIONAL
    assert "--conditional-ok" in err
    assert not out.exists()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "selmerbounds.cli", "--version"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
