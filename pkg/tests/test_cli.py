import csv
import json
import subprocess
import sys

import pytest

from g2scroll.cli import main, parse_int_list
from g2scroll.errors import InputError
from g2scroll.verify import CSV_COLUMNS


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_int_list():
    assert parse_int_list("6..10") == [6, 7, 8, 9, 10]
    assert parse_int_list("10007, 7919") == [10007, 7919]
    for bad in ["7..6", "", "a..b", "1,x"]:
        with pytest.raises(InputError):
            parse_int_list(bad)


def test_verify_json(capsys):
    code, out, _ = run(["verify", "--d", "7", "--seed", "3"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["theorem_holds"] and rep["dims"]["q_C"] == 8 and rep["dims"]["q_overlap"] == 1


def test_verify_csv_small_field(tmp_path, capsys):
    out = tmp_path / "v.csv"
    code, _, _ = run(["verify", "--p", "7", "--hc", "6*inf", "--seed", "1", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0]) == CSV_COLUMNS and rows[0]["holds"] == "True" and rows[0]["q_C"] == "4"


def test_scroll_type_and_classify(capsys):
    code, out, _ = run(["scroll-type", "--hc", "7*inf", "--geometric"], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["stype_S"] == res["geometric_S"] == "(3,1)"
    code, out, _ = run(["classify", "--d", "9", "--seed", "2", "--geometric"], capsys)
    assert code == 0 and json.loads(out)["V"]["match"]


def test_trisecant(capsys):
    code, out, _ = run(["trisecant", "--d", "8", "--trials", "200"], capsys)
    assert code == 0 and json.loads(out)["collinear_triples"] == 0


def test_instance_file(tmp_path, capsys):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"p": 7, "f": [0, -1, 0, 0, 0, 1], "d": 6, "H": "6*inf", "D": "random", "seed": 1}))
    code, out, _ = run(["verify", "--instance", str(path)], capsys)
    assert code == 0 and json.loads(out)["spec"]["p"] == 7


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--d", "5"],
        ["verify", "--p", "7", "--f", "0,0,0,0,0,1", "--d", "6"],
        ["verify", "--d", "7", "--hc", "3*foo"],
        ["verify", "--f", "1,2,x"],
        ["cone", "--e1", "4", "--e2", "0"],
        ["suite", "--d-range", "7..6"],
        ["verify", "--instance", "/nonexistent/inst.json"],
        ["no-such-command"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2


def test_forced_containment_exit_2(capsys):
    code, _, err = run(["verify", "--hc", "(0,0) + (1,0) + 5*inf", "--dd", "(0,0) + (1,0) + inf"], capsys)
    assert code == 2 and "NoAdmissibleD" in err


def test_cone(capsys):
    code, out, _ = run(["cone", "--e1", "3", "--e2", "0"], capsys)
    res = json.loads(out)
    assert code == 0 and res["stype_V"] == "(3,0,0)" and res["d"] == 7 and res["bounds_ok"]


def test_suite_writes_csv_and_figures(tmp_path, capsys):
    out = tmp_path / "runs" / "suite.csv"
    argv = ["suite", "--d-range", "6..7", "--seeds", "0..1", "--primes", "10007",
            "--trials", "20", "--sv-points", "5", "--out", str(out)]
    code, _, err = run(argv, capsys)
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 4 and all(r["holds"] == "True" for r in rows)
    for name in ("suite_quadric_dims.png", "suite_runtime.png"):
        png = out.parent / name
        assert png.exists() and png.read_bytes()[:4] == b"\x89PNG"


def test_suite_deterministic_without_timings(tmp_path, capsys):
    texts = []
    for i in range(2):
        out = tmp_path / f"s{i}.csv"
        code, _, _ = run(["suite", "--d-range", "6", "--seeds", "0..2", "--primes", "7919",
                          "--no-timings", "--no-figures", "--out", str(out)], capsys)
        assert code == 0
        texts.append(out.read_text())
    assert texts[0] == texts[1]
    assert not list(tmp_path.glob("*.png"))


def test_suite_failure_exit_1(capsys):
    code, out, err = run(["suite", "--d-range", "6", "--seeds", "0", "--primes", "7", "--format", "json"], capsys)
    assert code == 1 and "InsufficientPoints" in json.loads(out)[0]["error"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "g2scroll.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "verify" in proc.stdout
