import csv
import io
import json
import subprocess
import sys

import pytest

from crowdmode.cli import main
from crowdmode.serialize import plain, render
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_g_example(capsys):
    code, out, _ = run(capsys, "g", "--s1", "15", "--s2", "17")
    obj = json.loads(out)
    assert code == 0
    assert obj["g"] == 13 and obj["delta"] == 1 and obj["d0"] == 17
    assert obj["bracket_expression"] == "12.91"
    assert obj["gap"] == "1/6"


def test_delta_cases_json(capsys):
    code, out, _ = run(capsys, "delta-cases", "--s1", "15")
    assert code == 0 and json.loads(out) == [6, 10, 15, 17, 19]


def test_q_extrema_csv(capsys):
    code, out, _ = run(capsys, "q-extrema", "--d", "25", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1
    assert rows[0]["x_min"].startswith("60.5033652")
    assert rows[0]["d"] == "25"


def test_d8_defaults(capsys):
    code, out, _ = run(capsys, "d8")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 34
    assert rows[0] == {"s1": 4, "s3": 12, "s2": 4, "actual_N": 4, "formula_N": rows[0]["formula_N"]}


def test_tsv_and_out(capsys, tmp_path):
    path = tmp_path / "dist.tsv"
    code, out, _ = run(capsys, "dist", "--s1", "2", "--s2", "3", "--format", "tsv", "--out", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert "\t" in lines[0] and len(lines) > 2


def test_ratio_and_q_eval(capsys):
    _, out, _ = run(capsys, "ratio", "--d", "2", "--x", "2")
    assert json.loads(out)["ratio"] == "-1/5"
    _, out, _ = run(capsys, "q-eval", "--d", "5", "--x", "2")
    assert json.loads(out)["Q"] == "1"
    code, out, _ = run(capsys, "q-eval", "--d", "6", "--x-min", "1", "--x-max", "2", "--steps", "4", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 6


def test_domain_error_exit_code(capsys):
    code, out, err = run(capsys, "q-extrema", "--d", "3")
    assert code == 3 and out == "" and "domain error" in err
    code, _, _ = run(capsys, "eval", "--s1", "-1", "--s2", "3", "--n", "1")
    assert code == 3


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["g", "--s1", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["g", "--s1", "3", "--s2", "4", "--digits", "0"])
    assert exc.value.code == 2


def test_digits_default_per_command():
    from crowdmode.cli import build_parser
    p = build_parser()
    assert p.parse_args(["general", "--s1", "1", "--s2", "1", "--s3", "2"]).digits == 8
    assert p.parse_args(["fit-c"]).digits == 80
    assert p.parse_args(["q-extrema", "--d", "5"]).digits == 10


def test_simulate_small(capsys):
    code, out, _ = run(capsys, "simulate", "--s1", "3", "--s2", "4", "--trials", "5000", "--seed", "1")
    obj = json.loads(out)
    assert code == 0 and sum(obj["counts"].values()) == 5000


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "crowdmode", "argmax", "--s1", "15", "--s2", "18"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["n_star"] == 13


def test_serializer_refuses_floats():
    assert plain({"a": Fraction(1, 2), "b": (Fraction(3),)}) == {"a": "1/2", "b": ["3"]}
    with pytest.raises(TypeError):
        plain(0.5)
    assert render([{"a": 1, "b": True}], fmt="csv") == "a,b\n1,true\n"
