import io
import json

import pytest

from hahnexp import scalars
from hahnexp.cli import main
from hahnexp.serialize import dumps
from hahnexp.series_field import t


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, [json.loads(line) for line in out.getvalue().splitlines()]


def test_check_taylor():
    code, lines = run(["check", "taylor"])
    assert code == 0
    assert lines[0]["instances"] == 6 and lines[0]["failures"] == []


def test_eval_mul():
    code, lines = run(["eval", "mul", dumps(1 + t(1)), dumps(1 - t(1))])
    assert code == 0
    assert lines[0]["result"] == json.loads(dumps(1 - t(2)))


def test_eval_ops():
    assert run(["eval", "cmp", dumps(t(-1)), dumps(t(0, 1000))])[1][0]["result"] == "positive"
    assert run(["eval", "valuation", dumps(t(-2, 3) + 5)])[1][0]["result"] == {"terms": [{"coef": "-2", "idx": "0"}]}
    code, lines = run(["eval", "invert", dumps(1 - t(1)), "--cutoff", "4"])
    assert code == 0 and lines[0]["result"]["trunc"] == {"terms": [{"coef": "4", "idx": "0"}]}


def test_violating_fixture_reports_witnesses():
    code, lines = run(["check", "strong", "--fixture", "violating", "--samples", "5"])
    assert code == 1
    report = lines[0]
    assert report["failures"] and report["passes"] + len(report["failures"]) == report["instances"]
    witness = report["failures"][0]
    # re-submitting the witness reproduces the failing comparison
    code, out = run(["eval", "valuation", json.dumps(witness["h(v_G(g))"])])
    assert code == 0
    assert scalars.parse_scalar(out[0]["result"]) < scalars.parse_scalar(witness["v_G(g)"])


def test_strong_fixture_all_suites_pass():
    code, lines = run(["check", "all", "--samples", "4", "--seed", "7"])
    assert code == 0
    assert {line["check"] for line in lines} >= {"strong", "ga", "centripetal", "vcompat", "round-trip"}


def test_paper_literal_direction_fails():
    code, _ = run(["check", "centripetal", "--direction", "paper_literal", "--samples", "4"])
    assert code == 1


def test_deterministic_given_seed():
    def strip(lines):
        return [{k: v for k, v in line.items() if k != "wall_time_ms"} for line in lines]
    a = run(["check", "ga", "strong", "--seed", "3", "--samples", "5"])
    b = run(["check", "ga", "strong", "--seed", "3", "--samples", "5"])
    assert a[0] == b[0] and strip(a[1]) == strip(b[1])


@pytest.mark.parametrize("argv", [
    ["check", "nosuch"],
    ["check", "taylor", "--samples", "0"],
    ["check", "taylor", "--cutoff", "-1"],
    ["check", "taylor", "--precision", "2"],
    ["eval", "mul", "{not json"],
    ["eval", "mul", dumps(t(1))],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_precision_env_overrides(monkeypatch):
    monkeypatch.setenv("HAHNEXP_PRECISION", "1/256")
    code, lines = run(["check", "taylor", "--precision", "1/1024"])
    assert code == 0
    monkeypatch.setenv("HAHNEXP_PRECISION", "5")
    assert run(["check", "taylor"])[0] == 2
    assert scalars.settings.cap == scalars.DEFAULT_CAP


def test_precision_echoed_in_config(monkeypatch):
    monkeypatch.setenv("HAHNEXP_PRECISION", "1/256")
    _, lines = run(["check", "strong", "--samples", "2"])
    assert lines[0]["config"]["precision"] == "1/256"


def test_undecided_exit_code():
    root = '{"terms": [{"exp": {"terms": []}, "coef": "(sub (mul (root 2 2) (root 2 2)) 2)"}], "trunc": null}'
    assert run(["eval", "cmp", root, dumps(t(0, 0) - t(0, 0))])[0] == 3


@pytest.mark.parametrize("name,expected", [
    ("lifting", 0), ("round-trip", 0), ("taylor", 0), ("glue", 0), ("ga-counterexample", 1),
])
def test_demos(name, expected):
    code, lines = run(["demo", name])
    assert code == expected and lines
