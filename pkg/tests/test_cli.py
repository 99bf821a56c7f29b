from __future__ import annotations

import json
import subprocess
import sys

import pytest

from tlkit import cli
from tlkit.cli import art, main, parse_element
from tlkit.coeff_ring import Q
from tlkit.diagram import parse_half
from tlkit.encodings import enumerate_full
from tlkit.selftest import CheckResult
from tlkit.tl_algebra import TLElement, tl_gen


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_enumerate_four(capsys):
    data = run_json(capsys, "enumerate", "4")
    assert [g["count"] for g in data["groups"]] == [1, 3, 2]
    assert data["groups"][0]["diagrams"][0]["half"] == "n=4; 1T 2T 3T 4T"
    code, out, _ = run(capsys, "enumerate", "4", "1", "--art")
    assert code == 0 and out.startswith("p=1 (3)") and "┌" in out


def test_convert_figure_example(capsys):
    code, out, _ = run(capsys, "convert", "n=15;[2,1,3,4,5,4]", "--to", "path")
    assert code == 0
    assert out.strip() == "UUDDUUUDUUDUUDD"


@pytest.mark.parametrize("to", ["half", "brackets", "path", "restricted"])
def test_convert_accepts_its_own_json(capsys, to):
    first = run_json(capsys, "convert", "n=6; 1-2 3T 4-5 6T", "--to", to)
    again = run_json(capsys, "convert", json.dumps(first), "--to", "half")
    assert again["output"] == "n=6; 1-2 3T 4-5 6T"


def test_mul_and_shorthands(capsys):
    data = run_json(capsys, "mul", "e1", "e_1", "--n", "2")
    assert TLElement.parse(data["text"]) == Q * tl_gen(2, 1)
    code, out, _ = run(capsys, "mul", "1", "n=3; 1-2 3-6 4-5", "--n", "3")
    assert code == 0 and out.strip() == "(1)/(1) * [n=3; 1-2 3-6 4-5]"
    assert parse_element("e2", 3) == tl_gen(3, 2)
    assert parse_element("(q)/(1) * [n=2; 1-2 3-4]") == Q * tl_gen(2, 1)


def test_trace(capsys):
    data = run_json(capsys, "trace", "1", "--n", "3", "--at", "2")
    assert data["trace"] == "(q^3)/(1)" and data["value"] == "8"


def test_gram(capsys):
    data = run_json(capsys, "gram", "2")
    assert data["matrix"] == [["(q^2)/(1)", "(q)/(1)"], ["(q)/(1)", "(q^2)/(1)"]]
    assert len(data["labels"]) == len(enumerate_full(2))
    half = run_json(capsys, "gram", "4", "1")
    assert half["matrix"][0][0] == "(q)/(1)"
    code, out, _ = run(capsys, "gram", "2")
    assert json.loads(out) == data


def test_ortho(capsys):
    data = run_json(capsys, "ortho", "4", "1")
    assert [v["restricted"] for v in data["vectors"]] == ["n=4;[1]", "n=4;[2]", "n=4;[3]"]
    assert data["vectors"][1]["norm"] == "(q^2 - 1)/(q)"
    assert data["vectors"][1]["terms"] == [["n=4; 1-2 3T 4T", "(-1)/(q)"], ["n=4; 1T 2-3 4T", "(1)/(1)"]]
    code, out, _ = run(capsys, "ortho", "4", "1", "--art")
    assert code == 0 and "norm = (q^2 - 1)/(q)" in out


def test_iso(capsys):
    data = run_json(capsys, "iso", "2", "e1")
    assert data["blocks"][1] == {"p": 1, "size": 1, "entries": [["(q)/(1)"]]}
    num = run_json(capsys, "iso", "2", "e1", "--normalized")
    assert num["blocks"][1]["entries"] == [[{"re": 2.0, "im": 0.0}]]
    at = run_json(capsys, "iso", "3", "e1", "--at", "3")
    assert [b["size"] for b in at["blocks"]] == [1, 2]
    code, out, _ = run(capsys, "iso", "3")
    assert code == 0 and out.startswith("p=0 size=1")


def test_cheb(capsys):
    data = run_json(capsys, "cheb", "3")
    assert data["delta"] == ["1", "q", "q^2 - 1", "q^3 - 2q"]
    code, out, _ = run(capsys, "cheb", "2")
    assert code == 0 and out.splitlines() == ["Δ_0 = 1", "Δ_1 = q", "Δ_2 = q^2 - 1"]


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest", "4")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_selftest_failure_exit_code(capsys, monkeypatch):
    import tlkit.selftest

    monkeypatch.setattr(tlkit.selftest, "run_selftest", lambda n: [CheckResult("broken", False, "forced")])
    code, out, _ = run(capsys, "selftest", "2")
    assert code == 3 and "FAIL broken: forced" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "13"],
        ["enumerate"],
        ["nosuchcommand"],
        ["convert", "n=3; 1-2 3X", "--to", "path"],
        ["mul", "e1", "e1"],
        ["iso", "4", "e1", "--n", "3"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("tlkit:") and len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["mul", "e1", "n=3; 1-6 2-5 3-4", "--n", "2"],
        ["iso", "3", "--normalized", "--at", "1"],
        ["mul", "e4", "1", "--n", "3"],
    ],
)
def test_domain_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2, err


def test_caps_can_be_lifted(capsys, monkeypatch):
    assert run(capsys, "enumerate", "13", "--no-cap")[0] == 0
    monkeypatch.setenv("TLKIT_MAX_N", "14")
    assert run(capsys, "enumerate", "14", "1")[0] == 0
    monkeypatch.setenv("TLKIT_MAX_N", "3")
    assert run(capsys, "enumerate", "4")[0] == 1
    assert cli.DEFAULT_CAPS["ortho"] == 8 and cli.DEFAULT_CAPS["iso"] == 5


def test_art():
    assert art(parse_half("n=4; 1-2 3T 4T")) == "┌──┐  │  │\n1  2  3  4"
    assert art(parse_half("n=4; 1-4 2-3")).splitlines()[0] == "┌────────┐"


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "5", "--format", "json"],
        ["ortho", "5", "2"],
        ["iso", "4", "e2", "--normalized", "--format", "json"],
        ["gram", "3"],
    ],
)
def test_output_is_deterministic(argv):
    outs = [
        subprocess.run([sys.executable, "-m", "tlkit", *argv], capture_output=True, text=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1] and outs[0]
