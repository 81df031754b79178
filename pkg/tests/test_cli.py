from __future__ import annotations

import json
import subprocess
import sys

import pytest

from grobstrata.cli import SCHEMA, main

EX1 = "1,1,0;1,0,1"
DELTA1 = "3,0,0;2,1,0;1,0,1;0,0,2"


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_stratum_json(capsys):
    code, out, _ = run(["stratum", "--corners", EX1, "--json", "-"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == SCHEMA
    assert data["tangent"]["embedding_dim"] == 5
    assert data["flat"] is True
    assert data["family"][0].startswith("x*y - a*y^2")


def test_stratum_delta1(capsys):
    code, out, _ = run(["stratum", "--corners", DELTA1, "--json", "-", "--spot-check", "3"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["tangent"]["embedding_dim"] == 11
    assert len(data["residual_gens"]) == 2


def test_triples(capsys):
    code, out, _ = run(["triples", "--corners", DELTA1, "--json", "-"], capsys)
    data = json.loads(out)
    assert code == 0 and data["theta"] == [3, 1, 2]
    assert len(data["triples"]) == 7


def test_tangent_matrix(tmp_path, capsys):
    path = tmp_path / "m.txt"
    code, out, _ = run(["tangent", "--corners", DELTA1, "--matrix", str(path), "--json", "-"], capsys)
    data = json.loads(out)
    assert code == 0 and data["rank"] == 21 and len(data["eliminable"]) == 21
    assert path.read_text().splitlines()[0] == "21 32"


def test_verify(capsys):
    doc = {"order": "grlex", "corners": [[1, 1, 0], [1, 0, 1]], "basis": ["xy", "xz"]}
    code, out, _ = run(["verify", json.dumps(doc), "--json", "-"], capsys)
    assert code == 0 and json.loads(out)["ok"] is True
    doc["basis"] = ["xy - x", "xz - y"]
    code, out, _ = run(["verify", json.dumps(doc), "--json", "-"], capsys)
    assert code == 1 and json.loads(out)["ok"] is False


@pytest.mark.parametrize(
    "args, code",
    [
        (["stratum", "--corners", "1,1,x"], 2),
        (["stratum", "--corners", "/nonexistent/file.json"], 2),
        (["stratum", "--corners", "1,0;2,0"], 3),
        (["stratum", "--corners", "2,0,0;1,1,0", "--order", "lex"], 4),
        (["stratum", "--corners", DELTA1, "--degree-bound", "2"], 4),
    ],
)
def test_exit_codes(args, code, capsys):
    got, _, err = run(args, capsys)
    assert got == code
    assert err.startswith("grobstrata: error:")


def test_byte_identical_reruns(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        subprocess.run(
            [sys.executable, "-m", "grobstrata.cli", "stratum", "--corners", DELTA1, "--json", str(path),
             "--emit", "ufamily", "--emit", "substitutions", "--text", str(tmp_path / f"r{k}.txt")],
            check=True,
        )
        outs.append((path.read_bytes(), (tmp_path / f"r{k}.txt").read_bytes()))
    assert outs[0] == outs[1]


def test_json_round_trip(capsys):
    _, out, _ = run(["stratum", "--corners", EX1, "--json", "-", "--emit", "vars"], capsys)
    data = json.loads(out)
    assert json.dumps(data, indent=2) + "\n" == out
