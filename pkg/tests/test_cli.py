from __future__ import annotations

import json
import subprocess
import sys

import pytest

from towerlab.cli import main


def run(capsys, *argv: str) -> dict:
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def run_proc(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "towerlab", *argv], capture_output=True, text=True)


def test_classify_example(capsys):
    out = run(capsys, "classify", "4", "3", "--depth", "6")
    assert out["schema"] == "tower-lab/1"
    assert (out["class"], out["thin"], out["a"]) == ("DecVerified", False, "3")


def test_classify_outside_omega(capsys):
    assert main(["classify", "5", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"] == "NotInOmegaAtDepth" and out["thin"] is None


def test_lattice_dot_21(tmp_path, capsys):
    dot = tmp_path / "out.dot"
    out = run(capsys, "lattice", "2", "1", "--depth", "4", "--dot", str(dot))
    text = dot.read_text()
    graph = out["lattice"]
    assert text.startswith("digraph") and text.count("->") == len(graph["edges"])
    degrees = {int(n["degree"]) for n in graph["nodes"]}
    assert max(degrees) == 16
    for label in ("K^(2,1)_4", "K^(2,0)_3", "M_3"):
        assert f'"{label}"' in text


def test_enumerate_omega1_example(capsys):
    out = run(capsys, "enumerate", "omega1", "--max-nu", "3", "--depth", "6")
    assert [(r["nu"], r["x0"]) for r in out["records"]] == [("2", "1"), ("3", "2")]


@pytest.mark.parametrize("argv", [
    ["classify", "4", "3"],
    ["lattice", "4", "3"],
    ["scan", "2", "1", "--kind", "fn"],
    ["sqrt2", "4", "3"],
    ["xset", "20", "372"],
    ["fermat", "12", "15"],
    ["cyclo", "--max-n", "2"],
    ["jr", "4", "3", "--max-n", "4", "--census", "6"],
    ["embed", "2", "0", "2", "1", "--source-depth", "2", "--target-depth", "3"],
], ids=lambda a: a[0])
def test_output_is_deterministic_and_versioned(capsys, argv):
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["schema"] == "tower-lab/1"


def walk(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from ((k, x) for _, x in walk(v))
    elif isinstance(obj, list):
        for v in obj:
            yield from walk(v)
    else:
        yield None, obj


def test_numbers_are_strings_or_balls(capsys):
    out = run(capsys, "jr", "4", "3", "--max-n", "3")
    alpha = out["report"]["alpha"]
    assert set(alpha) == {"mid", "radius"}
    nums = [v for _, v in walk(out) if isinstance(v, (int, float)) and not isinstance(v, bool)]
    assert nums == []


def test_jr_csv(tmp_path, capsys):
    path = tmp_path / "traj.csv"
    run(capsys, "jr", "2", "0", "--max-n", "3", "--csv", str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "n,house,gap" and len(lines) == 4


def test_out_flag(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["--out", str(path), "fermat", "12"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["schema"] == "tower-lab/1"


@pytest.mark.parametrize("argv, code", [
    (["classify", "4", "3", "--depth", "13"], 2),
    (["classify", "4", "3", "--depth", "0"], 2),
    (["classify", "1", "0"], 2),
    (["classify", "four", "3"], 2),
    (["xset", "4", "3"], 2),
    (["sqrt2", "5", "4"], 2),
    (["jr", "2", "0", "--precision", "5"], 2),
    (["jr", "5", "4", "--max-n", "2"], 2),
    (["enumerate", "omega1", "--max-nu", "1"], 2),
    (["fermat", "12"], 0),
])
def test_exit_codes(argv, code):
    r = run_proc(*argv)
    assert r.returncode == code, r.stderr
    if code == 2 and "--depth" in argv and "13" in argv:
        assert "12" in r.stderr
