from __future__ import annotations

import networkx as nx
import pytest

from critsurf import samples
from critsurf.cli import run
from critsurf.surface_map import write_emg


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, G in (("tripod", samples.hexagon_tripod()), ("cube", samples.cube()),
                    ("fig1", samples.figure1_cylinder()), ("chords", samples.c8_two_chords())):
        p = tmp_path / f"{name}.emg"
        p.write_text(write_emg(G))
        out[name] = str(p)
    p = tmp_path / "groetzsch.g6"
    p.write_bytes(nx.to_graph6_bytes(samples.groetzsch_graph(), header=False))
    out["g6"] = str(p)
    p = tmp_path / "junk.emg"
    p.write_text("EMG 1\nV x\n")
    out["junk"] = str(p)
    return out


def _run(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_analyze(files, capsys):
    code, out, _ = _run(capsys, "analyze", files["tripod"])
    assert code == 0
    assert "n = 7" in out and "triangles = 0" in out


def test_color_with_precoloring(files, capsys):
    code, out, _ = _run(capsys, "color", files["tripod"], "--precoloring", "0=1,1=3,2=2,3=1,4=3,5=2")
    assert code == 1 and "verdict = fail" in out
    code, out, _ = _run(capsys, "color", files["tripod"], "--precoloring", "0=1,1=2,2=1,3=2,4=1,5=2")
    assert code == 0 and out.startswith("coloring = 1 2 1 2 1 2 ")
    code, _, err = _run(capsys, "color", files["tripod"], "--precoloring", "0=1")
    assert code == 2 and "not precolored" in err
    code, out, _ = _run(capsys, "color", files["cube"])
    assert code == 0
    code, _, err = _run(capsys, "color", files["tripod"], "--precoloring", "0:1")
    assert code == 2 and "v=c" in err


def test_critical(files, capsys):
    code, out, _ = _run(capsys, "critical", files["tripod"])
    assert code == 0 and "kind = ring-critical" in out
    code, out, _ = _run(capsys, "critical", files["g6"])
    assert code == 0 and "kind = 4-critical" in out
    code, out, _ = _run(capsys, "critical", files["cube"])
    assert code == 1


def test_reduce_and_flip(files, capsys, tmp_path):
    code, out, _ = _run(capsys, "reduce", files["chords"], "--emit-witness", str(tmp_path / "w"))
    assert code in (0, 1) and "verdict" in out
    code, out, _ = _run(capsys, "flip", files["fig1"])
    assert code == 0 and "EMG 1" in out
    code, out, _ = _run(capsys, "flip", files["cube"])
    assert code == 1 and "flippable = none" in out


def test_census(capsys, tmp_path):
    code, out, _ = _run(capsys, "census", "--girth", "4", "--ring", "8", "--max-n", "10",
                        "--out", str(tmp_path / "c.txt"))
    assert code == 0
    assert out.splitlines()[0] == "S_{4,8} = {∅, {5,5}, {6}}"
    assert (tmp_path / "c.txt").exists()


def test_refine(capsys):
    code, out, _ = _run(capsys, "refine", "--s1", "{6}", "--s2", "{}")
    assert code == 0 and "replace 6 by ∅" in out
    code, out, _ = _run(capsys, "refine", "--s1", "{5}", "--s2", "{6}")
    assert code == 1


def test_verify(capsys):
    code, out, _ = _run(capsys, "verify", "surfineq")
    assert code == 0 and out.endswith("verdict = pass\n")
    code, _, err = _run(capsys, "verify", "bogus")
    assert code == 2 and "unknown suite" in err


def test_decompose(files, capsys):
    code, out, _ = _run(capsys, "decompose", files["g6"])
    assert code == 0 and "rule=" in out
    code, out, _ = _run(capsys, "decompose", files["cube"])
    assert code == 0 and "size = 0" in out


def test_input_errors(files, capsys, tmp_path):
    assert _run(capsys, "analyze", files["junk"])[0] == 2
    assert _run(capsys, "analyze", str(tmp_path / "missing.emg"))[0] == 2
    assert _run(capsys, "frobnicate")[0] == 2
    k4 = tmp_path / "k4.g6"
    k4.write_bytes(nx.to_graph6_bytes(nx.complete_graph(4), header=False))
    code, _, err = _run(capsys, "decompose", str(k4))
    assert code == 2 and "triangle" in err


def test_output_is_deterministic(files, capsys):
    a = _run(capsys, "decompose", files["g6"])[1]
    b = _run(capsys, "decompose", files["g6"])[1]
    assert a == b
    a = _run(capsys, "census", "--ring", "7", "--max-n", "10", "--jobs", "2")[1]
    b = _run(capsys, "census", "--ring", "7", "--max-n", "10")[1]
    assert a == b
