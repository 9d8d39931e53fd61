import json
import subprocess
import sys
import xml.dom.minidom

import pytest

from twistspace import corpus
from twistspace.cli import main

CUBIC = "0 + 1*x + 1*y + 4*x^2 + 3*x*y + 4*y^2 + 9*x^3 + 7*x^2*y + 7*x*y^2 + 9*y^3"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if code == 0 else None), out.err


def graph(name):
    return str(corpus.path(name))


def test_wspace_command(capsys):
    code, rep, _ = run(capsys, "wspace", "--graph", graph("theta"))
    assert code == 0 and rep["results"]["dim_w"] == 0
    _, rep, _ = run(capsys, "wspace", "--graph", graph("dumbbell"))
    assert rep["results"]["dim_w"] == 1
    _, rep, _ = run(capsys, "wspace", "--graph", graph("fig2b"))
    r = rep["results"]
    assert r["dim_w"] == 1 and r["w_kernel"]["basis"] == [["e1", "e2"]] and r["equal"]


def test_trace_command(capsys):
    _, rep, _ = run(capsys, "trace", "--graph", graph("theta"))
    assert rep["results"]["count"] == 3
    _, rep, _ = run(capsys, "trace", "--graph", graph("theta"), "--twists", "e3")
    assert rep["results"]["count"] < 3
    _, rep, _ = run(capsys, "trace", "--graph", graph("free"))
    assert rep["results"]["count"] == 0 and not rep["results"]["nonempty"]
    code, _, err = run(capsys, "trace", "--graph", graph("theta"), "--twists", "zz")
    assert code == 2 and "UnknownLabel" in err


def test_enumerate_command(capsys):
    _, rep, _ = run(capsys, "enumerate", "--graph", graph("k4"))
    assert rep["results"]["maximal_count"] == 1
    _, rep, _ = run(capsys, "enumerate", "--graph", graph("dumbbell"), "--jobs", "2")
    assert rep["results"]["maximal_count"] == 2
    _, rep, _ = run(capsys, "enumerate", "--graph", graph("fig2b"))
    r = rep["results"]
    assert (r["lifts"], r["cosets"], r["maximal_count"]) == (16, 8, 0)
    code, _, err = run(capsys, "enumerate", "--graph", graph("petersen"), "--cap", "8")
    assert code == 2 and "CapExceeded" in err


def test_patchwork_command(capsys, tmp_path):
    code, rep, _ = run(capsys, "patchwork", "--poly", "0 + 0*x + 0*y")
    assert code == 0 and rep["results"]["arcs"] == 3 and rep["results"]["verdict"] == "maximal"
    svg = tmp_path / "cubic.svg"
    poly_file = tmp_path / "cubic.txt"
    poly_file.write_text(CUBIC + "\n")
    _, rep, _ = run(capsys, "patchwork", "--poly-file", str(poly_file), "--svg", str(svg))
    assert rep["results"]["verdict"] == "maximal" and rep["results"]["compact_components"] == 2
    xml.dom.minidom.parse(str(svg))
    code, _, err = run(capsys, "patchwork", "--poly", CUBIC, "--twists", "e5")
    assert code == 2 and "NotTwistAdmissible" in err
    code, _, err = run(capsys, "patchwork", "--poly", "0 + 0*x + 0*y + 0*x*y")
    assert code == 2 and "NotNonSingular" in err


def test_exit_codes(capsys, tmp_path):
    code, _, _ = run(capsys, "trace", "--graph", str(tmp_path / "missing.json"))
    assert code == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "wspace", "--graph", str(bad))
    assert code == 2
    path = tmp_path / "path.json"
    path.write_text(json.dumps({
        "vertices": ["a", "b", "c"],
        "half_edges": [{"id": "h1", "vertex": "a"}, {"id": "h2", "vertex": "b"},
                       {"id": "h3", "vertex": "b"}, {"id": "h4", "vertex": "c"}],
        "edges": [["h1", "h2"], ["h3", "h4"]],
    }))
    code, _, err = run(capsys, "wspace", "--graph", str(path))
    assert code == 2 and "NonTrivalent" in err and "b" in err


def test_json_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--scope", "realpart", "--seed", "0", "--json", str(a)]) == 0
    assert main(["verify", "--scope", "realpart", "--seed", "0", "--json", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert "wall" not in a.read_text()


def test_console_script_help_documents_convention():
    out = subprocess.run([sys.executable, "-m", "twistspace", "patchwork", "--help"],
                         capture_output=True, text=True, check=True).stdout
    assert "min-plus" in out and "lower hull" in out
