from __future__ import annotations

import csv
import io
import subprocess
import sys

import pytest

from hodge_fusion.cli import run
from hodge_fusion.complex import closure
from hodge_fusion.documents import parse_document, serialize

import golden


def call(*argv, stdin: str = ""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def sphere(tmp_path):
    path = tmp_path / "sphere.json"
    path.write_text(serialize(closure(golden.TETRA_FACETS), "tetrahedron"))
    return str(path)


def test_gen_piped_into_betti():
    code, doc, _ = call("gen", "simplex_boundary", "3")
    assert code == 0
    code, out, _ = call("betti", "-", stdin=doc)
    assert code == 0
    assert "b = (1,0,1)" in out.splitlines()
    assert "f = (4,6,4)" in out and "chi = 2 (cells) = 2 (harmonic)" in out
    assert "poincare = 1 + t^2" in out


def test_real_pipe_through_module():
    gen = subprocess.run([sys.executable, "-m", "hodge_fusion", "gen", "simplex_boundary", "3"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "hodge_fusion", "betti", "-"], input=gen.stdout,
                         capture_output=True, text=True)
    assert res.returncode == 0 and "b = (1,0,1)" in res.stdout


def test_fuse_appendix_split(sphere):
    code, out, _ = call("fuse", sphere, "--closed-cells", "1 2 3; 1 2; 1 3; 2 3; 1; 2; 3")
    assert code == 0
    lines = out.splitlines()
    assert "bG = (1,0,1)" in lines and "bK = (1,0,0)" in lines and "bU = (0,0,1)" in lines
    assert "bI = (0,0,0)" in lines
    assert "interface nullity = (0,0,0) (agrees)" in lines
    assert lines[-1] == "verdict: fusion inequality holds with equality"


def test_fuse_with_closed_file_and_strict_case(tmp_path):
    disc = tmp_path / "disc.json"
    disc.write_text(serialize(closure([[1, 2, 3]])))
    circle = tmp_path / "circle.txt"
    circle.write_text("1 2\n2 3\n1 3\n1\n2\n3\n")
    code, out, _ = call("fuse", str(disc), "--closed", str(circle))
    assert code == 0
    assert "bI = (0,1,1)" in out and "pairs: 1(e_1+e_2)" in out
    assert out.splitlines()[-1] == "verdict: fusion inequality holds strictly"


def test_fuse_errors(sphere):
    code, _, err = call("fuse", sphere, "--closed-cells", "1 2")
    assert code == 2 and "error:" in err
    code, _, err = call("fuse", sphere)
    assert code == 2


def test_dirac(sphere):
    code, out, _ = call("dirac", sphere, "--matrix")
    lines = out.splitlines()
    assert code == 0 and lines[:3] == ["n = 14", "markers = (0,4,10,14)", "d^2 = 0: yes"]
    assert len(lines) == 3 + 14


def test_spectrum(sphere):
    code, out, _ = call("spectrum", sphere)
    assert code == 0 and out.splitlines()[-1] == "zeros = (1,0,1)"
    assert out.splitlines()[0].startswith("L_0: 0 4 4 4")


def test_invalid_delta_set(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"cells":[[1],[1,2],[1,2,3]]}')
    code, out, _ = call("verify", str(bad))
    assert code == 1 and "d^2 != 0" in out
    code, _, err = call("betti", str(bad))
    assert code == 1 and "d^2 != 0" in err


def test_verify_passes_on_sphere(sphere):
    code, out, _ = call("verify", sphere, "--trials", "10", "--seed", "3")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())
    names = [line.split(":")[0][5:] for line in out.splitlines()]
    for expected in ("d^2 = 0", "euler-poincare", "mckean-singer", "spectral monotonicity",
                     "fusion bound", "kunneth"):
        assert any(n.startswith(expected) for n in names)


def test_verify_reports_the_merged_bound_failure(tmp_path):
    # a 5-vertex path; the bound fails when the open part is the two end stars
    p = tmp_path / "path.txt"
    p.write_text("1 2\n1 3\n2 4\n3 5\n1\n2\n3\n4\n5\n")
    code, out, _ = call("verify", str(p), "--trials", "40", "--seed", "2")
    assert code == 1
    failed = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert failed == ["FAIL fusion bound: 40 splits"]
    assert "PASS fusion inequality: 40 splits" in out


def test_products_and_joins(tmp_path):
    S = tmp_path / "s.json"
    S.write_text('{"cells":[[3],[1,2]],"dims":[0,1]}')
    code, out, _ = call("product", str(S), str(S))
    assert code == 0
    assert set(parse_document(out).complex.cells) == set(golden.SHANNON_SQUARE)
    code, out, _ = call("betti", "-", stdin=out)
    assert "b = (1,2,1)" in out
    three = tmp_path / "three.txt"
    three.write_text("1\n2\n3\n")
    code, out, _ = call("join", str(three), str(three))
    code, out, _ = call("betti", "-", stdin=out)
    assert "f = (6,9)" in out and "b = (1,4)" in out
    e1, e2 = tmp_path / "e1.txt", tmp_path / "e2.txt"
    e1.write_text("1 2\n")
    e2.write_text("3 4\n")
    code, out, _ = call("join", str(e1), str(e2), "--open")
    doc = parse_document(out).complex
    assert doc.cells == ((1, 2, 3, 4),) and doc.dims == (3,)
    code, out, _ = call("product", str(three), str(three), "--geometric")
    assert code == 0 and len(parse_document(out).complex) == 9


def test_suspend_and_refine(tmp_path):
    c = tmp_path / "c.json"
    code, doc, _ = call("gen", "cyclic", "4")
    c.write_text(doc)
    _, out, _ = call("suspend", str(c))
    assert "b = (1,0,1)" in call("betti", "-", stdin=out)[1]
    _, out, _ = call("refine", str(c))
    assert "f = (8,8)" in call("betti", "-", stdin=out)[1]


def test_gen_errors_and_seed(monkeypatch):
    assert call("gen", "klein", "3")[0] == 2
    assert call("gen", "cyclic", "2")[0] == 2
    assert call("gen")[0] == 2
    a = call("gen", "random_whitney", "8", "12", "--seed", "5")[1]
    monkeypatch.setenv("HODGE_FUSION_SEED", "5")
    assert call("gen", "random_whitney", "8", "12")[1] == a
    monkeypatch.setenv("HODGE_FUSION_SEED", "nope")
    code, _, err = call("gen", "random_whitney", "8", "12")
    assert code == 2 and "HODGE_FUSION_SEED" in err


def test_parse_errors_exit_2(tmp_path):
    bad = tmp_path / "dup.txt"
    bad.write_text("1 2\n2 1\n")
    code, _, err = call("betti", str(bad))
    assert code == 2 and "line 2: duplicate cell" in err
    assert call("betti", str(tmp_path / "missing.json"))[0] == 2


def test_anneal_with_trace(tmp_path):
    code, doc, _ = call("gen", "cross_polytope", "3")
    f = tmp_path / "oct.json"
    f.write_text(doc)
    trace = tmp_path / "trace.csv"
    code, out, _ = call("anneal", str(f), "--steps", "200", "--seed", "7", "--trace", str(trace))
    assert code == 0 and "dichotomy exceptions = 0" in out
    best = int(next(line for line in out.splitlines() if line.startswith("best pi")).split("=")[1])
    assert best >= 2
    rows = list(csv.DictReader(trace.open()))
    assert len(rows) == 200 and set(rows[0]) == {"step", "pi", "move_kind", "cell", "accepted"}
    assert {r["move_kind"] for r in rows} <= {"to_open", "to_closed"}
    again = call("anneal", str(f), "--steps", "200", "--seed", "7")[1]
    assert again == out
    assert call("anneal", str(f), "--steps", "-1")[0] == 2


def test_named_vertices_in_fuse():
    from hodge_fusion.constructions import load_fixture
    from hodge_fusion.documents import serialize_document

    doc = serialize_document(load_fixture("friends"))
    code, out, _ = call("fuse", "-", "--closed-cells", "Bob; Cathy", stdin=doc)
    assert code == 0 and "bG = (1,1,0)" in out
    code, _, err = call("fuse", "-", "--closed-cells", "Zed", stdin=doc)
    assert code == 2 and "unknown vertex 'Zed'" in err
