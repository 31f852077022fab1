import json
import subprocess
import sys

import pytest

from conftest import r1_residues, r1_structure, r2_residues, r2_structure
from strata import io
from strata.cli import main
from strata.separatrix import FoliatedModel, TraceComponent


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def r1_files(tmp_path):
    return (write(tmp_path, "r1.json", io.structure_to_doc(r1_structure())),
            write(tmp_path, "r1-res.json", io.residues_to_doc(r1_residues())))


def test_generate_cone(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, _, _ = run(capsys, "generate", "--dim", "3", "--blowups", "P[];P[0];P[0,1];S[0,1,2]",
                     "-o", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["final"]["strata"]) == 14
    assert [s["fresh"] for s in doc["steps"]] == [0, 1, 2, 3]


def test_generate_random_is_stable(capsys):
    a = run(capsys, "generate", "--dim", "3", "--random", "4", "--seed", "5")[1]
    b = run(capsys, "generate", "--dim", "3", "--random", "4", "--seed", "5")[1]
    assert a == b and len(json.loads(a)) == 4


def test_check_componentcount_corpus(capsys):
    code, out, _ = run(capsys, "check", "componentcount", "--random", "500", "--dim", "3",
                       "--max-blowups", "8", "--seed", "7")
    assert code == 0 and out.strip() == "500/500 pass"


@pytest.mark.parametrize("suite", ["simplyconnected", "camachosad", "nodsep"])
def test_other_corpus_suites(capsys, suite):
    code, out, _ = run(capsys, "check", suite, "--random", "40", "--seed", "3")
    assert code == 0 and out.strip() == "40/40 pass"


def test_analyze_r1(capsys, r1_files):
    code, out, _ = run(capsys, "analyze", *r1_files[:1], "--residues", r1_files[1])
    doc = json.loads(out)
    assert code == 0
    assert doc["separating_blocks"] == 0 and doc["components"] == 1 and doc["agreement"]
    code, table, _ = run(capsys, "analyze", r1_files[0], "--residues", r1_files[1],
                         "--format", "table")
    assert "separating_blocks  0" in table


def test_analyze_is_byte_stable(capsys, r1_files):
    a = run(capsys, "analyze", r1_files[0], "--residues", r1_files[1])[1]
    b = run(capsys, "analyze", r1_files[0], "--residues", r1_files[1])[1]
    assert a == b


def test_check_files(tmp_path, capsys):
    s = write(tmp_path, "r2.json", io.structure_to_doc(r2_structure()))
    res = write(tmp_path, "r2-res.json", io.residues_to_doc(r2_residues()))
    assert run(capsys, "check", "componentcount", s, "--residues", res)[0] == 0
    assert run(capsys, "check", "nodsep", s, "--residues", res)[0] == 0
    assert run(capsys, "check", "simplyconnected", s)[0] == 0
    full = FoliatedModel.from_residues(r2_structure(), r2_residues(),
                                       [TraceComponent("t1", 0), TraceComponent("t2", 2)])
    good = write(tmp_path, "good.json", io.model_to_doc(full))
    assert run(capsys, "check", "camachosad", "--model", good)[0] == 0
    half = FoliatedModel(full.structure, full.nodal, full.residues, full.traces[:1])
    code, out, _ = run(capsys, "check", "camachosad", "--model",
                       write(tmp_path, "half.json", io.model_to_doc(half)))
    assert code == 1 and "c1=[2]" in out and "0/1 pass" in out


def test_check_triangle_fails(tmp_path, capsys):
    from conftest import triangle
    p = write(tmp_path, "tri.json", io.structure_to_doc(triangle()))
    code, out, _ = run(capsys, "check", "simplyconnected", p)
    assert code == 1 and "not_simply_connected" in out


def test_export_styles(tmp_path, capsys):
    s = write(tmp_path, "r2.json", io.structure_to_doc(r2_structure()))
    res = write(tmp_path, "r2-res.json", io.residues_to_doc(r2_residues()))
    dot = tmp_path / "g.dot"
    assert run(capsys, "export", s, "--residues", res, "--dot", str(dot))[0] == 0
    text = dot.read_text()
    assert '0 -- 2 [style="bold,color=red"];' in text
    assert "0 -- 1;" in text


def test_export_dashed_for_non_separating(capsys, r1_files):
    out = run(capsys, "export", r1_files[0], "--residues", r1_files[1])[1]
    assert "0 -- 2 [style=dashed];" in out


def test_invariant(tmp_path, capsys):
    m = write(tmp_path, "m.json", {"n": 3, "e": 3, "rows": [["1", "1", "1"]]})
    code, out, _ = run(capsys, "invariant", "--matrix", m, "--nu", "1")
    doc = json.loads(out)
    assert code == 0 and doc["zeta"] == 1 and doc["invariant"] == [1, 2, 1]
    assert doc["locally_simple"] is False


@pytest.mark.parametrize("argv", [
    ["generate", "--dim", "3", "--blowups", "P[];S[0,1]"],
    ["generate", "--dim", "3"],
    ["generate", "--dim", "3", "--nope"],
    ["analyze", "/nonexistent.json"],
    ["check", "componentcount", "--random", "0"],
    ["frobnicate"],
])
def test_input_errors_exit_2_with_one_line(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("error: ") and err.count("\n") == 1


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "strata.cli", "generate", "--dim", "2",
                           "--blowups", "P[];P[0];S[0,1]"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["final"]["strata"] == [[], [0], [1], [2], [0, 2], [1, 2]]
