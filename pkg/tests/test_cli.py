"""Exit-code contract of the command line, one test per path."""

import json
import subprocess
import sys

import pytest

from gkmcalc.builtins import make_complete_gkm
from gkmcalc.cli import main
from gkmcalc.document import complex_to_dict, write_document
from gkmcalc.graphs import build_regular_graph, validate_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


# success


def test_validate_fig3_lists_witnesses(capsys, tmp_path):
    out_file = tmp_path / "v.json"
    code, out, _ = run(capsys, "validate", "fig3.json", "--out", str(out_file))
    assert code == 0
    assert "congruence witnesses" in out
    assert "divisive: no (r~ = 3 on v1->v0)" in out
    res = json.loads(out_file.read_text())
    assert res["ok"] and res["witnesses"]
    assert all(isinstance(w[2], int) and w[2] > 0 for w in res["witnesses"])


def test_validate_graph_only(capsys):
    code, out, _ = run(capsys, "validate", "fig2")
    assert code == 0 and "no GKM data" in out


def test_filter_fig1(capsys, tmp_path):
    out_file = tmp_path / "f.json"
    code, out, _ = run(capsys, "filter", "fig1.json", "--seed", "b0", "--out", str(out_file))
    assert code == 0
    assert json.loads(out_file.read_text())["degrees"] == [0, 1, 2, 2, 3, 4]
    assert "sum of d_j = 12" in out


def test_basis_fig3_8422(capsys, tmp_path):
    out_file = tmp_path / "b.json"
    code, out, _ = run(capsys, "basis", "--theory", "H", "fig3_8422.json", "--out", str(out_file))
    assert code == 0
    assert "4 basis classes, all verified by is_member" in out
    res = json.loads(out_file.read_text())
    assert len(res["basis"]) == 4 and all(b["member"] for b in res["basis"])
    assert res["basis"][1]["values"]["v1"] == "-y1 + y2 - 2*y3"


@pytest.mark.parametrize("theory", ["K", "MU"])
def test_basis_other_theories(capsys, theory):
    code, out, _ = run(capsys, "basis", "--theory", theory, "--trunc", "2", "builtin:complete:3")
    assert code == 0 and "3 basis classes" in out


def test_basis_rational_mode(capsys):
    code, out, _ = run(capsys, "basis", "--theory", "H", "--rational", "builtin:fig3:2,3,1,1")
    assert code == 0 and "theory H(Q)" in out


def test_member_decomposes(capsys, tmp_path):
    cls = tmp_path / "x.json"
    cls.write_text(json.dumps({"values": {"v0": "y1", "v1": "y2"}}))
    code, out, _ = run(capsys, "member", "builtin:complete:2", "--class", str(cls))
    assert code == 0
    assert "p_0 = y1" in out and "p_1 = -1" in out


def test_export_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "export-dot", "fig2")
    assert code == 0
    assert out.startswith('graph "gkm" {')
    assert '"b3" [label="3: b3"]' in out
    assert '"b4" -- "b1" [color=red' in out
    target = tmp_path / "g.dot"
    code, _, _ = run(capsys, "export-dot", "builtin:fig3", "--out", str(target))
    assert code == 0 and target.read_text().count("--") == 5


# mathematical failures -> 2


def test_no_filtration(capsys):
    code, _, err = run(capsys, "filter", "triangle_edges_complex.json")
    assert code == 2 and "NoFiltration" in err


def test_not_divisive(capsys):
    code, _, err = run(capsys, "basis", "--theory", "H", "builtin:fig3:2,3,1,1")
    assert code == 2 and "NotDivisive" in err


def test_non_member(capsys, tmp_path):
    cls = tmp_path / "x.json"
    cls.write_text(json.dumps({"values": {"v0": "0", "v1": "1"}}))
    out_file = tmp_path / "m.json"
    code, out, _ = run(capsys, "member", "builtin:complete:2", "--class", str(cls),
                       "--out", str(out_file))
    assert code == 2 and "not a member" in out
    assert json.loads(out_file.read_text())["witness"] == ["v1", "v0", "1"]


def test_invalid_gkm_data(capsys, tmp_path):
    doc = complex_to_dict(make_complete_gkm(3))
    doc["axial"]["v0->v1"]["alpha"] = ["-1/5", "1/5", "0"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 2 and "[reversal]" in out


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "basis", "builtin:complete:4", "--degree-cap", "1")
    assert code == 2 and "CapExceeded" in err


def test_disconnected(capsys, tmp_path):
    g = build_regular_graph("two", ["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    p = tmp_path / "two.json"
    write_document(validate_complex([g]), p)
    code, _, err = run(capsys, "filter", str(p))
    assert code == 2 and "Disconnected" in err


# usage and input errors -> 1


@pytest.mark.parametrize("argv", [
    ["basis", "no_such_file.json"],
    ["basis", "builtin:nope"],
    ["basis", "builtin:fig3:a,b"],
    ["basis", "builtin:fig3:1,2"],
    ["basis", "fig1"],
    ["member", "builtin:complete:2"],
    ["filter", "fig2", "--seed", "zz"],
    ["basis", "--theory", "MU", "--trunc", "7", "builtin:complete:2"],
    ["basis", "--theory", "K", "--rational", "builtin:complete:2"],
    ["member", "builtin:complete:2", "--class", "missing_class.json"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_schema_error(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"vertices": ["a"], "members": [
        {"name": "m", "vertices": ["a", "ghost"], "edges": []}]}))
    code, _, err = run(capsys, "validate", str(p))
    assert code == 1 and "SchemaError" in err and "/members/0/vertices/1" in err


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["basis"], ["basis", "--theory", "Q", "fig3"], ["basis", "fig3", "--trunc", "x"],
])
def test_argparse_errors_exit_one(capsys, argv):
    assert usage(capsys, *argv) == 1


def test_help_exits_zero(capsys):
    assert usage(capsys, "--help") == 0


def test_console_entry_point_and_logging(tmp_path):
    env = {"GKM_LOG": "debug", "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "gkmcalc", "basis", "builtin:complete:2"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert "2 basis classes" in proc.stdout
    assert "DEBUG" in proc.stderr
    proc = subprocess.run([sys.executable, "-m", "gkmcalc", "filter", "triangle_edges_complex"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
