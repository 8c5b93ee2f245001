"""Spec parsing, command output, exit codes and the claim runner."""

import io
import json
import os
import subprocess
import sys

import pytest

from realgraph import cli, verify
from realgraph.constructions import GroupSpec, MatrixElem, make_semidirect


def run_cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "realgraph.cli", *argv],
                          capture_output=True, text=True, env=env)


def call(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text,spec", [
    ("named dihedral 6", GroupSpec("named", name="dihedral", param=6)),
    ("named:dihedral:6", GroupSpec("named", name="dihedral", param=6)),
    ("named:quaternion8", GroupSpec("named", name="quaternion8", param=8)),
    ("paper g150", GroupSpec("paper_g150")),
    ("paper:h199650", GroupSpec("paper_h199650")),
    ("twisted 4", GroupSpec("twisted", param=4)),
])
def test_parse_token_specs(text, spec):
    assert cli.parse_spec(text) == spec


@pytest.mark.parametrize("text,line,col", [
    ("named:dihedrl:6", 1, 7),
    ("named:cyclic:x", 1, 14),
    ("bogus", 1, 1),
    ("paper:g151", 1, 1),
    ("", 1, 1),
    ("perm n=3\n0 1\n", 2, 1),
    ("matrix p=5\n1 0\n0 1\n", 1, 11),
    ("perm n=3\n0 1 q\n", 2, 5),
])
def test_parse_errors_locate(text, line, col):
    with pytest.raises(cli.SpecError) as ei:
        cli.parse_spec(text)
    assert (ei.value.line, ei.value.col) == (line, col)
    assert str(ei.value).startswith(f"line {line}, column {col}:")


def test_file_specs(tmp_path):
    spec = cli.parse_spec("# s3\nperm n=3\n1,0,2\n1 2 0  # a 3-cycle\n")
    assert spec == GroupSpec("permutation", n=3, gens=((1, 0, 2), (1, 2, 0)))
    f = tmp_path / "g.txt"
    f.write_text("semidirect p=5 n=2\nmatrix p=5 n=2\n0 1\n1 0\n0 4\n1 4\n")
    spec = cli.resolve(f"file:{f}")
    assert spec.kind == "semidirect" and len(spec.gens) == 2
    code = cli.main(["report", f"file:{f}"])
    assert code == 0


def test_report_text_and_json(capsys):
    code, out, _ = call(capsys, "report", "paper:g150")
    assert code == 0
    lines = dict(l.split(": ", 1) for l in out.splitlines())
    assert list(lines) == list(cli.REPORT_KEYS)
    assert lines["real_orders"] == "[1,2,3,5]"
    assert lines["components_real"] == "3"
    code, out, _ = call(capsys, "report", "paper:g150", "--json")
    rep = json.loads(out)
    assert rep["order"] == 150 and rep["satisfies_P"] and rep["center_order"] == 1
    assert rep["derived_series_orders"] == [150, 75, 25, 1]


def test_report_dihedral():
    rep = cli.build_report(cli.cons.build(cli.parse_spec("named dihedral 6")))
    assert rep["satisfies_P"] is False and rep["order"] == 12


def test_graph_outputs(capsys):
    code, out, _ = call(capsys, "graph", "named:cyclic:6", "--full", "--dot")
    assert (code, out) == (0, "graph G { 2; 3; 2 -- 3; }\n")
    code, out, _ = call(capsys, "graph", "named:cyclic:6", "--real")
    assert out == "graph G { 2; }\n"
    code, out, _ = call(capsys, "graph", "paper:g150", "--real", "--json")
    assert json.loads(out) == {"vertices": [2, 3, 5], "edges": [], "components": [[2], [3], [5]]}


def test_export(capsys):
    code, out, _ = call(capsys, "export-gap", "named:symmetric:3")
    assert code == 0 and out.splitlines()[0] == "order: 6"
    assert all(l.startswith("perm: ") for l in out.splitlines()[1:])


@pytest.mark.parametrize("argv,code", [
    (["report", "twisted:8"], cli.EXIT_RESOURCE),
    (["report", "twisted:3"], cli.EXIT_USAGE),
    (["report", "named:nope:3"], cli.EXIT_USAGE),
    (["report", "named:symmetric:5", "--cap", "100"], cli.EXIT_RESOURCE),
    (["report", "paper:h199650", "--cap", "1000"], cli.EXIT_RESOURCE),
    (["verify-paper", "--only", "nope"], cli.EXIT_USAGE),
    (["report", "file:/nonexistent/spec"], cli.EXIT_USAGE),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = call(capsys, *argv)
    assert got == code and err.startswith("realgraph:")


def test_usage_error_from_argparse(capsys):
    with pytest.raises(SystemExit) as ei:
        cli.main(["graph", "named:cyclic:6"])
    assert ei.value.code == 2


def test_unknown_name_column(capsys):
    _, _, err = call(capsys, "report", "named:nope:3")
    assert "line 1, column 7" in err


def test_verify_only_selection(capsys):
    code, out, _ = call(capsys, "verify-paper", "--only", "lemma_suff_cond")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(l.startswith("lemma_suff_cond.") and l.endswith("PASS") for l in lines)
    assert "lemma_suff_cond.d6 = 18 PASS" in lines
    code, out, _ = call(capsys, "verify-paper", "--only", "g150.order,field")
    assert out.splitlines()[-1] == "g150.order = 150 PASS"
    assert out.splitlines()[0].startswith("field.")


def test_corrupted_group_fails_with_witness():
    # drop the 3-cycle: the acting group is C2, so the product has order 50
    wrong = make_semidirect(5, 2, [MatrixElem.checked(5, ((0, 1), (1, 0)))])
    buf = io.StringIO()
    passed, failed = verify.run(out=buf, suites=[verify.Suite("g150", lambda ctx: verify.g150_claims(wrong))])
    lines = buf.getvalue().splitlines()
    assert failed > 0 and passed + failed == len(lines)
    assert 'g150.order = 50 FAIL (witness: {"expected":150})' in lines
    assert any(l.startswith("g150.normal_subgroup_orders") and "FAIL (witness:" in l for l in lines)


def test_claim_line_format():
    assert verify.line(verify.Claim("a.b", [1, 2], True)) == "a.b = [1,2] PASS"
    assert verify.line(verify.Claim("a.b", 3, False, {"x": 1})) == 'a.b = 3 FAIL (witness: {"x":1})'


def test_cross_process_determinism():
    outs = []
    for seed in ("1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        r = run_cli("report", "named:symmetric:4", "--json", env=env)
        s = run_cli("graph", "paper:g150", "--full", env=env)
        assert r.returncode == s.returncode == 0
        outs.append(r.stdout + s.stdout)
    assert outs[0] == outs[1]


def test_entry_point_help():
    r = run_cli("--help")
    assert r.returncode == 0 and "verify-paper" in r.stdout
