import json
import subprocess
import sys
from pathlib import Path

import pytest

from serretype.algebra import algebra_iso
from serretype.cli import format_spec, main, parse_spec
from serretype.errors import ParseError

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run_cli(capsys, *argv):
    code = main([str(x) for x in argv])
    out = capsys.readouterr().out
    return code, json.loads(out), out


@pytest.mark.parametrize("text,line,col", [
    ("field q\nquiver vertices 1 2\narrow a 1\n", 3, 10),
    ("field q\nquiver vertices 1 2\narrow a 1 3\n", 3, 11),
    ("field r\n", 1, 7),
    ("field q\nquiver vertices 1 2\narrow a 1 2\nmodule M dim 1\naction e1 1 2\n", 5, 15),
])
def test_parse_errors_point_at_the_token(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text("field q\nquiver vertices 1 2\narrow a 1\n")
    code, rep, _ = run_cli(capsys, "classify", bad, "--simples", "1")
    assert code == 3 and rep["error"] == {"kind": "ParseError", "line": 3, "col": 10,
                                          "expected": "target vertex"}


@pytest.mark.parametrize("name", sorted(p.name for p in SPECS.glob("*.spec")))
def test_format_round_trip(name):
    spec = parse_spec((SPECS / name).read_text())
    again = parse_spec(format_spec(spec))
    assert again.field == spec.field
    assert again.algebra.table == spec.algebra.table
    assert again.algebra.idempotents == spec.algebra.idempotents
    assert algebra_iso(spec.algebra, again.algebra) is not None
    assert sorted(again.modules) == sorted(spec.modules)


def test_classify_command(capsys):
    code, rep, _ = run_cli(capsys, "classify", SPECS / "t2.spec", "--simples", "1")
    assert code == 0 and rep["ambient"] == "type in mod A"
    assert rep["result"]["type"] == {"m": 1, "n": 2}
    assert rep["timing_ms"] is None
    code, rep, _ = run_cli(capsys, "classify", SPECS / "kxk.spec", "--simples", "none")
    assert rep["result"]["type"] == "infinite" and rep["result"]["split_certificate"]["split"]


def test_classify_all_command(capsys):
    code, rep, _ = run_cli(capsys, "classify-all", SPECS / "a3.spec")
    assert code == 0
    types = {tuple(r["simples"]): r["type"] for r in rep["result"]["rows"]}
    assert types[(2,)] == {"m": 1, "n": 1}
    assert types[(1,)] == {"m": 2, "n": 1} and types[(3,)] == {"m": 1, "n": 2}
    assert types[()] == types[(1, 2, 3)] == "infinite"


def test_recollement_commands(capsys):
    code, rep, _ = run_cli(capsys, "recollement", SPECS / "a2.spec", "--idempotent", "1")
    assert code == 0 and rep["result"]["verified"]
    code, rep, _ = run_cli(capsys, "recollement", SPECS / "kxk.spec", "--idempotent", "2",
                           "--split")
    assert rep["result"]["split"] and rep["witnesses"]["not_split"] is None
    code, rep, _ = run_cli(capsys, "recollement", SPECS / "t2.spec", "--idempotent", "2",
                           "--split")
    assert rep["result"]["split"] is False and rep["witnesses"]["not_split"]["functor"] == "i^*"
    code, rep, _ = run_cli(capsys, "recollement", SPECS / "a3.spec", "--idempotent", "2",
                           "--battery")
    assert code == 0 and rep["result"]["right"]["consistent"]


def test_torsion_extend_and_remark54(capsys):
    code, rep, _ = run_cli(capsys, "torsion", SPECS / "a2.spec", "--kind", "killed",
                           "--idempotent", "1", "--module", "P1")
    assert code == 0 and rep["result"]["t_decomposition"] == [1, 2, 1]
    code, rep, _ = run_cli(capsys, "extend", SPECS / "t2.spec", "--idempotent", "1")
    assert code == 0 and rep["result"]["extended"]
    for name in ("t2.spec", "t2_f5.spec"):
        code, rep, _ = run_cli(capsys, "remark54", SPECS / name, "--timing")
        assert code == 0 and rep["result"]["iso_found"] and rep["result"]["merged_certified"]
        assert isinstance(rep["timing_ms"], float)


def test_bad_indices_exit_code(capsys):
    code, rep, _ = run_cli(capsys, "classify", SPECS / "a2.spec", "--simples", "5")
    assert code == 2 and "error" in rep


def test_stdin_and_console_script_are_deterministic():
    text = (SPECS / "t2.spec").read_text()
    cmd = [sys.executable, "-m", "serretype", "remark54", "-", "--seed", "3"]
    outs = [subprocess.run(cmd, input=text, capture_output=True, text=True, check=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] and json.loads(outs[0])["result"]["iso_found"]
