import io
import json
import subprocess
import sys

import pytest

from cpsphere.cli import run
from cpsphere.fixtures import fixture_path, run_manifest

NIXON = str(fixture_path("nixon.sph"))
WEAK = str(fixture_path("nixon_weak.sph"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_exit_codes():
    code, out, _ = call("eval", "--model", NIXON, "--world", "x",
                        "--formula", "p =>[e1, e2, ~e1, ~e2] h")
    assert (code, out) == (0, "true\n")
    code, out, _ = call("eval", "--model", NIXON, "--world", "x", "--formula", "p =>[] h")
    assert (code, out) == (1, "false\n")


def test_eval_trace_and_variant():
    code, out, _ = call("eval", "--model", NIXON, "--world", "x", "--trace",
                        "--formula", "p =>[e1, e2, ~e1, ~e2] h", "--variant", "c")
    assert code == 0 and "gen 1: global update" in out


def test_usage_errors():
    assert call("eval", "--model", NIXON, "--world", "x", "--formula", "p ->")[0] == 2
    assert call("eval", "--model", NIXON, "--world", "nowhere", "--formula", "p")[0] == 2
    assert call("eval", "--model", "/no/such/file", "--world", "x", "--formula", "p")[0] == 2
    assert call("eval", "--model", NIXON, "--world", "x", "--formula", "p =>[e1] h")[0] == 2
    assert call("frobnicate")[0] == 2


def test_weights():
    code, out, _ = call("weights", "--model", NIXON, "--world", "x")
    assert code == 0
    assert "p    (0,1,1,1,1)" in out
    assert out.strip().endswith("order: ~h = ~l < ~e1 = ~e2 < ~p < p < e1 = e2 < h = l")


def test_profile():
    code, out, _ = call("profile", "--model", WEAK, "--world", "x", "--cpset", "[e1, ~e1]")
    assert code == 0
    assert "k: forcing [e1] agreement [] disagreement [e1, ~e1]" in out


def test_update_dump():
    code, out, _ = call("update-dump", "--model", NIXON, "--world", "x",
                        "--cpset", "[e1, e2, ~e1, ~e2]", "--trace")
    assert code == 0
    assert out.endswith("spheres x: {x} {x y1} {x y1 y2} {x v1 y1 y2} {x v1 v2 y1 y2}\n")
    assert "# y1 level 1 origrank 3" in out


def test_translate():
    code, out, _ = call("translate", "--model", NIXON, "--world", "x",
                        "--formula", "p =>[e1, e2, ~e1, ~e2] h")
    assert code == 0
    lines = out.splitlines()
    assert "not equivalent in other models" in lines[0]
    assert "[" not in lines[1].replace("[]", "")
    assert "original=true translated=true" in lines[2]
    code, _, err = call("translate", "--model", WEAK, "--world", "x", "--update", "i",
                        "--formula", "p =>[e1, ~e1] h")
    assert code == 2 and "weakly centered" in err


def test_compare_text_and_json():
    rows = ["p =>[e1, e2, ~e1, ~e2] h", "p =>[e1, e2, ~e1, ~e2, l, ~l] h"]
    args = ["compare", "--model", NIXON, "--world", "x"]
    for r in rows:
        args += ["--formula", r]
    code, out, _ = call(*args)
    assert code == 0
    assert out.splitlines()[2].endswith("| true  | true  | false | false")
    code, out, _ = call(*args, "--format", "jsonlines")
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[1] == {"formula": "p =>[e1, e2, l, ~e1, ~e2, ~l] h", "CP": True, "NC": True, "MS": False, "DIS": False}


def test_sweep_text_and_json():
    code, out, _ = call("sweep", "--max-worlds", "2", "--suite", "axioms", "--centering", "weak",
                        "--update", "d")
    assert code == 0 and "VW update d" in out
    code, out, _ = call("sweep", "--max-worlds", "2", "--suite", "theorems",
                        "--centering", "weak", "--show-logged", "--format", "jsonlines")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert set(rec) == {"check", "model", "world", "formula", "detail"}


def test_sweep_overflow_is_usage_error():
    code, _, err = call("sweep", "--max-worlds", "3", "--centering", "weak", "--cap", "10")
    assert code == 2


def test_fixtures_command():
    code, out, _ = call("fixtures")
    assert code == 0
    assert out.strip().endswith(f"{len(run_manifest())}/{len(run_manifest())} fixtures pass")
    code, out, _ = call("fixtures", "--format", "jsonlines")
    rec = json.loads(out.splitlines()[0])
    assert set(rec) == {"fixture", "model", "world", "formula", "update", "expected", "actual"}


def test_failed_fixture_exit_code(tmp_path):
    bad = tmp_path / "m.json"
    bad.write_text(json.dumps({"cases": [{"name": "wrong", "kind": "sat", "model": "nixon.sph",
                                          "world": "x", "formula": "p", "expected": True}]}))
    assert call("fixtures", "--manifest", str(bad))[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cpsphere", "eval", "--model", NIXON,
                        "--world", "x", "--formula", "~p"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "true\n"


def test_manifest_all_pass():
    results = run_manifest()
    assert len(results) >= 40
    assert [r["fixture"] for r in results if not r["pass"]] == []
