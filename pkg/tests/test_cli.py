import json
import subprocess
import sys

import pytest

from modtv import builtins
from modtv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tv_vec_z2(capsys):
    code, out, _ = run(capsys, "tv", "vec_z2", "s3_boundary4simplex")
    assert code == 0 and out.splitlines()[0] == "1"


def test_tv_fib_same_on_moved_file(capsys):
    _, a, _ = run(capsys, "tv", "fib", "s3_boundary4simplex", "--json")
    _, b, _ = run(capsys, "tv", "fib", "s3_pachner", "--json")
    va, vb = json.loads(a)["value"], json.loads(b)["value"]
    assert va["exact"] == vb["exact"] == {"num": [3, 0, 1, 1], "den": 5}


def test_tv_accepts_paths(capsys):
    code, out, _ = run(capsys, "tv", str(builtins.backend_path("ising")), str(builtins.backend_path("s3_pachner")))
    assert code == 0 and out.splitlines()[0] == "1/2"


@pytest.mark.parametrize("backend,check", [("fib_bad_gram", "check_cancellation_23"),
                                           ("fib_bad_tet", "check_even_permutation")])
def test_tv_refuses_corrupt_backend(capsys, backend, check):
    code, out, err = run(capsys, "tv", backend, "s3_boundary4simplex")
    assert code == 3 and out == ""
    doc = json.loads(err)
    assert doc["witness"]["check"] == check and doc["witness"]["witness"]


def test_schema_error(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "tv", str(p), "s3_boundary4simplex")
    assert code == 2 and json.loads(err)["error"] == "SchemaError"
    code, _, err = run(capsys, "validate", "no_such_backend")
    assert code == 2


def test_unsupported_decoration(capsys):
    code, _, err = run(capsys, "tv", "fib", "lens_one_vertex")
    assert code == 3 and json.loads(err)["error"] in ("NotFound", "NotQuasiRegular")


@pytest.mark.parametrize("name,ok", [("fib", True), ("vec_s3", True), ("ising", True), ("fib_bad_b", False),
                                     ("fib_bad_d", False), ("fib_bad_tet", False), ("fib_bad_gram", False)])
def test_validate(capsys, name, ok):
    code, out, _ = run(capsys, "validate", name, "--json")
    doc = json.loads(out)
    assert doc["ok"] is ok and code == (0 if ok else 1)
    checks = {r["check"] for r in doc["checks"]}
    assert checks == {"validate_b", "check_chromatic", "check_even_permutation",
                      "check_cancellation_12", "check_cancellation_23"}
    for r in doc["checks"]:
        if not r["ok"]:
            assert r["witness"]


def test_validate_bad_b_only_fails_b(capsys):
    _, out, _ = run(capsys, "validate", "fib_bad_b", "--json")
    failing = {r["check"] for r in json.loads(out)["checks"] if not r["ok"]}
    assert failing == {"validate_b"}


def test_fuzz_pass_and_determinism(capsys):
    a = run(capsys, "fuzz", "vec_z2", "s3_boundary4simplex", "--moves", "20", "--seed", "7")
    b = run(capsys, "fuzz", "vec_z2", "s3_boundary4simplex", "--moves", "20", "--seed", "7")
    assert a[0] == 0 and a[1] == b[1]
    assert a[1].splitlines()[-1].startswith("PASS 20 moves")


def test_fuzz_reports_first_bad_move(capsys):
    code, out, _ = run(capsys, "fuzz", "fib_bad_tet", "s3_boundary4simplex", "--moves", "30", "--seed", "7", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["ok"] is False and doc["first_bad"] is not None


def test_normal_form(capsys, tmp_path):
    doc = {
        "group": {"builtin": "z6"},
        "surface": "torus_one_vertex",
        "source": {"base": ["p"], "labels": {"a": "1", "b": "2", "c": "3"}},
        "word": [{"gauge": {"p": "2"}}, {"gauge": {"p": "1"}}],
    }
    p = tmp_path / "w.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "normal-form", str(p), "--json")
    res = json.loads(out)
    assert code == 0 and res["agrees"]
    assert res["normal_form"]["gauge"] == {"p": "3"}


def test_normal_form_not_composable(capsys, tmp_path):
    doc = {
        "group": {"builtin": "z6"},
        "surface": "torus_two_vertex",
        "source": {"base": ["p"], "labels": {k: "0" for k in ["a", "b", "c", "qA", "qB", "qC"]}},
        "word": [{"restrict": {"from": ["q"], "to": ["p"], "labels": {k: "0" for k in ["a", "b", "c", "qA", "qB", "qC"]}}}],
    }
    p = tmp_path / "w.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "normal-form", str(p))
    assert code == 5 and json.loads(err)["error"] == "NotComposable"


def test_rep_check(capsys):
    code, out, _ = run(capsys, "rep-check", "--words", "100", "--bijections", "40", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["normal_form_failures"] == 0 and doc["bijection_failures"] == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "modtv", "tv", "vec_s3", "s3_boundary4simplex"],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "1"
