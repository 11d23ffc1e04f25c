import io
import json
import subprocess
import sys

import pytest

from affvir.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = main(list(argv), out=out, err=err)
    return rc, out.getvalue(), err.getvalue()


GOLDENS = [
    (["act", "--family=Omega", "--x=h[0]", "--g=s*t"], 0, "t*(s*t) = s*t^2\n"),
    (["simplicity", "--family=Theta", "--beta=1/2"], 1,
     "Theta(L, A, 1/2, G): not simple; 2*beta = 1 in Z+; submodule generator (t^2 - 1)/4\n"),
    (["verify-axioms", "--family=Delta", "--window=2", "--degree=2"], 0,
     "verify-axioms Delta(L, A, B, G) window=2 degree=2: pass (3969 checks)\n"),
]


@pytest.mark.parametrize("argv, rc, text", GOLDENS, ids=lambda v: v[0] if isinstance(v, list) else None)
def test_goldens(argv, rc, text):
    got_rc, out, err = run(*argv)
    assert (got_rc, out, err) == (rc, text, "")


def test_other_verbs():
    rc, out, _ = run("iso", "Omega(2,3,1,0)", "Omega(2,3,-2,0)")
    assert rc == 0 and out == "Omega(2, 3, 1, 0) vs Omega(2, 3, -2, 0): isomorphic (beta' = -beta - 1)\n"
    rc, out, _ = run("iso", "Omega(2,3,1,0)", "Delta(2,3,1,0)")
    assert rc == 1 and "[extension]" in out
    rc, out, _ = run("generate-one", "--family=Omega", "--g=t")
    assert rc == 0 and out == "u = 1/2 - (1/(2*A))*e[0]\ncheck: u . (t) = 1\n"
    rc, out, _ = run("submodule", "--family=Theta", "--beta=1")
    assert rc == 0 and out.startswith("Theta(L, A, 1, G): V = C[s,t]*((t^3 - 4*t)/8)")
    rc, out, _ = run("lemma-check", "--family=Theta", "--index=-2", "--power=3")
    assert rc == 0 and out == "lemma-check Theta(L, A, B, G) degree=3: pass (64 checks)\n"
    rc, out, _ = run("classify", "--candidate", "E0 = A*(h0/2 + B); F0 = -(1/A)*(h0/2 - B)")
    assert rc == 0 and out.startswith("Theta(L, A, beta, G) with beta in {B}")
    rc, out, _ = run("classify", "--candidate", "E0 = h0^3; F0 = 1")
    assert rc == 1 and out == "rejected (degree): h0-degrees (m, n) = (3, 0) give m + n = 3, not 2\n"


def test_set_bindings():
    rc, out, _ = run("--set", "L=2", "act", "--family=Omega", "--x=h[1]", "--g=s")
    assert rc == 0 and out == "h[1] . (s) = 2*s*t - 2*t\n"
    rc, _, err = run("--set", "A=0", "act", "--family=Omega", "--x=h[0]", "--g=s")
    assert rc == 2 and err == "affvir: error: A must be nonzero\n"


def test_errors_exit_2():
    rc, out, err = run("act", "--family=Omega", "--x=e[1", "--g=s")
    assert rc == 2 and out == ""
    assert err == "affvir: error: line 1, column 4: unexpected end of input (expected ']')\n"
    rc, _, err = run("classify", "--candidate", "@/nonexistent/file")
    assert rc == 2 and err.startswith("affvir: error:")
    rc, _, err = run("no-such-verb")
    assert rc == 2 and "invalid choice" in err


def test_structure_errors_are_reports():
    rc, out, _ = run("generate-one", "--family=Theta", "--beta=1/2", "--g=t^2-1")
    assert rc == 1 and out.startswith("generate-one: error (NotSimple)")
    rc, out, _ = run("generate-one", "--family=Omega", "--g=0")
    assert rc == 1 and "ZeroVector" in out


def test_json_and_records():
    rc, out, _ = run("--format=json", "iso", "Omega(2,3,1,0)", "Omega(2,3,-2,0)")
    doc = json.loads(out)
    assert rc == 0 and doc["status"] == "pass"
    assert doc["details"][0] == {"check": "iso", "inputs": "Omega(2, 3, 1, 0); Omega(2, 3, -2, 0)",
                                 "expected": "isomorphic", "got": "isomorphic", "status": "pass"}
    rc, out, _ = run("--format=records", "simplicity", "--family=Theta", "--beta=1/2")
    lines = out.splitlines()
    assert rc == 1
    assert lines[0] == "# simplicity Theta(L, A, 1/2, G)\tstatus=fail\tchecked=1"
    assert lines[-1].split("\t")[:2] == ["fail", "simplicity"]


def test_format_env(monkeypatch):
    monkeypatch.setenv("AFFVIR_FORMAT", "json")
    rc, out, _ = run("simplicity", "--family=Omega")
    assert rc == 0 and json.loads(out)["status"] == "pass"


def test_candidate_file(tmp_path):
    path = tmp_path / "cand.txt"
    path.write_text("E0 = 3\nF0 = -(1/12)*h0^2 - (1/6)*h0 + 2/3\n")
    rc, out, _ = run("classify", "--candidate", f"@{path}")
    assert rc == 0 and out.startswith("Omega(L, 3, beta, G) with beta in {1, -2}")


def test_deterministic():
    assert run("verify-axioms", "--lie", "--window=1") == run("verify-axioms", "--lie", "--window=1")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "affvir", "act", "--family=Omega", "--x=h[0]", "--g=s*t"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "t*(s*t) = s*t^2\n"
