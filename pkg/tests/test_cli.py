import json
import subprocess
import sys

import jsonschema
import pytest

from ncps.cli import main
from ncps.render import NCPOLY_SCHEMA
from ncps.verifier import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- golden outputs --------------------------------------------------------------


def test_comm_kinetic(capsys):
    assert run(capsys, "comm", "x", "p^2/(2*m)") == (0, "i*hbar*m^-1*p\n", "")


def test_comm_x_x(capsys):
    assert run(capsys, "comm", "x", "x") == (0, "0\n", "")


def test_evolve_free_particle(capsys):
    code, out, _ = run(capsys, "evolve", "--observable", "x", "--hamiltonian", "p^2/(2*m)", "--order", "3")
    assert code == 0
    assert out == "x\nm^-1*p\n0\n0\n"


def test_normalize_and_comm_axiom(capsys):
    assert run(capsys, "normalize", "p*x") == (0, "x*p - i*hbar\n", "")
    assert run(capsys, "comm", "x", "p") == (0, "i*hbar\n", "")
    assert run(capsys, "normalize", "p*x", "[x^2, p^2]")[1] == "x*p - i*hbar\n4*i*hbar*x*p + 2*hbar^2\n"


def test_poisson(capsys):
    assert run(capsys, "poisson", "x^2", "p^2") == (0, "4*x*p\n", "")
    code, out, err = run(capsys, "poisson", "x*p - i*hbar", "p")
    assert (code, out) == (0, "p\n")
    assert "classical limit" in err


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "ncps", "comm", "x", "p^2/(2*m)"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "i*hbar*m^-1*p\n"


# -- JSON ----------------------------------------------------------------------------


def test_json_outputs_validate(capsys):
    _, out, _ = run(capsys, "normalize", "--json", "p*x")
    obj = json.loads(out)
    jsonschema.validate(obj, NCPOLY_SCHEMA)
    assert len(obj["terms"]) == 2

    _, out, _ = run(capsys, "evolve", "--json", "--observable", "x", "--hamiltonian", "p^2/(2*m)", "--order", "2")
    obj = json.loads(out)
    assert obj["order"] == 2 and len(obj["terms"]) == 3
    for t in obj["terms"]:
        jsonschema.validate(t, NCPOLY_SCHEMA)

    code, out, _ = run(capsys, "verify-paper", "--json", "--seed", "7", "--cases", "1", "--degree", "1")
    assert code == 0
    jsonschema.validate(json.loads(out), REPORT_SCHEMA)


def test_format_flags_are_exclusive(capsys):
    code, _, err = run(capsys, "normalize", "--json", "--text", "x")
    assert code == 2 and "not allowed" in err


# -- verify-paper and oracle ----------------------------------------------------------


def test_verify_paper_text(capsys):
    code, out, _ = run(capsys, "verify-paper", "--seed", "7", "--cases", "1", "--degree", "1")
    assert code == 0
    assert out.rstrip().endswith("PASS")


def test_verify_paper_deterministic(capsys):
    args = ("verify-paper", "--seed", "5", "--cases", "4", "--degree", "3", "--json")
    assert run(capsys, *args) == run(capsys, *args)


def test_verify_paper_mutation_exit_code(capsys, monkeypatch):
    import ncps.algebra

    monkeypatch.setattr(ncps.algebra, "_PX_SIGN", 1)
    code, out, _ = run(capsys, "verify-paper", "--seed", "7", "--cases", "1", "--degree", "1")
    assert code == 1
    assert "eq2                      FAIL" in out


def test_oracle_subcommand(capsys):
    code, out, _ = run(capsys, "oracle", "--dim", "16", "--check", "[x,p] == i*hbar")
    assert code == 0 and out.startswith("pass ") and "block=14" in out
    code, out, _ = run(capsys, "oracle", "--dim", "16", "--check", "[x,p] == 0")
    assert code == 1 and out.startswith("fail max_deviation=1.000e+00")
    code, out, _ = run(capsys, "oracle", "--json", "--params", "hbar=2,k=3", "--check", "[x, k*p] == k*i*hbar")
    assert code == 0 and json.loads(out)["pass"] is True


def test_oracle_usage_errors(capsys):
    assert run(capsys, "oracle", "--check", "x")[0] == 2
    assert run(capsys, "oracle", "--dim", "1", "--check", "x == x")[0] == 2
    assert run(capsys, "oracle", "--params", "m=-1", "--check", "x == x")[0] == 2
    assert run(capsys, "oracle", "--params", "m", "--check", "x == x")[0] == 2
    assert run(capsys, "oracle", "--dim", "4", "--check", "x^3 == x^3")[0] == 2


# -- errors -----------------------------------------------------------------------------


def test_parse_error_exit_2_with_caret(capsys):
    code, out, err = run(capsys, "normalize", "x*")
    assert code == 2 and out == ""
    assert err == "error: 1:3: unexpected end of input (expected one of: '(', '[', 'hbar', 'i', 'p', 'x', identifier, number)\n  x*\n    ^\n"


def test_lowering_error_points_at_denominator(capsys):
    code, _, err = run(capsys, "normalize", "x/(1+m)")
    assert code == 2
    lines = err.splitlines()
    assert lines[1] == "  x/(1+m)"
    assert lines[2] == "    ^^^^^"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["normalize"],
        ["comm", "x"],
        ["comm", "x", "p", "x"],
        ["normalize", "--frobnicate", "x"],
        ["evolve", "--observable", "x"],
        ["evolve", "--observable", "x", "--hamiltonian", "p", "--order", "65"],
        ["evolve", "--observable", "x", "--hamiltonian", "i*hbar*p"],
        ["verify-paper", "--degree", "9"],
        ["verify-paper", "--cases", "0"],
        ["normalize", "--file", "/nonexistent/file"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_file_input(capsys, tmp_path):
    f = tmp_path / "exprs.txt"
    f.write_text("p*x\n\n[x, p]\n")
    assert run(capsys, "normalize", "--file", str(f)) == (0, "x*p - i*hbar\ni*hbar\n", "")
    g = tmp_path / "pair.txt"
    g.write_text("x\np^2/(2*m)\n")
    assert run(capsys, "comm", "--file", str(g))[1] == "i*hbar*m^-1*p\n"
    h = tmp_path / "check.txt"
    h.write_text("[x^2, p^2] == 4*i*hbar*x*p + 2*hbar^2\n")
    assert run(capsys, "oracle", "--file", str(h))[0] == 0
