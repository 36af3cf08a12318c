import subprocess
import sys

import pytest

from mdrkit.cli import main

MP_CERT = """\
step: [p, p -> q]
by: MP subst: {} at: [p, p -> q]
step: [q]
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_oracle_examples(capsys):
    code, out, _ = run(capsys, "oracle-mv", "[p, p->q] |> [q]")
    assert code == 0 and out == "Valid≤11\n"
    code, out, _ = run(capsys, "oracle-mv", "[p] |> [p,p]")
    assert code == 1 and "p=1/2" in out
    code, out, _ = run(capsys, "oracle-mv", "[p] |> [p,p]", "--porcelain")
    assert out == "verdict=Invalid\twitness=p=1/2\tsource=chain 3\n"


def test_derive_example(capsys):
    code, out, _ = run(capsys, "derive", "MV", "[p*q] |> [p,q]", "--depth", "2")
    assert code == 0
    assert out.splitlines() == [
        "found at depth 2 (1 step(s))",
        "step: [p * q]",
        "by: FusElim subst: {} at: [p * q]",
        "step: [p, q]",
    ]


def test_derive_failure_is_inconclusive(capsys):
    code, out, _ = run(capsys, "derive", "MV", "[p] |> [p,p]", "--depth", "4")
    assert code == 2 and "not a proof of underivability" in out
    code, out, _ = run(capsys, "derive", "MV", "[p] |> [p,p]", "--depth", "6", "--node-limit", "10", "--porcelain")
    assert code == 2 and out.startswith("status=budget")


def test_check_and_split(capsys, tmp_path):
    cert = tmp_path / "mp.txt"
    cert.write_text(MP_CERT)
    code, out, _ = run(capsys, "check", "MV_s", str(cert), "[p, p->q] |> [q]")
    assert code == 0 and out == "accepted: 2 multisets\n"
    code, out, _ = run(capsys, "check", "MV_s", str(cert), "[p, p->q] |> [r]")
    assert code == 1 and out.startswith("rejected at step 2")
    code, out, _ = run(capsys, "split", "MV_s", str(cert), "q")
    assert code == 0
    assert out.splitlines()[:3] == ["gamma-phi: [p, p -> q]", "gamma-rest: []", "tree:"]


def test_system_file(capsys, tmp_path):
    sysf = tmp_path / "sys.txt"
    sysf.write_text("rule Dup: [p] |> [p, p]\n")
    code, out, _ = run(capsys, "derive", str(sysf), "[p] |> [p,p,p]")
    assert code == 0 and "depth 3" in out


def test_structure_commands(capsys, fixtures):
    code, out, _ = run(capsys, "validate", str(fixtures / "structures.txt"))
    assert code == 0
    code, out, _ = run(capsys, "validate", str(fixtures / "bad_structures.txt"))
    assert code == 1
    code, out, _ = run(capsys, "trinity", str(fixtures / "structures.txt"))
    assert code == 0 and "chain2" in out and "N3" in out
    code, out, _ = run(capsys, "bj", str(fixtures / "structures.txt"))
    assert code == 0


def test_hypermatrix_commands(capsys, fixtures):
    hf = str(fixtures / "hyper.txt")
    code, out, _ = run(capsys, "hyper", hf, "[0] |> [1]")
    assert code == 1 and out == "fails (contextual): valuation - context [1]\n"
    code, out, _ = run(capsys, "hyper", hf, "[0] |> [1]", "--mode", "plain")
    assert code == 0
    code, out, _ = run(capsys, "hyper", hf, "[0,1] |> [1,1]", "--mode", "plain")
    assert code == 1
    code, out, _ = run(capsys, "hyper", hf, "[p] |> [p,p]", "--name", "Z3")
    assert code == 1 and "p=1/2" in out
    code, out, _ = run(capsys, "leibniz", hf, "--name", "F01")
    assert code == 0 and out.startswith("leibniz: {0} {1}")
    code, out, _ = run(capsys, "gentzen", hf, "--name", "L3top")
    assert code == 0 and out.startswith("roundtrip identity")
    code, out, _ = run(capsys, "gentzen", hf, "--name", "F01", "--dir", "to_sequents")
    assert out.splitlines() == ["()", "(0)", "(0, 1)", "(1)", "(1, 0)"]


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "[p*q,  q->r] |> [p]")
    assert code == 0 and "[p * q, q -> r] |> [p]" in out


@pytest.mark.parametrize("argv", [
    ["oracle-mv", "[p |> [q]"],
    ["derive", "MV", "[p] |> [q"],
    ["check", "MV", "/nonexistent/cert", "[p] |> [p]"],
    ["derive", "/nonexistent/system", "[p] |> [p]"],
    ["validate", "/nonexistent/file"],
    ["frobnicate"],
    [],
])
def test_input_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert err


def test_jobs_from_environment(capsys, monkeypatch, fixtures):
    monkeypatch.setenv("MDRKIT_JOBS", "2")
    code, out2, _ = run(capsys, "trinity", str(fixtures / "structures.txt"))
    monkeypatch.setenv("MDRKIT_JOBS", "1")
    code1, out1, _ = run(capsys, "trinity", str(fixtures / "structures.txt"))
    assert code == code1 == 0 and out1 == out2


def test_byte_identical_runs():
    cmd = [sys.executable, "-m", "mdrkit.cli", "oracle-mv", "[p | q] |> [p, q]", "--samples", "200", "--porcelain"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode
    assert a.stdout == b.stdout and a.stdout
