"""Command-line front end: outputs, schemas, exit codes."""

import io
import json
import subprocess
import sys

import pytest

from uvt import centre as C
from uvt.cli import ENVELOPE_SCHEMA, RESULT_SCHEMAS, main
from uvt.parser import parse_element, parse_scalar
from conftest import group


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run("--format", "json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_normal_form_examples():
    doc = run_json("nf", "E1*F1")
    qg = group(1)
    want = parse_element(qg, "F1*E1 + (K1 - K1')/(v - v^-1)")
    assert parse_element(qg, doc["result"]["normal_form"]) == want
    assert run_json("nf", "K1*K1^-1")["result"]["normal_form"] == "1"
    serre = "t^-2*E1*E1*E2 - t^-1*(v + v^-1)*E1*E2*E1 + E2*E1*E1"
    assert run_json("--type", "A2", "nf", serre)["result"]["normal_form"] == "0"


def test_pair_examples():
    assert parse_scalar(run_json("pair", "F1", "E1")["result"]["value"]) == parse_scalar("(v^-1 - v)^-1")
    assert run_json("--type", "A2", "pair", "F1", "E2")["result"]["value"] == "0"
    # the value forced by the K-E relation (see the decisions ledger)
    assert run_json("--type", "A2", "pair", "K1'", "K2")["result"]["value"] == "v^-1*t^-1"
    assert run_json("pair", "E1", "F1", "--form", "ad")["result"]["form"] == "ad"


def test_centre_examples():
    rep = run_json("--type", "A3", "criterion", "--no-solve")["result"]
    assert rep["kernel_basis"] == ["a1+a3"]
    cert = rep["certified_elements"][0]
    assert cert["central"] and parse_element(group(3), cert["element"]) == group(3).cartan((1, 0, 1), (1, 0, 1))
    z = run_json("z-lambda", "--lambda", "a")["result"]
    assert z["central"] and z["xi_matches"] and z["weyl_invariant"]
    assert z["xi"] == "K1'^-1*K1 + 1 + K1'*K1^-1"
    assert run_json("xi", "E1*F1")["result"]["xi"]
    assert run_json("casimir")["result"]["central"]
    u = run_json("--type", "A2", "uji", "--index", "1", "--z", "a1+a2")["result"]
    assert u["X_central"] and u["Y_central"]
    assert all(b["direct_sum"] for b in u["blocks"])


def test_checks():
    assert run_json("--type", "A2", "serre-check")["result"]["ok"]
    flipped = run_json("--type", "A2", "star-check")["result"]
    assert flipped["t_free"]
    printed = run_json("--type", "A2", "--star-sign", "printed", "star-check")["result"]
    assert not printed["t_free"]
    dump = run_json("--type", "A2", "module-dump", "--lambda", "a1+a2")["result"]
    assert sum(dump["dims"]) == 8


def test_flags_after_subcommand():
    a = run("--type", "A2", "--format", "json", "nf", "E1*E2")
    b = run("nf", "E1*E2", "--type", "A2", "--format", "json")
    assert a == b and a[0] == 0


def test_header_echo():
    code, out, _ = run("--type", "A2", "--depth", "3", "nf", "E1")
    assert code == 0
    assert out.splitlines()[0] == "# type A2  omega [1,-1; 0,1]  bounds depth=3  star-sign flipped  seed 20240"
    doc = run_json("--type", "A2", "--seed", "7", "criterion", "--no-solve")
    assert doc["header"]["omega"] == [[1, -1], [0, 1]]
    assert doc["header"]["seed"] == 7
    assert doc["header"]["bounds"]["eta_bound"] == 4


def test_json_is_deterministic_and_valid():
    import jsonschema

    argv = ["--format", "json", "--type", "A2", "z-lambda", "--lambda", "a1+a2"]
    _, a, _ = run(*argv)
    _, b, _ = run(*argv)
    assert a == b
    doc = json.loads(a)
    jsonschema.validate(doc, ENVELOPE_SCHEMA)
    jsonschema.validate(doc["result"], RESULT_SCHEMAS["z-lambda"])


def test_latex_output():
    code, out, _ = run("--format", "latex", "nf", "K1^-1*E1")
    assert code == 0
    body = out.splitlines()[1]
    assert "K_{1}^{-1}" in body and "E_{1}" in body


def test_custom_omega():
    code, out, _ = run("--omega", "1,-1;0,1", "nf", "E1*E2")
    assert code == 0 and "omega [1,-1; 0,1]" in out


@pytest.mark.parametrize("argv", [
    ["nf", "E1 +"],
    ["nf", "E2"],
    ["z-lambda", "--lambda", "w1"],
    ["--type", "A2", "z-lambda", "--lambda=-a1"],
    ["pair", "E1", "F1"],
    ["xi", "E1"],
    ["--type", "B7", "nf", "E1"],
    ["--omega", "1,0;0", "nf", "E1"],
    ["module-dump", "--lambda=-a"],
])
def test_input_errors_exit_one(argv):
    code, _, err = run(*argv)
    assert code == 1 and err.startswith("error:")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        run("--bogus", "nf", "E1")
    assert info.value.code == 1


def test_invariant_violation_exit_two(monkeypatch):
    monkeypatch.setattr(C, "is_central", lambda qg, u: False)
    code, _, err = run("z-lambda", "--lambda", "a")
    assert code == 2 and err.startswith("invariant violation")


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "uvt.cli", "nf", "K1*K1^-1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "1"
