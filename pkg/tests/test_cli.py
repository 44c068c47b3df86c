import json
import subprocess
import sys

import pytest

from dahalimit import cli
from dahalimit.delta import CheckResult, SuiteReport
from dahalimit.polyring import Poly
from dahalimit.suites import SUITES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_apply_weight_example(capsys):
    code, out, _ = run(capsys, "apply", "Yt1", "--n", "3", "--poly", "x1")
    assert code == cli.EXIT_OK
    assert out.strip() == "q*t*x1"


def test_relations_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--n", "3", "--degree", "3")
    assert code == cli.EXIT_OK
    assert "fail" not in out.lower().replace("0 failed", "")


def test_limit_tilde_e_stabilizes(capsys):
    code, out, _ = run(capsys, "limit", "tilde-e", "--mu", "1", "--levels", "2..5", "--json")
    assert code == cli.EXIT_OK
    rep = json.loads(out)
    assert rep["verdict"] == "stabilized-exact"
    assert [k["key"] for k in rep["keys"]] == ["(1|)"]
    assert rep["levels"] == [2, 3, 4, 5]


def test_compute_e_json_schema(capsys):
    code, out, _ = run(capsys, "compute-e", "--mu", "1,0", "--n", "2", "--json")
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert data["spectrum"] == ["q/t", "1"]
    assert Poly.from_json(data) == Poly.parse("x1", 2)


def test_relations_json_report_schema(capsys):
    code, out, _ = run(capsys, "relations", "--n", "2", "--degree", "2", "--json")
    assert code == cli.EXIT_OK
    for entry in json.loads(out):
        assert {"relation", "level_or_exact", "status", "witness"} <= set(entry)
        assert entry["status"] == "pass"


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "--poly", "x1*x2 + x1*x3 + x2^2 + x3^2", "--n", "3",
                       "--k", "1", "--json")
    assert code == cli.EXIT_OK
    terms = {(tuple(e["mu"]), tuple(e["lambda"])): e["coeff"] for e in json.loads(out)["terms"]}
    assert terms == {((), (2,)): "1", ((1,), (1,)): "1", ((2,), ()): "-2"}


def test_psi_and_restricted_modes_agree(capsys):
    _, a, _ = run(capsys, "apply", "e1[Delta]", "--n", "4", "--poly", "x1", "--psi")
    _, b, _ = run(capsys, "apply", "e1[Delta]", "--n", "4", "--poly", "x1",
                  "--at-level", "4", "--restricted", "1")
    assert a == b
    assert a.strip() == "(q*t + t^2 + t^3 + t^4)*x1"


def test_delta_without_mode_is_usage_error(capsys):
    code, _, err = run(capsys, "apply", "e1[Delta]", "--n", "4", "--poly", "x1")
    assert code == cli.EXIT_USAGE
    assert "--psi" in err


@pytest.mark.parametrize("argv", [
    ["verify", "nosuch"],
    ["apply", "Z1", "--n", "3", "--poly", "x1"],
    ["apply", "T1 +", "--n", "3", "--poly", "x1"],
    ["apply", "T5", "--n", "3", "--poly", "x1"],
    ["expand", "--poly", "x1", "--n", "2", "--k", "5"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE
    assert err


@pytest.mark.parametrize("argv,param", [
    (["compute-e", "--mu", "a"], "--mu"),
    (["limit", "tilde-e", "--mu", "1", "--levels", "5..2"], "--levels"),
    (["relations", "--n", "0"], "--n"),
])
def test_argparse_errors_exit_two(capsys, argv, param):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == cli.EXIT_USAGE
    assert param in capsys.readouterr().err


def test_verification_failure_exits_one(capsys, monkeypatch):
    def broken(name, **params):
        rep = SuiteReport("broken")
        rep.results.append(CheckResult("x", "exact", "fail", {"at": 1}))
        return rep

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run(capsys, "verify", "relations")
    assert code == cli.EXIT_FAIL
    assert "FAIL" in out


def test_verify_list_names_every_suite(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == cli.EXIT_OK
    listed = {line.split()[0] for line in out.splitlines() if line.strip()}
    assert listed == set(SUITES)


def test_poly_from_json_file(capsys, tmp_path):
    f = Poly.parse("x1^2*x2 + (1-t)*x3", 3)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    _, a, _ = run(capsys, "apply", "T1", "--n", "3", "--poly", f"@{path}")
    _, b, _ = run(capsys, "apply", "T1", "--n", "3", "--poly", "x1^2*x2 + (1-t)*x3")
    assert a == b


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "dahalimit", "limit", "weight", "--mu", "1", "--i", "2",
            "--levels", "2..4", "--json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
