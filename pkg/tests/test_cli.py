import json

import pytest

from padicsharp.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_constant_subcommand(capsys):
    code, out, _ = run_cli(capsys, ["constant", "thm22", "--p", "2", "--n", "1",
                                    "--gamma", "0", "--alpha", "1/2"])
    assert code == 0
    body = json.loads(out)
    assert body["value"] == pytest.approx(0.7071067811865476, rel=1e-12)


def test_verify_subcommand_passes(capsys):
    code, out, _ = run_cli(capsys, ["verify", "cor31", "--p", "2", "--n", "1",
                                    "--alphas", "1/2,1/4"])
    assert code == 0
    body = json.loads(out)
    assert body["pass"] is True


def test_verify_all(capsys):
    code, out, _ = run_cli(capsys, ["verify", "all"])
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 5
    assert all(r["pass"] for r in reports)


def test_verify_failure_exit_code(capsys):
    # boundary beta = n(p1-1): precondition error -> pass=false -> exit 1
    code, out, _ = run_cli(capsys, ["verify", "thm21", "--p", "2", "--n", "1",
                                    "--p1", "2", "--beta", "1", "--gamma", "0",
                                    "--alpha", "0"])
    assert code == 1
    body = json.loads(out)
    assert body["pass"] is False
    assert "beta" in body["reason"]


def test_env_fallback_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("PADIC_P", "3")
    monkeypatch.setenv("PADIC_ALPHA", "1/2")
    monkeypatch.setenv("PADIC_GAMMA", "0")
    code, out, _ = run_cli(capsys, ["constant", "thm22"])
    assert code == 0
    from padicsharp import PadicContext, HardyL1WeakParams, hardy_l1_weak_constant
    from fractions import Fraction
    expected_env = hardy_l1_weak_constant(
        HardyL1WeakParams(alpha=Fraction(1, 2), gamma=0, ctx=PadicContext(3, 1)))
    assert json.loads(out)["value"] == pytest.approx(expected_env, rel=1e-12)
    # explicit flag wins over the environment
    code, out, _ = run_cli(capsys, ["constant", "thm22", "--p", "2"])
    assert json.loads(out)["value"] == pytest.approx(0.7071067811865476, rel=1e-12)


def test_random_test_subcommand(capsys):
    code, out, _ = run_cli(capsys, ["random-test", "thm22", "--seed", "1",
                                    "--count", "25"])
    assert code == 0
    body = json.loads(out)
    assert body["pass"] is True


def test_sweep_subcommand(tmp_path, capsys):
    spec = {"claim": "thm22",
            "grids": {"p": [2, 3], "gamma": [0], "alpha": ["n/2"]},
            "tolerance": 1e-9}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    out_path = tmp_path / "reports.json"
    code, _, _ = run_cli(capsys, ["sweep", "--spec", str(path),
                                  "--out", str(out_path)])
    assert code == 0
    reports = json.loads(out_path.read_text())
    assert len(reports) == 2 and all(r["pass"] for r in reports)


def test_csv_output(capsys):
    code, out, _ = run_cli(capsys, ["verify", "thm22", "--format", "csv"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("claim,")
    assert "thm22" in lines[1]


def test_sweep_requires_spec(capsys):
    code, _, err = run_cli(capsys, ["sweep"])
    assert code == 2
    assert "spec" in err
