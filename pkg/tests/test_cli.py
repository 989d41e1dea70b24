import json

import pytest

from dunkl_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_simulate_threads_do_not_change_output(capsys):
    args = ("simulate", "--k0", "0.75", "--k1", "0.5", "--x", "2,1", "--T", "0.1", "--dt", "1e-3",
            "--every", "10", "--seed", "3")
    c1, a = run(capsys, "--threads", "1", *args)
    c2, b = run(capsys, "--threads", "2", *args)
    assert c1 == c2 == 0 and a == b
    assert a.splitlines()[0] == "t,x1,x2,hit_wall,hit_time"


def test_hitting_tail_threads(capsys):
    args = ("hitting-tail", "--k0", "0.25", "--k1", "0.75", "--x", "2,1", "--paths", "400", "--T", "0.4",
            "--dt", "1e-2", "--times", "0.2,0.4", "--seed", "1", "--z-max", "10")
    c1, a = run(capsys, "--threads", "1", *args)
    c2, b = run(capsys, "--threads", "2", *args)
    assert c1 == c2 == 0 and a == b
    assert a.splitlines()[0] == "t,mc_tail,mc_se,analytic_tail,z_score"


def test_env_seed_matches_flag(capsys, monkeypatch):
    args = ("simulate", "--k0", "1", "--k1", "1", "--x", "2,1", "--T", "0.05", "--dt", "1e-2")
    _, a = run(capsys, *args, "--seed", "5")
    monkeypatch.setenv("DUNKL_LAB_SEED", "5")
    _, b = run(capsys, *args)
    _, c = run(capsys, *args, "--seed", "6")
    assert a == b != c


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"k0": 1.0, "k1": 1.0, "x": "2,1", "T": 0.05, "dt": 1e-2, "seed": 2}))
    _, a = run(capsys, "simulate", "--config", str(cfg))
    _, b = run(capsys, "simulate", "--k0", "1", "--k1", "1", "--x", "2,1", "--T", "0.05", "--dt", "1e-2",
               "--seed", "2")
    _, c = run(capsys, "simulate", "--config", str(cfg), "--T", "0.02")
    assert a == b and len(c.splitlines()) < len(a.splitlines())


def test_density_check_exit_codes(capsys, tmp_path):
    out = tmp_path / "d.csv"
    assert main(["density-check", "--points", "5", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "coord,value_series,value_determinantal,rel_err"
    assert main(["density-check", "--points", "5", "--tol", "1e-30"]) == 1


def test_config_errors(capsys, tmp_path):
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["simulate", "--bogus"]) == 2
    assert main(["simulate", "--k0", "1", "--k1", "1", "--x", "1,2"]) == 2  # outside the chamber
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"unknown_key": 1}))
    assert main(["simulate", "--config", str(cfg)]) == 2


def test_numerical_failure_exit_code(capsys):
    code = main(["hitting-tail", "--k0", "0.25", "--k1", "0.75", "--x", "2,1", "--paths", "50", "--T", "0.02",
                 "--dt", "1e-3", "--times", "0.01"])
    assert code == 3


def test_verify(capsys):
    code, out = run(capsys, "verify", "--suite", "roots")
    assert code == 0 and out.startswith("PASS")
