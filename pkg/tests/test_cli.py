import json

import pytest

from toda_stability import cli


def test_usage_errors(tmp_path, capsys):
    assert cli.main(["dispersion-scan", "--window", "5:1"]) == cli.EXIT_USAGE
    assert cli.main(["dispersion-scan", "--alpha", "3"]) == cli.EXIT_USAGE
    assert cli.main(["no-such-command"]) == cli.EXIT_USAGE
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert cli.main(["dispersion-scan", "--config", str(bad)]) == cli.EXIT_USAGE


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\neta = 0.3\nalpha = 0.4  # trailing\n")
    args = cli.make_parser().parse_args(["evolve", "--config", str(cfg), "--alpha", "0.6"])
    c = cli.build_config(args)
    assert c.eta == 0.3 and c.alpha == 0.6


def test_report_and_deterministic_csv(tmp_path, capsys):
    out, c1, c2 = tmp_path / "r.json", tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["evolve", "--T", "1", "--dt", "0.05", "--window=-30:30"]
    assert cli.main(args + ["--out", str(out), "--csv", str(c1)]) == cli.EXIT_OK
    assert cli.main(args + ["--csv", str(c2)]) == cli.EXIT_OK
    assert c1.read_bytes() == c2.read_bytes()
    rep = json.loads(out.read_text())
    assert rep["config"]["T"] == 1.0 and rep["command"] == "evolve"
    assert all(c["status"] == "pass" for c in rep["checks"])


@pytest.mark.parametrize("cmd", ["dispersion-scan", "background", "jost-check", "modes-check", "darboux-check"])
def test_checks_pass(cmd, capsys):
    assert cli.main([cmd]) == cli.EXIT_OK
    assert "PASS" in capsys.readouterr().out
