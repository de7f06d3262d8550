"""Command-line interface: exit codes, artifacts, determinism."""

import json
from pathlib import Path

import pytest

from fracpath.cli import main


def test_usage_errors_exit_one(capsys):
    assert main(["no-such-command"]) == 1
    assert main(["rate", "--bogus"]) == 1
    assert main([]) == 1
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_generate_writes_deterministic_csv(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["generate", "--kind", "fbm", "--H", "0.75", "--n", "64",
            "--seed", "5"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().strip().splitlines()
    assert lines[0] == "t,value"
    assert len(lines) == 66


def test_generate_deterministic_formula_to_stdout(capsys):
    assert main(["generate", "--kind", "deterministic", "--formula", "line",
                 "--n", "4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "t,value"
    assert len(out.strip().splitlines()) == 6


def test_seminorm_command_reports_norms(tmp_path, capsys):
    csv_path = tmp_path / "p.csv"
    main(["generate", "--kind", "deterministic", "--formula", "line",
          "--n", "128", "--out", str(csv_path)])
    capsys.readouterr()
    assert main(["seminorm", "--input", str(csv_path), "--theta", "0.25",
                 "--alpha", "1.0"]) == 0
    out = capsys.readouterr().out
    fields = dict(line.split(": ") for line in out.strip().splitlines())
    assert float(fields["holder"]) == pytest.approx(1.0, rel=1e-10)
    assert float(fields["w1"]) == pytest.approx(1.0 / 0.75, rel=1e-9)


def test_integrate_deterministic_value(capsys):
    assert main(["integrate", "--f", "one", "--X", "line", "--Y", "line",
                 "--n", "1024"]) == 0
    out = capsys.readouterr().out
    value = float(out.splitlines()[0].split(": ")[1])
    assert value == pytest.approx(1.0, abs=1e-3)


def test_integrate_rejects_unknown_function(capsys):
    assert main(["integrate", "--f", "no-such-f"]) == 1
    err = capsys.readouterr().err
    assert "no-such-f" in err


def test_rate_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"f": "indicator:0.5", "bogus_key": 1}))
    assert main(["rate", "--config", str(cfg)]) == 1
    err = capsys.readouterr().err
    assert "bogus_key" in err


def test_rate_config_requires_f(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"h1": 0.75}))
    assert main(["rate", "--config", str(cfg)]) == 1
    capsys.readouterr()


def test_missing_config_file_exits_one(capsys):
    assert main(["ito", "--config", "/no/such/file.json"]) == 1
    capsys.readouterr()


def test_mollify_command_writes_report_artifacts(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "f": "indicator:0.0", "theta": 0.3, "n_list": [4, 32],
        "replicates": 3, "level": 6,
    }))
    out_dir = tmp_path / "reports"
    rc = main(["mollify", "--config", str(cfg), "--seed", "0",
               "--out-dir", str(out_dir)])
    capsys.readouterr()
    assert rc in (0, 2)
    names = {p.name for p in out_dir.iterdir()}
    assert "mollify_seed0.json" in names
    assert "mollify_seed0.csv" in names
    assert "mollify_seed0.meta.json" in names
    assert "mollify_seed0.png" in names
    payload = json.loads((out_dir / "mollify_seed0.json").read_text())
    assert payload["schema_version"] == 1
    assert payload["experiment"] == "mollify"


def test_bounds_rejects_unknown_check(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"checks": ["no-such-check"]}))
    assert main(["bounds", "--config", str(cfg),
                 "--out-dir", str(tmp_path / "r")]) == 1
    capsys.readouterr()
