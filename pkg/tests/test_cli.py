import json
import subprocess
import sys
from pathlib import Path

import pytest

from ruleminer.cli import main

GOLDEN = Path(__file__).with_name("golden") / "fixture_rules.csv"


def run(*args):
    return main([str(a) for a in args])


def test_ingest_default_country(fixture_csv, tmp_path, capsys):
    assert run("ingest", "--input", fixture_csv, "--out", tmp_path) == 0
    lines = (tmp_path / "transactions.txt").read_text().splitlines()
    assert len(lines) == 480
    summary = json.loads((tmp_path / "ingest_summary.json").read_text())
    assert summary["rows_skipped"] == 0
    assert "480 transactions" in capsys.readouterr().out


def test_ingest_all_countries(fixture_csv, tmp_path):
    assert run("ingest", "--input", fixture_csv, "--country", "*", "--out", tmp_path) == 0
    assert len((tmp_path / "transactions.txt").read_text().splitlines()) == 500


def test_missing_input_is_io_error(tmp_path, capsys):
    assert run("ingest", "--input", tmp_path / "nope.csv", "--out", tmp_path) == 3
    assert "ruleminer:" in capsys.readouterr().err


def test_bad_flag_is_usage_error(fixture_csv):
    with pytest.raises(SystemExit) as e:
        run("mine", "--input", fixture_csv, "--bogus")
    assert e.value.code == 2


def test_bad_threshold_is_usage_error(fixture_csv, tmp_path):
    assert run("mine", "--input", fixture_csv, "--min-support", "1.5", "--out", tmp_path) == 2


def test_no_input_is_usage_error(tmp_path):
    assert run("mine", "--out", tmp_path) == 2


def test_mine_full_support_writes_header_only(fixture_csv, tmp_path):
    assert run("mine", "--input", fixture_csv, "--min-support", "1.0", "--out", tmp_path) == 0
    assert (tmp_path / "rules.csv").read_text() == "lhs,rhs,support,confidence,lift\n"
    assert json.loads((tmp_path / "rules.json").read_text())["rules"] == []


def test_mine_fixture_matches_golden(fixture_csv, tmp_path):
    assert run("mine", "--input", fixture_csv, "--format", "csv", "--out", tmp_path) == 0
    assert (tmp_path / "rules.csv").read_bytes() == GOLDEN.read_bytes()
    assert not (tmp_path / "rules.json").exists()


def test_rerun_is_byte_identical(fixture_csv, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("mine", "--input", fixture_csv, "--out", a) == 0
    assert run("mine", "--input", fixture_csv, "--out", b) == 0
    for name in ("rules.csv", "rules.json", "frequent_itemsets.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    ma = json.loads((a / "manifest.json").read_text())
    mb = json.loads((b / "manifest.json").read_text())
    assert ma["outputs"] == mb["outputs"]
    assert ma["input"]["sha256"] == mb["input"]["sha256"]
    assert ma["config"]["mining"]["min_support"] == 0.1


def test_stats_writes_tables(fixture_csv, tmp_path):
    assert run("stats", "--input", fixture_csv, "--out", tmp_path) == 0
    for name in ("figure1_years", "figure2_targets", "figure3_success", "figure4_suicide", "figure5_states"):
        assert (tmp_path / f"{name}.csv").exists()
    report = json.loads((tmp_path / "stats_report.json").read_text())
    assert report["records"] == 480


def test_stats_no_plot_data(fixture_csv, tmp_path):
    assert run("stats", "--input", fixture_csv, "--no-plot-data", "--out", tmp_path) == 0
    assert not list(tmp_path.glob("figure*.csv"))


def test_verify_fixture_passes(fixture_csv, tmp_path, capsys):
    assert run("verify", "--input", fixture_csv, "--random-dbs", "20", "--out", tmp_path) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out.split("published claims:")[0]
    assert json.loads((tmp_path / "verify_report.json").read_text())["ok"] is True


def test_verify_detects_tampered_rules(fixture_csv, tmp_path, capsys):
    tampered = tmp_path / "rules.csv"
    lines = GOLDEN.read_text().splitlines(keepends=True)
    lines[1] = lines[1].replace(",1,", ",0.99,", 1)
    tampered.write_text("".join(lines))
    code = run("verify", "--input", fixture_csv, "--rules", tampered, "--random-dbs", "0",
               "--no-claims", "--out", tmp_path / "v")
    assert code == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out and "0.99" in out


def test_config_file_with_flag_override(fixture_csv, tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text(f"[run]\ninput_path = {fixture_csv}\ncountry = *\n\n[mining]\nmin_support = 1.0\n")
    out = tmp_path / "o"
    assert run("mine", "--config", ini, "--min-support", "0.1", "--format", "csv", "--out", out) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["country"] == "*"
    assert manifest["config"]["mining"]["min_support"] == 0.1
    assert len((out / "rules.csv").read_text().splitlines()) > 1


def test_bad_config_key(tmp_path):
    ini = tmp_path / "bad.ini"
    ini.write_text("[mining]\nminsup = 0.2\n")
    assert run("mine", "--config", ini) == 2


def test_module_entry_point(fixture_csv, tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ruleminer", "ingest", "--input", str(fixture_csv),
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
