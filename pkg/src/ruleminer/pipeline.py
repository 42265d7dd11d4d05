"""Batch runs behind the command-line subcommands.

Every run writes its outputs plus ``manifest.json`` (config echo, input
digest, output digests) into the output directory. Outputs contain no
timestamps, so identical config and input bytes give identical files.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from . import __version__
from .apriori import MiningConfig, mine_frequent
from .gtd import DEFAULT_YEAR_RANGE, OBSERVATION_FIELDS, IngestSummary, load_gtd, normalize_fields, records_to_db
from .rules import RuleReport, frequent_to_csv, generate_rules, rules_to_csv, rules_to_json
from .stats import figure_tables
from .verify import VerifyReport, check_claims, property_checks, rule_file_check

ALL_COUNTRIES = "*"
FORMATS = ("csv", "json", "both")


@dataclass(frozen=True)
class RunConfig:
    input_path: str = ""
    country: str = "Nigeria"
    year_range: tuple[int, int] | None = DEFAULT_YEAR_RANGE
    fields: tuple[str, ...] = OBSERVATION_FIELDS
    labels: str = "codebook"
    mining: MiningConfig = field(default_factory=MiningConfig)
    output_dir: str = "out"
    format: str = "both"
    seed: int = 0

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.labels not in ("codebook", "text"):
            raise ValueError(f"labels must be 'codebook' or 'text', got {self.labels!r}")
        object.__setattr__(self, "fields", normalize_fields(self.fields))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mining"] = self.mining.to_dict()
        d["fields"] = list(self.fields)
        d["year_range"] = list(self.year_range) if self.year_range else None
        return d


# ---------------------------------------------------------------- config files

_MINING_KEYS = {f.name for f in fields(MiningConfig)}
_RUN_KEYS = {"input_path", "country", "year_range", "fields", "labels", "output_dir", "format", "seed"}


def parse_year_range(text: str) -> tuple[int, int] | None:
    text = text.strip()
    if text.lower() in ("", "none", "all"):
        return None
    first, sep, last = text.partition("-")
    if not sep:
        raise ValueError(f"year range must look like 1970-2019, got {text!r}")
    return int(first), int(last)


def _coerce(key: str, value: str):
    if key in ("min_support", "min_confidence", "min_lift"):
        return float(value)
    if key in ("min_length", "seed"):
        return int(value)
    if key == "max_itemset_size":
        return None if value.strip().lower() in ("", "none") else int(value)
    if key == "year_range":
        return parse_year_range(value) or "all"
    if key == "fields":
        return tuple(v.strip() for v in value.split(",") if v.strip())
    return value.strip()


def read_config_file(path: str | Path) -> dict:
    """Read an INI file with ``[run]`` and ``[mining]`` sections into override keys.

    Unknown keys raise ``ValueError``.
    """
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    out = {}
    for section in parser.sections():
        allowed = _MINING_KEYS if section == "mining" else _RUN_KEYS if section == "run" else None
        if allowed is None:
            raise ValueError(f"unknown config section [{section}]")
        for key, value in parser.items(section):
            if key not in allowed:
                raise ValueError(f"unknown key {key!r} in [{section}]")
            out[key] = _coerce(key, value)
    return out


def make_run_config(overrides: dict) -> RunConfig:
    """RunConfig from defaults updated by ``overrides`` (``None`` values ignored)."""
    overrides = {k: v for k, v in overrides.items() if v is not None}
    mining = replace(MiningConfig(), **{k: v for k, v in overrides.items() if k in _MINING_KEYS})
    run = {k: v for k, v in overrides.items() if k in _RUN_KEYS}
    if run.get("year_range") == "all":
        run["year_range"] = None
    return RunConfig(mining=mining, **run)


# ---------------------------------------------------------------- helpers


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write(out: Path, name: str, text: str, written: dict) -> None:
    data = text.encode("utf-8")
    (out / name).write_bytes(data)
    written[name] = sha256_bytes(data)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_manifest(out: Path, command: str, cfg: RunConfig, written: dict) -> Path:
    src = Path(cfg.input_path)
    data = src.read_bytes()
    manifest = {
        "command": command,
        "package_version": __version__,
        "config": cfg.to_dict(),
        "input": {"path": cfg.input_path, "bytes": len(data), "sha256": sha256_bytes(data)},
        "outputs": [{"path": k, "sha256": v} for k, v in sorted(written.items())],
    }
    path = out / "manifest.json"
    path.write_text(_dump(manifest), encoding="utf-8")
    return path


def load(cfg: RunConfig):
    country = None if cfg.country in ("", ALL_COUNTRIES) else cfg.country
    records, summary = load_gtd(cfg.input_path, country, cfg.year_range)
    db = records_to_db(records, cfg.fields, cfg.labels, summary)
    return records, db, summary


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------- commands


def run_ingest(cfg: RunConfig) -> IngestSummary:
    """Write ``transactions.txt`` (item ids per line), ``dictionary.csv`` and ``ingest_summary.json``."""
    _, db, summary = load(cfg)
    out = _outdir(cfg)
    written: dict = {}
    _write(out, "transactions.txt", "".join(" ".join(map(str, t)) + "\n" for t in db.transactions), written)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("id", "field", "label"))
    for i, (f, lab) in enumerate(db.dictionary.items()):
        w.writerow((i, f, lab))
    _write(out, "dictionary.csv", buf.getvalue(), written)
    _write(out, "ingest_summary.json", _dump(summary.to_dict()), written)
    write_manifest(out, "ingest", cfg, written)
    return summary


def mine(cfg: RunConfig):
    records, db, summary = load(cfg)
    frequent = mine_frequent(db, cfg.mining)
    report = generate_rules(frequent, db, cfg.mining)
    return records, db, frequent, report


def run_mine(cfg: RunConfig) -> RuleReport:
    """Write ``rules.csv`` and/or ``rules.json`` plus ``frequent_itemsets.csv``."""
    _, db, frequent, report = mine(cfg)
    out = _outdir(cfg)
    written: dict = {}
    if cfg.format in ("csv", "both"):
        _write(out, "rules.csv", rules_to_csv(report), written)
    if cfg.format in ("json", "both"):
        _write(out, "rules.json", rules_to_json(report), written)
    _write(out, "frequent_itemsets.csv", frequent_to_csv(frequent, db.dictionary), written)
    write_manifest(out, "mine", cfg, written)
    return report


def run_stats(cfg: RunConfig, plot_data: bool = True) -> dict:
    """Write ``stats_report.json`` and, with ``plot_data``, one CSV per figure table."""
    records, _, summary = load(cfg)
    out = _outdir(cfg)
    tables = figure_tables(records)
    written: dict = {}
    if plot_data:
        for name, table in tables.items():
            _write(out, f"{name}.csv", table.to_csv(), written)
    report = {"records": len(records), "tables": {k: t.to_dict() for k, t in tables.items()}}
    _write(out, "stats_report.json", _dump(report), written)
    write_manifest(out, "stats", cfg, written)
    return report


def run_verify(
    cfg: RunConfig,
    rules_file: str | None = None,
    random_dbs: int = 200,
    claims: bool = True,
) -> VerifyReport:
    """Property checks on the configured input, optional rule-file check, and the claims table."""
    records, db, frequent, report = mine(cfg)
    result = VerifyReport(property_checks(db, cfg.mining, frequent, report, random_dbs, cfg.seed))
    if rules_file is not None:
        actual = Path(rules_file).read_text(encoding="utf-8")
        expected = rules_to_json(report) if rules_file.endswith(".json") else rules_to_csv(report)
        result.checks.append(rule_file_check(rules_file, actual, expected))
    if claims:
        result.claims = check_claims(records, report)
    out = _outdir(cfg)
    written: dict = {}
    _write(out, "verify_report.json", _dump(result.to_dict()), written)
    write_manifest(out, "verify", cfg, written)
    return result
