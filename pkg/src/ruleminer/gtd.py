"""Global Terrorism Database (GTD) CSV ingestion and itemization.

Only the columns needed for the incident analysis are read; the remaining
GTD columns are ignored. Each incident becomes one transaction of labelled
items such as ``"2014"``, ``"Not Extended"`` or ``"Borno"``.
"""

from __future__ import annotations

import codecs
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import MalformedRow, MissingColumn
from .transactions import ItemDictionary, TransactionDb, from_id_rows

log = logging.getLogger(__name__)

ATTACK_TYPES = {
    1: "Assassination",
    2: "Hijacking",
    3: "Kidnapping",
    4: "Barricade Incident",
    5: "Bombing/Explosion",
    6: "Armed Assault",
    7: "Unarmed Assault",
    8: "Facility/Infrastructure Attack",
    9: "Unknown",
}

TARGET_TYPES = {
    1: "Business",
    2: "Government (General)",
    3: "Police",
    4: "Military",
    5: "Abortion Related",
    6: "Airports & Aircraft",
    7: "Government (Diplomatic)",
    8: "Educational Institution",
    9: "Food or Water Supply",
    10: "Journalists & Media",
    11: "Maritime (Includes ports and maritime facilities)",
    12: "NGO",
    13: "Other",
    14: "Private Citizens & Property",
    15: "Religious Figures/Institutions",
    16: "Telecommunications",
    17: "Terrorists/Non-State Militias",
    18: "Tourists",
    19: "Transportation (Other than Aviation)",
    20: "Unknown",
    21: "Utilities",
    22: "Violent Political Parties",
}

#: The ten observation fields, in itemization order.
OBSERVATION_FIELDS = (
    "iyear",
    "imonth",
    "extended",
    "provstate",
    "multiple",
    "success",
    "suicide",
    "attacktype1",
    "targtype1",
    "targsubtype1_txt",
)

FIELD_ALIASES = {
    "year": "iyear",
    "month": "imonth",
    "attacktype1_txt": "attacktype1",
    "targtype1_txt": "targtype1",
    "targettype1_txt": "targtype1",
    "targettype1": "targtype1",
    "targsubtype1": "targsubtype1_txt",
    "targetsubtype1_txt": "targsubtype1_txt",
    "targetsubtype1": "targsubtype1_txt",
}

REQUIRED_COLUMNS = OBSERVATION_FIELDS + ("country_txt",)
OPTIONAL_COLUMNS = ("attacktype1_txt", "targtype1_txt")

BOOLEAN_LABELS = {
    "extended": ("Extended", "Not Extended"),
    "multiple": ("Multiple", "Not Multiple"),
    "success": ("Successful", "Not Successful"),
    "suicide": ("Suicide", "Not Suicide"),
}

DEFAULT_YEAR_RANGE = (1970, 2019)
GTD_UNKNOWN = -9


@dataclass(frozen=True)
class GtdRecord:
    """One incident restricted to the analysed fields; ``None`` marks a missing value."""

    iyear: int
    imonth: int = 0
    extended: bool | None = None
    provstate: str = ""
    multiple: bool | None = None
    success: bool | None = None
    suicide: bool | None = None
    attacktype1: int | None = None
    targtype1: int | None = None
    targsubtype1_txt: str = ""
    country_txt: str = ""
    attacktype1_txt: str = ""
    targtype1_txt: str = ""

    def target_type_label(self) -> str:
        if self.targtype1_txt:
            return self.targtype1_txt
        return TARGET_TYPES.get(self.targtype1, "") if self.targtype1 is not None else ""


@dataclass
class IngestSummary:
    rows_read: int = 0
    rows_skipped: int = 0
    skipped: list[tuple[int, str]] = field(default_factory=list)
    rows_after_country: int | None = None
    rows_after_years: int | None = None
    transactions: int = 0
    empty_transactions: int = 0
    item_count: int = 0

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_skipped": self.rows_skipped,
            "skipped": [{"line": ln, "reason": why} for ln, why in self.skipped],
            "rows_after_country": self.rows_after_country,
            "rows_after_years": self.rows_after_years,
            "transactions": self.transactions,
            "empty_transactions": self.empty_transactions,
            "item_count": self.item_count,
        }


# ---------------------------------------------------------------- parsing


def _latin1_fallback(err: UnicodeDecodeError):
    return err.object[err.start:err.end].decode("latin-1"), err.end


codecs.register_error("ruleminer-latin1", _latin1_fallback)


def decode_bytes(raw: bytes) -> str:
    """UTF-8, with stray undecodable bytes read as Latin-1."""
    text = raw.decode("utf-8", errors="ruleminer-latin1")
    return text[1:] if text.startswith("\ufeff") else text


def _int(value: str, name: str) -> int | None:
    value = value.strip()
    if not value:
        return None
    try:
        f = float(value)
    except ValueError:
        raise ValueError(f"{name}={value!r} is not a number") from None
    if not math.isfinite(f) or f != int(f):
        raise ValueError(f"{name}={value!r} is not an integer")
    return int(f)


def _bool(value: str, name: str) -> bool | None:
    v = _int(value, name)
    if v is None or v == GTD_UNKNOWN:
        return None
    if v not in (0, 1):
        raise ValueError(f"{name}={value!r} is not 0/1")
    return v == 1


def _coded(value: str, name: str, codebook: dict) -> int | None:
    v = _int(value, name)
    if v is None:
        return None
    if v not in codebook:
        raise ValueError(f"{name}={v} outside codes {min(codebook)}-{max(codebook)}")
    return v


def _record(row: dict) -> GtdRecord:
    if None in row or any(v is None for v in row.values()):
        raise ValueError("wrong number of fields")
    year = _int(row["iyear"], "iyear")
    if year is None:
        raise ValueError("iyear is blank")
    month = _int(row["imonth"], "imonth") or 0
    if not 0 <= month <= 12:
        raise ValueError(f"imonth={month} outside 0-12")
    return GtdRecord(
        iyear=year,
        imonth=month,
        extended=_bool(row["extended"], "extended"),
        provstate=row["provstate"].strip(),
        multiple=_bool(row["multiple"], "multiple"),
        success=_bool(row["success"], "success"),
        suicide=_bool(row["suicide"], "suicide"),
        attacktype1=_coded(row["attacktype1"], "attacktype1", ATTACK_TYPES),
        targtype1=_coded(row["targtype1"], "targtype1", TARGET_TYPES),
        targsubtype1_txt=row["targsubtype1_txt"].strip(),
        country_txt=row["country_txt"].strip(),
        attacktype1_txt=(row.get("attacktype1_txt") or "").strip(),
        targtype1_txt=(row.get("targtype1_txt") or "").strip(),
    )


def read_gtd_text(text: str, summary: IngestSummary | None = None) -> list[GtdRecord]:
    """Parse GTD CSV text. Malformed rows are skipped and logged in ``summary``."""
    if summary is None:
        summary = IngestSummary()
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = reader.fieldnames or []
    for name in REQUIRED_COLUMNS:
        if name not in header:
            raise MissingColumn(name)
    records = []
    for row in reader:
        summary.rows_read += 1
        try:
            records.append(_record(row))
        except ValueError as e:
            err = MalformedRow(reader.line_num, str(e))
            summary.rows_skipped += 1
            summary.skipped.append((err.line, err.reason))
    if summary.rows_skipped:
        log.warning("skipped %d malformed row(s) of %d", summary.rows_skipped, summary.rows_read)
    return records


def parse_gtd_csv(path: str | Path, summary: IngestSummary | None = None) -> list[GtdRecord]:
    return read_gtd_text(decode_bytes(Path(path).read_bytes()), summary)


def filter_country(records: Iterable[GtdRecord], country: str) -> list[GtdRecord]:
    """Exact, case-sensitive match on ``country_txt``."""
    return [r for r in records if r.country_txt == country]


def filter_years(records: Iterable[GtdRecord], first: int, last: int) -> list[GtdRecord]:
    return [r for r in records if first <= r.iyear <= last]


# ---------------------------------------------------------------- itemization


def normalize_fields(fields: Iterable[str] | None) -> tuple[str, ...]:
    if fields is None:
        return OBSERVATION_FIELDS
    out = []
    for name in fields:
        name = name.strip()
        canon = FIELD_ALIASES.get(name, name)
        if canon not in OBSERVATION_FIELDS:
            raise ValueError(f"unsupported observation field {name!r}; choose from {OBSERVATION_FIELDS}")
        if canon not in out:
            out.append(canon)
    return tuple(out)


def item_label(record: GtdRecord, name: str, labels: str = "codebook") -> str | None:
    """Item label for one field of ``record``, or ``None`` when the field is absent.

    ``labels="text"`` prefers the ``*_txt`` columns for attack and target
    types when the file supplied them, falling back to the codebook.
    """
    if name == "iyear":
        return str(record.iyear)
    if name == "imonth":
        return f"Month={record.imonth}" if record.imonth else None
    if name in BOOLEAN_LABELS:
        v = getattr(record, name)
        if v is None:
            return None
        yes, no = BOOLEAN_LABELS[name]
        return yes if v else no
    if name == "provstate":
        return record.provstate or None
    if name == "targsubtype1_txt":
        return record.targsubtype1_txt or None
    if name == "attacktype1":
        if labels == "text" and record.attacktype1_txt:
            return record.attacktype1_txt
        return ATTACK_TYPES[record.attacktype1] if record.attacktype1 is not None else None
    if name == "targtype1":
        if labels == "text" and record.targtype1_txt:
            return record.targtype1_txt
        return TARGET_TYPES[record.targtype1] if record.targtype1 is not None else None
    raise ValueError(f"unsupported observation field {name!r}")


def itemize(record: GtdRecord, fields: Sequence[str] | None = None, labels: str = "codebook") -> list[tuple[str, str]]:
    """``(field, label)`` items for ``record`` in field order; absent fields emit nothing."""
    out = []
    for name in normalize_fields(fields):
        lab = item_label(record, name, labels)
        if lab is not None:
            out.append((name, lab))
    return out


def records_to_db(
    records: Sequence[GtdRecord],
    fields: Sequence[str] | None = None,
    labels: str = "codebook",
    summary: IngestSummary | None = None,
) -> TransactionDb:
    """Itemize records into a :class:`TransactionDb`; records yielding no items are dropped."""
    fields = normalize_fields(fields)
    dictionary = ItemDictionary()
    rows = []
    empty = 0
    for rec in records:
        items = itemize(rec, fields, labels)
        if not items:
            empty += 1
            continue
        rows.append([dictionary.intern(f, lab) for f, lab in items])
    db = from_id_rows(rows, dictionary)
    if summary is not None:
        summary.empty_transactions = empty
        summary.transactions = db.n
        summary.item_count = db.item_count
    return db


def load_gtd(
    path: str | Path,
    country: str | None = "Nigeria",
    year_range: tuple[int, int] | None = DEFAULT_YEAR_RANGE,
) -> tuple[list[GtdRecord], IngestSummary]:
    """Parse, then filter by country (skipped when falsy) and year window."""
    summary = IngestSummary()
    records = parse_gtd_csv(path, summary)
    if country:
        records = filter_country(records, country)
        summary.rows_after_country = len(records)
    if year_range is not None:
        records = filter_years(records, *year_range)
        summary.rows_after_years = len(records)
    return records, summary
