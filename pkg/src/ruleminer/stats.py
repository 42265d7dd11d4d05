"""Descriptive frequency tables over incident records.

Each table is plot-ready: one row per label with its count and share,
ordered by count (descending) then label.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyDatabase
from .gtd import BOOLEAN_LABELS, GtdRecord

BLANK_LABEL = "Unknown/Blank"


@dataclass(frozen=True)
class FrequencyRow:
    label: str
    count: int
    share: Fraction

    @property
    def percent(self) -> float:
        return round(float(self.share) * 100, 1)


@dataclass
class FrequencyTable:
    dimension: str
    rows: list[FrequencyRow] = field(default_factory=list)
    total: int = 0
    missing: int = 0

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, label: str) -> FrequencyRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def get(self, label: str) -> FrequencyRow | None:
        try:
            return self[label]
        except KeyError:
            return None

    @property
    def top(self) -> FrequencyRow | None:
        return self.rows[0] if self.rows else None

    def shares(self) -> dict[str, float]:
        return {r.label: float(r.share) for r in self.rows}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow((self.dimension, "count", "share", "percent"))
        for r in self.rows:
            w.writerow((r.label, r.count, format(float(r.share), ".17g"), f"{r.percent:.1f}"))
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "total": self.total,
            "missing": self.missing,
            "rows": [
                {"label": r.label, "count": r.count, "share": float(r.share), "percent": r.percent}
                for r in self.rows
            ],
        }


def frequency_table(dimension: str, labels: Iterable[str | None]) -> FrequencyTable:
    """Tabulate ``labels``; ``None`` entries are counted as missing, not as a row."""
    counts: Counter = Counter()
    missing = 0
    for lab in labels:
        if lab is None:
            missing += 1
        else:
            counts[lab] += 1
    total = sum(counts.values())
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    rows = [FrequencyRow(lab, c, Fraction(c, total)) for lab, c in ordered]
    return FrequencyTable(dimension, rows, total, missing)


def yearly_counts(records: Sequence[GtdRecord]) -> FrequencyTable:
    return frequency_table("iyear", (str(r.iyear) for r in records))


def target_counts(records: Sequence[GtdRecord], level: str = "subtype") -> FrequencyTable:
    """Target frequencies by general type (``level="type"``) or subtype.

    Blank targets are tabulated under ``"Unknown/Blank"``.
    """
    if level == "type":
        return frequency_table("targtype1_txt", (r.target_type_label() or BLANK_LABEL for r in records))
    if level == "subtype":
        return frequency_table("targsubtype1_txt", (r.targsubtype1_txt or BLANK_LABEL for r in records))
    raise ValueError(f"level must be 'type' or 'subtype', got {level!r}")


def boolean_table(records: Sequence[GtdRecord], name: str) -> FrequencyTable:
    if name not in BOOLEAN_LABELS:
        raise ValueError(f"field must be one of {sorted(BOOLEAN_LABELS)}, got {name!r}")
    yes, no = BOOLEAN_LABELS[name]

    def label(r):
        v = getattr(r, name)
        return None if v is None else (yes if v else no)

    return frequency_table(name, (label(r) for r in records))


def boolean_ratio(records: Sequence[GtdRecord], name: str) -> tuple[float, float]:
    """``(yes_share, no_share)`` over records where ``name`` is known."""
    table = boolean_table(records, name)
    if table.total == 0:
        raise EmptyDatabase(f"no records with a known {name!r} value")
    yes, no = BOOLEAN_LABELS[name]
    y = table.get(yes)
    y_share = y.share if y else Fraction(0)
    return float(y_share), float(1 - y_share)


def state_counts(records: Sequence[GtdRecord]) -> FrequencyTable:
    return frequency_table("provstate", (r.provstate or None for r in records))


FIGURE_FILES = {
    "figure1_years": lambda recs: yearly_counts(recs),
    "figure2_targets": lambda recs: target_counts(recs, "subtype"),
    "figure2_target_types": lambda recs: target_counts(recs, "type"),
    "figure3_success": lambda recs: boolean_table(recs, "success"),
    "figure4_suicide": lambda recs: boolean_table(recs, "suicide"),
    "figure5_states": lambda recs: state_counts(recs),
}


def figure_tables(records: Sequence[GtdRecord]) -> dict[str, FrequencyTable]:
    return {name: build(records) for name, build in FIGURE_FILES.items()}
