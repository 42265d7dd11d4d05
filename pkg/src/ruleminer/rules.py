"""Association rules: metrics, generation from a frequent lattice, filtering and serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Sequence

from .apriori import FrequentItemset, MiningConfig, exact, lattice
from .errors import (
    EmptyDatabase,
    IncompleteLattice,
    UnknownLabel,
    ZeroAntecedentSupport,
    ZeroSupport,
)
from .transactions import ItemDictionary, TransactionDb, support_count

FLOAT_FORMAT = ".17g"
CSV_HEADER = ("lhs", "rhs", "support", "confidence", "lift")
ITEM_SEPARATOR = " | "


@dataclass(frozen=True)
class AssociationRule:
    """``antecedent => consequent`` with its metrics.

    ``support`` is the support of the union. The three counts are the
    absolute supports the float metrics were derived from.
    """

    antecedent: tuple[int, ...]
    consequent: tuple[int, ...]
    support: float
    confidence: float
    lift: float
    count: int
    antecedent_count: int
    consequent_count: int

    @property
    def size(self) -> int:
        return len(self.antecedent) + len(self.consequent)


def rule_sort_key(rule: AssociationRule) -> tuple:
    return (-rule.confidence, -rule.lift, -rule.support, rule.antecedent, rule.consequent)


@dataclass
class RuleReport:
    rules: list[AssociationRule]
    config_used: MiningConfig
    n: int
    item_count: int
    dictionary: ItemDictionary = field(default_factory=ItemDictionary, repr=False)

    @property
    def db_summary(self) -> dict:
        return {"n": self.n, "item_count": self.item_count}

    def __len__(self) -> int:
        return len(self.rules)

    def labels(self, itemset: Iterable[int]) -> list[str]:
        return [self.dictionary.label(i) for i in itemset]

    def describe(self, rule: AssociationRule) -> str:
        return f"{', '.join(self.labels(rule.antecedent))} => {', '.join(self.labels(rule.consequent))}"


# ---------------------------------------------------------------- metrics


def support_fraction(db: TransactionDb, itemset: Sequence[int]) -> float:
    if not itemset:
        raise ValueError("itemset must be nonempty")
    if db.n == 0:
        raise EmptyDatabase("support is undefined on an empty database")
    return support_count(db, itemset) / db.n


def _union(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    if not x or not y:
        raise ValueError("antecedent and consequent must be nonempty")
    if set(x) & set(y):
        raise ValueError("antecedent and consequent must be disjoint")
    return tuple(sorted(set(x) | set(y)))


def confidence(db: TransactionDb, x: Sequence[int], y: Sequence[int]) -> float:
    xy = _union(x, y)
    cx = support_count(db, x)
    if cx == 0:
        raise ZeroAntecedentSupport(f"antecedent {tuple(x)} never occurs")
    return support_count(db, xy) / cx


def lift(db: TransactionDb, x: Sequence[int], y: Sequence[int], mode: str = "consequent") -> float:
    """Confidence divided by the support of the consequent (or of the antecedent).

    ``mode="consequent"`` is the standard lift. ``mode="antecedent"`` divides
    by the antecedent's support instead.
    """
    xy = _union(x, y)
    cx = support_count(db, x)
    cy = support_count(db, y)
    if cx == 0 or cy == 0 or db.n == 0:
        raise ZeroSupport(f"zero support in lift denominator for {tuple(x)} => {tuple(y)}")
    return _lift(support_count(db, xy), cx, cy, db.n, mode)


def _lift(cxy: int, cx: int, cy: int, n: int, mode: str) -> float:
    if mode == "consequent":
        return (cxy * n) / (cx * cy)
    if mode == "antecedent":
        return (cxy * n) / (cx * cx)
    raise ValueError(f"unknown lift mode {mode!r}")


def make_rule(x: Sequence[int], y: Sequence[int], cxy: int, cx: int, cy: int, n: int, mode: str) -> AssociationRule:
    return AssociationRule(
        antecedent=tuple(x),
        consequent=tuple(y),
        support=cxy / n,
        confidence=cxy / cx,
        lift=_lift(cxy, cx, cy, n, mode),
        count=cxy,
        antecedent_count=cx,
        consequent_count=cy,
    )


def passes(cfg: MiningConfig, cxy: int, cx: int, cy: int, n: int) -> bool:
    """Exact rational threshold test for confidence and lift."""
    if cxy < exact(cfg.min_confidence) * cx:
        return False
    lift_den = cx * (cy if cfg.lift_mode == "consequent" else cx)
    return cxy * n >= exact(cfg.min_lift) * lift_den


# ---------------------------------------------------------------- generation


def generate_rules(frequent: Sequence[FrequentItemset], db: TransactionDb, cfg: MiningConfig) -> RuleReport:
    """Every rule ``A => Z \\ A`` over frequent ``Z`` passing ``cfg``'s thresholds.

    Metrics are read from the counts stored on ``frequent``; the database
    only supplies ``n`` and the dictionary. ``min_length`` bounds the total
    number of items in a rule.
    """
    counts = lattice(frequent)
    n = db.n
    rules = []
    for z in counts:
        k = len(z)
        if k < 2 or k < cfg.min_length:
            continue
        cxy = counts[z]
        for r in range(1, k):
            for x in combinations(z, r):
                y = tuple(i for i in z if i not in x)
                try:
                    cx, cy = counts[x], counts[y]
                except KeyError as e:
                    raise IncompleteLattice(e.args[0]) from None
                if passes(cfg, cxy, cx, cy, n):
                    rules.append(make_rule(x, y, cxy, cx, cy, n, cfg.lift_mode))
    rules.sort(key=rule_sort_key)
    return RuleReport(rules, cfg, n, db.item_count, db.dictionary)


# ---------------------------------------------------------------- filtering


def _resolve(dictionary: ItemDictionary, labels) -> list[set[int]]:
    if isinstance(labels, str):
        labels = [labels]
    resolved = []
    for lab in labels:
        ids = dictionary.ids_with_label(lab)
        if not ids:
            raise UnknownLabel(lab)
        resolved.append(set(ids))
    return resolved


def _side_matches(side: tuple[int, ...], wanted: list[set[int]], exact_match: bool) -> bool:
    if not all(ids.intersection(side) for ids in wanted):
        return False
    return not exact_match or len(side) == len(wanted)


def filter_rules(report: RuleReport, *, lhs=None, rhs=None, exact_match: bool = False) -> RuleReport:
    """Keep rules whose sides contain (or, with ``exact_match``, equal) the given labels.

    Labels may be bare (``"Borno"``) or field-qualified (``"provstate=Borno"``).
    Order is preserved.
    """
    want_l = _resolve(report.dictionary, lhs) if lhs is not None else None
    want_r = _resolve(report.dictionary, rhs) if rhs is not None else None
    kept = [
        r for r in report.rules
        if (want_l is None or _side_matches(r.antecedent, want_l, exact_match))
        and (want_r is None or _side_matches(r.consequent, want_r, exact_match))
    ]
    return replace(report, rules=kept)


# ---------------------------------------------------------------- serialization


def fmt(x: float) -> str:
    return format(x, FLOAT_FORMAT)


def rules_to_csv(report: RuleReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.rules:
        w.writerow([
            ITEM_SEPARATOR.join(report.labels(r.antecedent)),
            ITEM_SEPARATOR.join(report.labels(r.consequent)),
            fmt(r.support),
            fmt(r.confidence),
            fmt(r.lift),
        ])
    return buf.getvalue()


def _items_json(report: RuleReport, itemset) -> list[dict]:
    out = []
    for i in itemset:
        f, lab = report.dictionary.item(i)
        out.append({"field": f, "label": lab})
    return out


def rules_to_dict(report: RuleReport) -> dict:
    return {
        "config_used": report.config_used.to_dict(),
        "db_summary": report.db_summary,
        "rules": [
            {
                "lhs": _items_json(report, r.antecedent),
                "rhs": _items_json(report, r.consequent),
                "support": r.support,
                "confidence": r.confidence,
                "lift": r.lift,
                "count": r.count,
                "antecedent_count": r.antecedent_count,
                "consequent_count": r.consequent_count,
            }
            for r in report.rules
        ],
    }


def rules_to_json(report: RuleReport) -> str:
    return json.dumps(rules_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def frequent_to_csv(frequent: Sequence[FrequentItemset], dictionary: ItemDictionary) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("items", "size", "count", "support"))
    for fi in frequent:
        w.writerow([
            ITEM_SEPARATOR.join(dictionary.label(i) for i in fi.items),
            len(fi.items),
            fi.count,
            fmt(fi.support),
        ])
    return buf.getvalue()
