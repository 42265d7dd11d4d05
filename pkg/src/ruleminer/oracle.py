"""Brute-force reference miner used to check the Apriori path.

Nothing here touches the bitmap columns or candidate generation. Supports
come from scanning the horizontal rows: every nonempty subset of every
transaction is tallied, which yields the exact count of each itemset that
occurs at all (itemsets that never occur have count 0 and can never be
frequent). Thresholds are compared as exact fractions.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations

from .apriori import FrequentItemset, MiningConfig
from .errors import TooManyItems
from .rules import AssociationRule, rule_sort_key
from .transactions import TransactionDb

MAX_ITEMS = 20


def _rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def _guard(db: TransactionDb) -> None:
    universe = {i for t in db.transactions for i in t}
    if len(universe) > MAX_ITEMS:
        raise TooManyItems(len(universe), MAX_ITEMS)


def subset_counts(db: TransactionDb, max_size: int | None = None) -> Counter:
    """Exact support count of every itemset occurring in ``db`` (row scan)."""
    _guard(db)
    tally: Counter = Counter()
    for t in db.transactions:
        top = len(t) if max_size is None else min(len(t), max_size)
        for r in range(1, top + 1):
            tally.update(combinations(t, r))
    return tally


def oracle_frequent(db: TransactionDb, min_support, max_size: int | None = None) -> list[FrequentItemset]:
    n = db.n
    if n == 0:
        _guard(db)
        return []
    threshold = _rational(min_support)
    tally = subset_counts(db, max_size)
    out = [
        FrequentItemset(items, c, c / n)
        for items, c in tally.items()
        if Fraction(c, n) >= threshold
    ]
    out.sort(key=lambda fi: (len(fi.items), fi.items))
    return out


def oracle_rules(db: TransactionDb, cfg: MiningConfig) -> list[AssociationRule]:
    n = db.n
    if n == 0:
        _guard(db)
        return []
    tally = subset_counts(db, cfg.max_itemset_size)
    min_sup = _rational(cfg.min_support)
    min_conf = _rational(cfg.min_confidence)
    min_lift = _rational(cfg.min_lift)
    rules = []
    for z, cz in tally.items():
        if len(z) < 2 or len(z) < cfg.min_length or Fraction(cz, n) < min_sup:
            continue
        # every ordered split of z into two nonempty disjoint parts
        for mask in range(1, (1 << len(z)) - 1):
            x = tuple(z[j] for j in range(len(z)) if mask >> j & 1)
            y = tuple(z[j] for j in range(len(z)) if not mask >> j & 1)
            cx, cy = tally[x], tally[y]
            conf = Fraction(cz, cx)
            base = Fraction(cy if cfg.lift_mode == "consequent" else cx, n)
            lft = conf / base
            if conf >= min_conf and lft >= min_lift:
                rules.append(AssociationRule(
                    antecedent=x,
                    consequent=y,
                    support=float(Fraction(cz, n)),
                    confidence=float(conf),
                    lift=float(lft),
                    count=cz,
                    antecedent_count=cx,
                    consequent_count=cy,
                ))
    rules.sort(key=rule_sort_key)
    return rules
