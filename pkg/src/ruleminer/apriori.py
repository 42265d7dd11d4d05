"""Level-wise frequent itemset mining (Apriori).

Candidates of size ``k`` come from joining frequent ``(k-1)``-itemsets that
share their first ``k-2`` items, then pruning any candidate with an
infrequent ``(k-1)``-subset. Supports are counted on the bitmap columns of a
:class:`~ruleminer.transactions.TransactionDb`, reusing the cached bitset of
each candidate's ``(k-1)``-prefix so every candidate costs one ``&``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Sequence

from .errors import InvalidConfig, MixedSizes
from .transactions import TransactionDb

LIFT_MODES = ("consequent", "antecedent")
THREADS_ENV = "RULEMINER_THREADS"


def exact(x) -> Fraction:
    """Exact rational for a threshold, reading floats by their decimal repr.

    ``Fraction(0.1)`` is the binary double just above 1/10; going through
    ``str`` gives 1/10, which is what a user typing ``0.1`` means.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


@dataclass(frozen=True)
class MiningConfig:
    """Thresholds for mining and rule generation.

    Defaults are 0.1 / 0.8 / 0.01 / 1, the configuration used for the
    terrorism-incident study this package reproduces.
    """

    min_support: float = 0.1
    min_confidence: float = 0.8
    min_lift: float = 0.01
    min_length: int = 1
    max_itemset_size: int | None = None
    lift_mode: str = "consequent"

    def __post_init__(self):
        for name in ("min_support", "min_confidence", "min_lift"):
            v = getattr(self, name)
            if isinstance(v, float) and not math.isfinite(v):
                raise InvalidConfig(f"{name} must be finite, got {v}")
        if not 0 <= exact(self.min_support) <= 1:
            raise InvalidConfig(f"min_support must lie in [0, 1], got {self.min_support}")
        if not 0 <= exact(self.min_confidence) <= 1:
            raise InvalidConfig(f"min_confidence must lie in [0, 1], got {self.min_confidence}")
        if exact(self.min_lift) < 0:
            raise InvalidConfig(f"min_lift must be non-negative, got {self.min_lift}")
        if int(self.min_length) != self.min_length or self.min_length < 1:
            raise InvalidConfig(f"min_length must be a positive integer, got {self.min_length}")
        if self.max_itemset_size is not None and (
            int(self.max_itemset_size) != self.max_itemset_size or self.max_itemset_size < 1
        ):
            raise InvalidConfig(f"max_itemset_size must be a positive integer or None, got {self.max_itemset_size}")
        if self.lift_mode not in LIFT_MODES:
            raise InvalidConfig(f"lift_mode must be one of {LIFT_MODES}, got {self.lift_mode!r}")

    def min_count(self, n: int) -> int:
        """Smallest absolute count meeting ``min_support`` on ``n`` transactions.

        An itemset must occur at least once to count as frequent, so the
        result is never below 1.
        """
        return max(1, math.ceil(exact(self.min_support) * n))

    def to_dict(self) -> dict:
        return {
            "min_support": self.min_support,
            "min_confidence": self.min_confidence,
            "min_lift": self.min_lift,
            "min_length": self.min_length,
            "max_itemset_size": self.max_itemset_size,
            "lift_mode": self.lift_mode,
        }


@dataclass(frozen=True, order=True)
class FrequentItemset:
    items: tuple[int, ...]
    count: int
    support: float

    @classmethod
    def of(cls, items: Sequence[int], count: int, n: int) -> "FrequentItemset":
        return cls(tuple(items), count, count / n)

    def __len__(self) -> int:
        return len(self.items)


def sort_key(fi: FrequentItemset) -> tuple:
    return (len(fi.items), fi.items)


def frequent_1_itemsets(db: TransactionDb, cfg: MiningConfig) -> list[FrequentItemset]:
    if db.n == 0:
        return []
    need = cfg.min_count(db.n)
    out = []
    for i, col in enumerate(db.columns):
        c = col.bit_count()
        if c >= need:
            out.append(FrequentItemset.of((i,), c, db.n))
    return out


def _items(x) -> tuple[int, ...]:
    return x.items if isinstance(x, FrequentItemset) else tuple(x)


def apriori_gen(prev: Iterable[FrequentItemset | Sequence[int]]) -> list[tuple[int, ...]]:
    """Join-and-prune candidate generation from frequent ``(k-1)``-itemsets.

    Returns size-``k`` candidates in lexicographic order. Raises
    :class:`MixedSizes` if ``prev`` mixes itemset lengths.
    """
    level = sorted({_items(x) for x in prev})
    if not level:
        return []
    size = len(level[0])
    if size < 1 or any(len(s) != size for s in level):
        raise MixedSizes(f"expected itemsets of one size, got sizes {sorted({len(s) for s in level})}")
    known = set(level)
    out = []
    for _, group in groupby(level, key=lambda s: s[:-1]):
        group = list(group)
        for a_idx, a in enumerate(group):
            for b in group[a_idx + 1:]:
                cand = a + (b[-1],)
                # Subsets dropping either of the last two items are a and b.
                if all(cand[:j] + cand[j + 1:] in known for j in range(size - 1)):
                    out.append(cand)
    return out


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, workers)


def mine_frequent(db: TransactionDb, cfg: MiningConfig, *, workers: int | None = None) -> list[FrequentItemset]:
    """All itemsets meeting ``cfg.min_support``, sorted by (size, items).

    ``workers`` (default: ``$RULEMINER_THREADS`` or 1) splits each level's
    candidate counting into contiguous chunks; results are concatenated in
    candidate order, so the output does not depend on it.
    """
    if db.n == 0:
        return []
    need = cfg.min_count(db.n)
    max_size = cfg.max_itemset_size
    workers = _resolve_workers(workers)
    columns = db.columns

    result = frequent_1_itemsets(db, cfg)
    bits = {fi.items: columns[fi.items[0]] for fi in result}
    size = 1
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while bits and (max_size is None or size < max_size):
            candidates = apriori_gen(bits)
            if not candidates:
                break

            def count(chunk, prev=bits):
                found = []
                for cand in chunk:
                    b = prev[cand[:-1]] & columns[cand[-1]]
                    c = b.bit_count()
                    if c >= need:
                        found.append((cand, b, c))
                return found

            if pool is None:
                counted = count(candidates)
            else:
                step = -(-len(candidates) // workers)
                chunks = [candidates[i:i + step] for i in range(0, len(candidates), step)]
                counted = [x for part in pool.map(count, chunks) for x in part]

            bits = {}
            for cand, b, c in counted:
                bits[cand] = b
                result.append(FrequentItemset.of(cand, c, db.n))
            size += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def lattice(frequent: Iterable[FrequentItemset]) -> dict[tuple[int, ...], int]:
    """Map each frequent itemset to its absolute count."""
    return {fi.items: fi.count for fi in frequent}
