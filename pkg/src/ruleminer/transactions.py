"""Interned, column-bitmapped transaction database.

Items are ``(field, label)`` pairs interned to dense integer ids. Each item
owns one bitset column (a Python ``int``) whose bit ``t`` is set iff
transaction ``t`` contains the item, so support counting reduces to a chain
of ``&`` followed by a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import EmptyTransaction, UnknownItem

Item = tuple[str, str]
ItemLike = Union[str, Item]

#: Field name used for bare string items (generic basket data).
DEFAULT_FIELD = "item"


class ItemDictionary:
    """Bidirectional map between dense ids and ``(field, label)`` pairs."""

    def __init__(self, pairs: Iterable[Item] = ()):
        self._items: list[Item] = []
        self._ids: dict[Item, int] = {}
        for f, lab in pairs:
            self.intern(f, lab)

    def intern(self, field: str, label: str) -> int:
        if not field or not label:
            raise ValueError("field and label must be nonempty text")
        key = (field, label)
        item_id = self._ids.get(key)
        if item_id is None:
            item_id = len(self._items)
            self._items.append(key)
            self._ids[key] = item_id
        return item_id

    def id_of(self, field: str, label: str) -> int:
        return self._ids[(field, label)]

    def get(self, field: str, label: str) -> int | None:
        return self._ids.get((field, label))

    def item(self, item_id: int) -> Item:
        if not 0 <= item_id < len(self._items):
            raise UnknownItem(item_id)
        return self._items[item_id]

    def label(self, item_id: int) -> str:
        return self.item(item_id)[1]

    def ids_with_label(self, label: str) -> list[int]:
        """All ids whose label is ``label``; ``field=label`` restricts the field."""
        if (item_id := self._ids.get(_split_qualified(label))) is not None:
            return [item_id]
        return [i for i, (_, lab) in enumerate(self._items) if lab == label]

    def items(self) -> list[Item]:
        return list(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, key: Item) -> bool:
        return key in self._ids

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ItemDictionary) and self._items == other._items

    def __repr__(self) -> str:
        return f"ItemDictionary({len(self)} items)"


def _split_qualified(label: str) -> Item | tuple[str, str]:
    f, sep, rest = label.partition("=")
    return (f, rest) if sep else ("", label)


def intern_item(dictionary: ItemDictionary, field: str, label: str) -> int:
    return dictionary.intern(field, label)


@dataclass(frozen=True)
class TransactionDb:
    """Immutable transaction database with one bitset column per item.

    Read-only after construction; safe to share between threads.
    """

    dictionary: ItemDictionary
    transactions: tuple[tuple[int, ...], ...]
    columns: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.transactions)

    @property
    def item_count(self) -> int:
        return len(self.dictionary)

    def column(self, item_id: int) -> int:
        if not 0 <= item_id < len(self.columns):
            raise UnknownItem(item_id)
        return self.columns[item_id]

    def item_counts(self) -> list[int]:
        return [c.bit_count() for c in self.columns]

    def rows(self) -> list[list[Item]]:
        """Read the transactions back as ``(field, label)`` lists."""
        item = self.dictionary.item
        return [[item(i) for i in t] for t in self.transactions]

    def labels(self, itemset: Iterable[int]) -> list[str]:
        return [self.dictionary.label(i) for i in itemset]


def _as_item(x: ItemLike) -> Item:
    if isinstance(x, str):
        return (DEFAULT_FIELD, x)
    f, lab = x
    return (f, lab)


def build_db(rows: Sequence[Sequence[ItemLike]], dictionary: ItemDictionary | None = None) -> TransactionDb:
    """Intern ``rows`` and build the vertical bitmap layout.

    Rows hold ``(field, label)`` pairs or bare strings (filed under
    ``"item"``). Duplicates inside a row are dropped and each stored
    transaction is sorted by item id. Row order is preserved.
    """
    if dictionary is None:
        dictionary = ItemDictionary()
    transactions = []
    for r, row in enumerate(rows):
        if not row:
            raise EmptyTransaction(r)
        ids = {dictionary.intern(*_as_item(x)) for x in row}
        transactions.append(tuple(sorted(ids)))
    return from_id_rows(transactions, dictionary)


def from_id_rows(transactions: Sequence[Sequence[int]], dictionary: ItemDictionary) -> TransactionDb:
    """Build a database from rows that are already interned ids."""
    m = len(dictionary)
    # Accumulate set-bit positions per item, then assemble each column once.
    positions: list[list[int]] = [[] for _ in range(m)]
    stored = []
    for t, row in enumerate(transactions):
        if not row:
            raise EmptyTransaction(t)
        items = tuple(sorted(set(row)))
        for i in items:
            if not 0 <= i < m:
                raise UnknownItem(i)
            positions[i].append(t)
        stored.append(items)
    columns = tuple(_bitset(p) for p in positions)
    return TransactionDb(dictionary, tuple(stored), columns)


def _bitset(positions: list[int]) -> int:
    if not positions:
        return 0
    buf = bytearray((positions[-1] >> 3) + 1)
    for p in positions:
        buf[p >> 3] |= 1 << (p & 7)
    return int.from_bytes(buf, "little")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def itemset_bits(db: TransactionDb, itemset: Iterable[int]) -> int:
    """Bitset of transactions containing every item of ``itemset``."""
    bits = full_mask(db.n)
    for i in itemset:
        bits &= db.column(i)
    return bits


def support_count(db: TransactionDb, itemset: Sequence[int]) -> int:
    """Number of transactions containing ``itemset``; the empty set gives ``n``."""
    return itemset_bits(db, itemset).bit_count()
