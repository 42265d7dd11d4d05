"""Exception types raised across the mining pipeline."""


class RuleMinerError(Exception):
    """Base class for all package errors."""


class EmptyTransaction(RuleMinerError):
    def __init__(self, row: int):
        super().__init__(f"transaction at row {row} has no items")
        self.row = row


class UnknownItem(RuleMinerError):
    def __init__(self, item_id: int):
        super().__init__(f"unknown item id {item_id}")
        self.item_id = item_id


class MixedSizes(RuleMinerError):
    """Candidate generation received itemsets of different sizes."""


class EmptyDatabase(RuleMinerError):
    """A fraction over zero transactions was requested."""


class ZeroAntecedentSupport(RuleMinerError):
    """Confidence is undefined for an antecedent that never occurs."""


class ZeroSupport(RuleMinerError):
    """A lift denominator is zero."""


class IncompleteLattice(RuleMinerError):
    """Rule generation needed a subset count absent from the frequent itemsets."""

    def __init__(self, items):
        super().__init__(f"support of itemset {tuple(items)} is missing from the frequent list")
        self.items = tuple(items)


class UnknownLabel(RuleMinerError):
    def __init__(self, label: str):
        super().__init__(f"label {label!r} is not in the item dictionary")
        self.label = label


class MissingColumn(RuleMinerError):
    def __init__(self, name: str):
        super().__init__(f"required column {name!r} not found in header")
        self.name = name


class MalformedRow(RuleMinerError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class TooManyItems(RuleMinerError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"{count} distinct items exceeds the brute-force limit of {limit}")
        self.count = count
        self.limit = limit


class InvalidConfig(RuleMinerError, ValueError):
    """A mining threshold is outside its allowed range."""
