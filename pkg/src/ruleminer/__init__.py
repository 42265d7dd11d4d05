"""Apriori frequent-itemset and association-rule mining over event data."""

__version__ = "0.1.0"

from .apriori import FrequentItemset, MiningConfig, apriori_gen, frequent_1_itemsets, mine_frequent
from .errors import RuleMinerError
from .oracle import oracle_frequent, oracle_rules
from .rules import (
    AssociationRule,
    RuleReport,
    confidence,
    filter_rules,
    generate_rules,
    lift,
    support_fraction,
)
from .transactions import ItemDictionary, TransactionDb, build_db, intern_item, support_count

__all__ = [
    "AssociationRule",
    "FrequentItemset",
    "ItemDictionary",
    "MiningConfig",
    "RuleMinerError",
    "RuleReport",
    "TransactionDb",
    "apriori_gen",
    "build_db",
    "confidence",
    "filter_rules",
    "frequent_1_itemsets",
    "generate_rules",
    "intern_item",
    "lift",
    "mine_frequent",
    "oracle_frequent",
    "oracle_rules",
    "support_count",
    "support_fraction",
]
