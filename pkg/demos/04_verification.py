"""
Checking the miner against brute force
======================================

The brute-force enumerator counts every subset of every transaction and
every split of every frequent itemset. It is slow but has nothing in
common with the Apriori code path, so agreement between the two is strong
evidence the miner is right.
"""

# %%
import random

from ruleminer import MiningConfig, build_db, mine_frequent, oracle_frequent
from ruleminer.verify import compare_with_oracle, downward_closed, random_db, random_equivalence

db = build_db([["A", "B"], ["A", "B"], ["A", "C"], ["B"]])
cfg = MiningConfig(min_support=0.5)
print(mine_frequent(db, cfg) == oracle_frequent(db, 0.5))

# %%
# Random databases: an empty list means no differences.
rng = random.Random(3)
print(compare_with_oracle(random_db(rng), MiningConfig(min_support=0.05, min_confidence=0.5)))
print(random_equivalence(100, seed=1))

# %%
# Downward closure: every subset of a frequent itemset is frequent with at
# least the same count.
print(downward_closed(mine_frequent(random_db(rng), MiningConfig(min_support=0.05))))

# %%
# Published rule table rows that contradict each other or the published
# marginal shares.
from ruleminer.reference import audit_published_rules

for row, reason in list(audit_published_rules().items())[:4]:
    print(row, reason)
