"""
Mining a small basket database
==============================

Frequent itemsets and strong rules on a toy grocery database, with the
three rule metrics worked out by hand next to what the library reports.
"""

# %%
# Build a database. Bare strings become items; ids follow first-seen order.
from ruleminer import MiningConfig, build_db, generate_rules, mine_frequent
from ruleminer.rules import rules_to_csv

baskets = [
    ["bread", "milk"],
    ["bread", "butter", "milk"],
    ["bread", "butter"],
    ["milk", "eggs"],
    ["bread", "butter", "milk", "eggs"],
]
db = build_db(baskets)
print(db.n, "transactions over", db.item_count, "items")

# %%
# Frequent itemsets at 40% support. With n = 5 that means a count of at
# least 2.
cfg = MiningConfig(min_support=0.4, min_confidence=0.7, min_lift=1.0)
frequent = mine_frequent(db, cfg)
for fi in frequent:
    print(db.labels(fi.items), fi.count, fi.support)

# %%
# Rules. {butter} => {bread}: butter appears in 3 baskets, always with
# bread, so confidence is 3/3 = 1. Bread appears in 4 of 5 baskets, so lift
# is 1 / 0.8 = 1.25.
report = generate_rules(frequent, db, cfg)
for rule in report.rules:
    print(f"{report.describe(rule)}  support={rule.support:.3f} confidence={rule.confidence:.3f} lift={rule.lift:.3f}")

# %%
# The CSV layout matches a printed rule table: lhs, rhs, support,
# confidence, lift.
print(rules_to_csv(report))

# %%
# Lift can also be computed by dividing by the antecedent's support. That
# variant is available for comparison but is not symmetric.
alt = generate_rules(frequent, db, MiningConfig(min_support=0.4, min_confidence=0.7,
                                                min_lift=0.0, lift_mode="antecedent"))
for rule in alt.rules[:3]:
    print(f"{alt.describe(rule)}  lift={rule.lift:.3f}")
