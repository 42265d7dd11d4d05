"""
Frequency tables behind the figures
===================================

Counts and shares by year, target, success, suicide and state. Shares are
exact fractions; ``percent`` rounds to one decimal for display.
"""

# %%
from ruleminer.gtd import load_gtd
from ruleminer.stats import boolean_ratio, figure_tables, state_counts, target_counts, yearly_counts
from ruleminer.synth import FIXTURE_PATH

records, _ = load_gtd(FIXTURE_PATH)

years = yearly_counts(records)
for row in years.rows:
    print(row.label, row.count, f"{row.percent}%")

# %%
# Target subtypes. Incidents without a subtype are tabulated as
# "Unknown/Blank" rather than dropped.
subtypes = target_counts(records, "subtype")
print(subtypes.top)

# %%
# Success and suicide ratios ignore incidents where the flag is missing.
print("success", boolean_ratio(records, "success"))
print("suicide", boolean_ratio(records, "suicide"))

# %%
states = state_counts(records)
print("most attacked:", [r.label for r in states.rows[:3]])

# %%
# Every table as plot-ready CSV, keyed by output file name.
for name, table in figure_tables(records).items():
    print(name)
    print(table.to_csv())
