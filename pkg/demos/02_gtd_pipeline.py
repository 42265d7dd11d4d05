"""
From incident CSV to rules
==========================

Load a GTD-schema CSV, keep one country, itemize each incident into
(field, label) items and mine rules under the default thresholds
(support 0.1, confidence 0.8, lift 0.01, minimum length 1).

The bundled fixture is synthetic. Point ``path`` at a real GTD extract to
run the same steps on real data (use ``labels="text"`` there so attack and
target labels come from the GTD text columns).
"""

# %%
from ruleminer import MiningConfig, filter_rules, generate_rules, mine_frequent
from ruleminer.gtd import itemize, load_gtd, records_to_db
from ruleminer.synth import FIXTURE_PATH

path = FIXTURE_PATH
records, summary = load_gtd(path, country="Nigeria", year_range=(1970, 2019))
print(summary.to_dict())

# %%
# One incident, itemized. Blank fields produce no item.
print(itemize(records[0]))

# %%
db = records_to_db(records)
cfg = MiningConfig()
report = generate_rules(mine_frequent(db, cfg), db, cfg)
print(len(report), "strong rules")

# %%
# Rules with a given label on one side. Labels can be qualified as
# "field=label" when the same text appears under two fields.
village = filter_rules(report, rhs=["Village/City/Town/Suburb"])
for rule in village.rules[:5]:
    print(f"{report.describe(rule)}  support={rule.support:.3f} confidence={rule.confidence:.3f} lift={rule.lift:.3f}")

borno = filter_rules(report, lhs=["provstate=Borno"], exact_match=True)
for rule in borno.rules[:5]:
    print(f"{report.describe(rule)}  support={rule.support:.3f} confidence={rule.confidence:.3f} lift={rule.lift:.3f}")
