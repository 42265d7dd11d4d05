"""Rebuild the golden rule file from the brute-force enumerator.

The golden file deliberately does not come from the Apriori path, so the
byte comparison in the acceptance suite checks the miner against an
independent computation. Run from the repository root:

    python tests/golden/regenerate.py
"""

from pathlib import Path

from ruleminer.apriori import MiningConfig
from ruleminer.gtd import load_gtd, records_to_db
from ruleminer.oracle import oracle_rules
from ruleminer.rules import RuleReport, rules_to_csv
from ruleminer.synth import FIXTURE_PATH

GOLDEN = Path(__file__).with_name("fixture_rules.csv")


def golden_text() -> str:
    records, _ = load_gtd(FIXTURE_PATH)
    db = records_to_db(records)
    cfg = MiningConfig()
    report = RuleReport(oracle_rules(db, cfg), cfg, db.n, db.item_count, db.dictionary)
    return rules_to_csv(report)


if __name__ == "__main__":
    GOLDEN.write_text(golden_text(), encoding="utf-8", newline="")
    print(f"wrote {GOLDEN}")
