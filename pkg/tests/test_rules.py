import csv
import io
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ruleminer.apriori import MiningConfig, mine_frequent
from ruleminer.errors import EmptyDatabase, IncompleteLattice, UnknownLabel, ZeroAntecedentSupport, ZeroSupport
from ruleminer.oracle import oracle_rules
from ruleminer.reference import PUBLISHED_RULES
from ruleminer.rules import (
    AssociationRule,
    RuleReport,
    confidence,
    filter_rules,
    generate_rules,
    lift,
    rules_to_csv,
    rules_to_json,
    support_fraction,
)
from ruleminer.transactions import ItemDictionary, build_db

from conftest import ids


def test_support_fraction_example():
    db = build_db([["A", "B"], ["A"], ["B"]])
    assert support_fraction(db, ids(db, "A")) == 2 / 3


def test_support_fraction_single_transaction():
    db = build_db([["A", "B", "C"]])
    assert support_fraction(db, ids(db, "A", "B", "C")) == 1.0


def test_support_fraction_empty_db():
    db = build_db([])
    with pytest.raises(EmptyDatabase):
        support_fraction(db, (0,))


def test_confidence_example(abab_db):
    db = abab_db
    assert confidence(db, ids(db, "A"), ids(db, "B")) == 2 / 3


def test_confidence_exact_implication():
    db = build_db([["A", "B"], ["A", "B"], ["B"]])
    assert confidence(db, ids(db, "A"), ids(db, "B")) == 1.0


def test_confidence_zero_antecedent():
    d = ItemDictionary()
    d.intern("item", "Z")
    db = build_db([["A", "B"]], d)
    with pytest.raises(ZeroAntecedentSupport):
        confidence(db, ids(db, "Z"), ids(db, "A"))


def test_confidence_rejects_overlap(abab_db):
    with pytest.raises(ValueError):
        confidence(abab_db, ids(abab_db, "A"), ids(abab_db, "A", "B"))


def test_lift_example(abab_db):
    db = abab_db
    assert lift(db, ids(db, "A"), ids(db, "B")) == 8 / 9


def test_lift_antecedent_mode(abab_db):
    db = abab_db
    # conf(A=>C) = 1/3; support(C) = 1/4; support(A) = 3/4
    assert lift(db, ids(db, "A"), ids(db, "C"), "consequent") == 4 / 3
    assert lift(db, ids(db, "A"), ids(db, "C"), "antecedent") == 4 / 9


def test_lift_independent_items_is_one():
    db = build_db([["A", "B"], ["A"], ["B"], ["C"]])
    assert lift(db, ids(db, "A"), ids(db, "B")) == 1.0


def test_lift_zero_support():
    d = ItemDictionary()
    d.intern("item", "Z")
    db = build_db([["A"]], d)
    with pytest.raises(ZeroSupport):
        lift(db, ids(db, "A"), ids(db, "Z"))


def _labelled_rules(report):
    return {
        (tuple(report.labels(r.antecedent)), tuple(report.labels(r.consequent))): (r.support, r.confidence, r.lift)
        for r in report.rules
    }


def test_generate_rules_example():
    db = build_db([["A", "B"]] * 3 + [["C"]])
    cfg = MiningConfig(min_support=0.5, min_confidence=0.8)
    report = generate_rules(mine_frequent(db, cfg), db, cfg)
    assert _labelled_rules(report) == {
        (("A",), ("B",)): (0.75, 1.0, 4 / 3),
        (("B",), ("A",)): (0.75, 1.0, 4 / 3),
    }
    assert report.db_summary == {"n": 4, "item_count": 3}


def test_generate_rules_confidence_one_excludes_inexact():
    db = build_db([["A", "B"], ["A"], ["B"]])
    cfg = MiningConfig(min_support=0.1, min_confidence=1.0)
    report = generate_rules(mine_frequent(db, cfg), db, cfg)
    assert report.rules == []


def test_generate_rules_incomplete_lattice():
    db = build_db([["A", "B"]] * 3 + [["C"]])
    cfg = MiningConfig(min_support=0.5)
    frequent = [f for f in mine_frequent(db, cfg) if len(f.items) == 2]
    with pytest.raises(IncompleteLattice):
        generate_rules(frequent, db, cfg)


def test_min_length_counts_all_rule_items():
    db = build_db([["A", "B", "C"]] * 4 + [["A"]])
    cfg = MiningConfig(min_support=0.5, min_confidence=0.5, min_length=3)
    report = generate_rules(mine_frequent(db, cfg), db, cfg)
    assert report.rules and all(r.size >= 3 for r in report.rules)
    assert report.rules == oracle_rules(db, cfg)


def test_ranking_order():
    db = build_db([["A", "B"]] * 3 + [["A"], ["B", "C"], ["C"]])
    cfg = MiningConfig(min_support=0.1, min_confidence=0.0, min_lift=0.0)
    rules = generate_rules(mine_frequent(db, cfg), db, cfg).rules
    keys = [(-r.confidence, -r.lift, -r.support, r.antecedent, r.consequent) for r in rules]
    assert keys == sorted(keys)


def test_threshold_boundary_is_inclusive():
    # conf(A=>B) = 4/5 exactly; 0.8 must admit it despite 0.8 not being 4/5 in binary
    db = build_db([["A", "B"]] * 4 + [["A"]])
    cfg = MiningConfig(min_support=0.1, min_confidence=0.8)
    report = generate_rules(mine_frequent(db, cfg), db, cfg)
    assert (("A",), ("B",)) in _labelled_rules(report)


# ---- filtering


BORNO_ROWS = (
    [[("provstate", "Borno"), ("success", "Successful"), ("suicide", "Not Suicide")]] * 6
    + [[("provstate", "Borno"), ("success", "Successful"), ("suicide", "Suicide")]] * 1
    + [[("provstate", "Yobe"), ("success", "Successful"), ("suicide", "Not Suicide")]] * 2
    + [[("provstate", "Yobe"), ("success", "Not Successful"), ("suicide", "Not Suicide")]] * 1
)


def test_filter_lhs_borno_matches_oracle_subset():
    db = build_db(BORNO_ROWS)
    cfg = MiningConfig(min_support=0.1, min_confidence=0.5)
    report = generate_rules(mine_frequent(db, cfg), db, cfg)
    borno = db.dictionary.id_of("provstate", "Borno")
    expected = [r for r in oracle_rules(db, cfg) if borno in r.antecedent]
    assert expected
    assert filter_rules(report, lhs="Borno").rules == expected
    assert filter_rules(report, lhs="provstate=Borno").rules == expected
    exact_only = filter_rules(report, lhs="Borno", exact_match=True).rules
    assert exact_only == [r for r in expected if r.antecedent == (borno,)]


def test_filter_unknown_label():
    db = build_db(BORNO_ROWS)
    report = generate_rules(mine_frequent(db, MiningConfig()), db, MiningConfig())
    with pytest.raises(UnknownLabel):
        filter_rules(report, rhs="Lagos")


def test_filter_empty_report():
    db = build_db(BORNO_ROWS)
    empty = RuleReport([], MiningConfig(), db.n, db.item_count, db.dictionary)
    assert filter_rules(empty, lhs="Borno").rules == []


def _published_report():
    d = ItemDictionary()
    rules = []
    for p in PUBLISHED_RULES:
        x, y = d.intern("label", p.lhs), d.intern("label", p.rhs)
        rules.append(AssociationRule((x,), (y,), p.support, p.confidence, p.lift, 0, 0, 0))
    return RuleReport(rules, MiningConfig(), 0, len(d), d)


def test_filter_published_table_rhs_not_suicide():
    report = _published_report()
    got = filter_rules(report, rhs="Not Suicide")
    rows = [p.row for p in PUBLISHED_RULES if (p.support, p.confidence) in {(r.support, r.confidence) for r in got.rules}]
    assert rows == [2, 4, 12, 14, 22, 23, 27, 31, 33, 34, 35, 39]


def test_filter_published_table_lhs_borno():
    got = filter_rules(_published_report(), lhs="Borno")
    assert [report_rhs for report_rhs in (_published_report().labels(r.consequent)[0] for r in got.rules)] == [
        "Not Suicide", "Not Extended", "Multiple", "Private Citizens & Property", "Not Multiple", "Successful",
    ]


# ---- serialization


def _report():
    db = build_db([["A", "B"], ["A", "B"], ["A", "C"], ["B"], ["A", "B", "C"], ["C"]])
    cfg = MiningConfig(min_support=0.1, min_confidence=0.3)
    return generate_rules(mine_frequent(db, cfg), db, cfg)


def test_csv_layout_and_round_trip():
    report = _report()
    text = rules_to_csv(report)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["lhs", "rhs", "support", "confidence", "lift"]
    assert len(rows) == len(report.rules) + 1
    for row, rule in zip(rows[1:], report.rules):
        assert float(row[2]) == rule.support
        assert float(row[3]) == rule.confidence
        assert float(row[4]) == rule.lift
        assert row[0] == " | ".join(report.labels(rule.antecedent))


def test_csv_seventeen_digits():
    report = _report()
    text = rules_to_csv(report)
    assert "0.33333333333333331" in text  # 2/6 printed with 17 significant digits


def test_json_contents():
    report = _report()
    data = json.loads(rules_to_json(report))
    assert data["config_used"]["min_support"] == 0.1
    assert data["db_summary"] == {"n": 6, "item_count": 3}
    assert len(data["rules"]) == len(report.rules)
    first = data["rules"][0]
    assert first["lhs"][0].keys() == {"field", "label"}
    assert first["confidence"] == report.rules[0].confidence


def test_empty_rules_csv_has_header():
    db = build_db([["A"], ["B"]])
    cfg = MiningConfig(min_support=1.0)
    assert rules_to_csv(generate_rules(mine_frequent(db, cfg), db, cfg)) == "lhs,rhs,support,confidence,lift\n"


# ---- properties


db_rows = st.lists(st.lists(st.integers(0, 9), min_size=1, max_size=10), min_size=1, max_size=150)


@settings(max_examples=100, deadline=None)
@given(rows=db_rows, min_support=st.sampled_from([0.05, 0.1, 0.25]))
def test_rule_metric_invariants(rows, min_support):
    db = build_db([[str(x) for x in r] for r in rows])
    cfg = MiningConfig(min_support=min_support, min_confidence=0.0, min_lift=0.0)
    report = generate_rules(mine_frequent(db, cfg), db, cfg)
    for r in report.rules:
        assert set(r.antecedent).isdisjoint(r.consequent) and r.antecedent and r.consequent
        sx, sy = r.antecedent_count / db.n, r.consequent_count / db.n
        assert r.support <= min(sx, sy)
        assert 0 <= r.support <= r.confidence <= 1
        assert all(math.isfinite(v) for v in (r.support, r.confidence, r.lift))
        assert r.confidence == float(Fraction(r.count, r.antecedent_count))
        # reported support is the union's
        assert r.support == support_fraction(db, tuple(sorted(r.antecedent + r.consequent)))
        assert r.lift == lift(db, r.consequent, r.antecedent)
        if r.confidence == 1.0:
            assert abs(r.lift - 1 / sy) <= math.ulp(r.lift)
