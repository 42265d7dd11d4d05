"""Property checks (miner vs brute force, lattice and metric invariants) and the published-claims checker."""

from __future__ import annotations

import difflib
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .apriori import FrequentItemset, MiningConfig, mine_frequent
from .gtd import GtdRecord
from .oracle import MAX_ITEMS, oracle_frequent, oracle_rules
from .reference import (
    HIGH_ATTACK_STATES,
    LOW_ATTACK_STATES,
    PUBLISHED_RULE_COUNT,
    PUBLISHED_RULES,
    PUBLISHED_SHARES,
    audit_published_rules,
)
from .rules import AssociationRule, RuleReport, generate_rules
from .stats import boolean_ratio, state_counts, target_counts, yearly_counts
from .synth import random_baskets
from .transactions import TransactionDb, build_db

PASS, FAIL, SKIP, IRREPRODUCIBLE = "PASS", "FAIL", "SKIPPED", "IRREPRODUCIBLE"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Claim:
    claim: str
    expected: object
    reproduced: object
    tolerance: str
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)
    claims: list[Claim] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "claims": [c.to_dict() for c in self.claims],
        }

    def render(self) -> str:
        lines = ["property checks:"]
        lines += [f"  [{c.status}] {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        if self.claims:
            lines.append("published claims:")
            for c in self.claims:
                line = f"  [{c.status}] {c.claim}: expected {c.expected}, got {c.reproduced} ({c.tolerance})"
                if c.note:
                    line += f" -- {c.note}"
                lines.append(line)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- invariants


def downward_closed(frequent: Sequence[FrequentItemset]) -> list[str]:
    """Violations of: every nonempty proper subset of a returned itemset is returned with >= support."""
    counts = {fi.items: fi.count for fi in frequent}
    problems = []
    for items, c in counts.items():
        # Dropping one item at a time covers all proper subsets by induction.
        for j in range(len(items)) if len(items) > 1 else ():
            sub = items[:j] + items[j + 1:]
            if sub not in counts:
                problems.append(f"{items} frequent but subset {sub} missing")
            elif counts[sub] < c:
                problems.append(f"count{sub}={counts[sub]} < count{items}={c}")
    return problems


def _within_ulp(a: float, b: float, ulps: int = 1) -> bool:
    return abs(a - b) <= ulps * math.ulp(max(abs(a), abs(b)))


def metric_violations(rules: Sequence[AssociationRule], n: int, lift_mode: str = "consequent") -> list[str]:
    """Violations of the per-rule metric identities.

    support <= confidence <= 1; lift is symmetric under swapping sides
    (consequent mode); confidence 1 gives lift == 1/support(consequent).
    """
    problems = []
    by_sides = {(r.antecedent, r.consequent): r for r in rules}
    for r in rules:
        tag = f"{r.antecedent}=>{r.consequent}"
        if not (0 <= r.support <= r.confidence <= 1):
            problems.append(f"{tag}: support {r.support} / confidence {r.confidence} out of order")
        if not all(math.isfinite(v) for v in (r.support, r.confidence, r.lift)):
            problems.append(f"{tag}: non-finite metric")
        if r.count > min(r.antecedent_count, r.consequent_count):
            problems.append(f"{tag}: union count exceeds a side count")
        if lift_mode != "consequent":
            continue
        twin = by_sides.get((r.consequent, r.antecedent))
        if twin is not None and not _within_ulp(r.lift, twin.lift):
            problems.append(f"{tag}: lift {r.lift} != reverse lift {twin.lift}")
        if r.count == r.antecedent_count:
            expected = 1 / (r.consequent_count / n)
            if not _within_ulp(r.lift, expected):
                problems.append(f"{tag}: confidence 1 but lift {r.lift} != 1/support(Y) = {expected}")
    return problems


# ---------------------------------------------------------------- miner vs oracle


def random_db(rng: random.Random, max_n: int = 200, max_items: int = 15) -> TransactionDb:
    m = rng.randint(1, max_items)
    n = rng.randint(0, max_n)
    return build_db(random_baskets(n, m, seed=rng.getrandbits(32), p_range=(0.05, rng.uniform(0.1, 0.5))))


RANDOM_THRESHOLDS = [
    MiningConfig(),
    MiningConfig(min_support=0.05, min_confidence=0.5, min_lift=0.0),
    MiningConfig(min_support=0.25, min_confidence=0.9, min_lift=1.0),
    MiningConfig(min_support=0.5, min_confidence=0.0, min_lift=0.01, min_length=3),
    MiningConfig(min_support=0.1, min_confidence=0.6, min_lift=1.1, lift_mode="antecedent"),
    MiningConfig(min_support=0.05, min_confidence=0.7, min_lift=0.5, max_itemset_size=3),
]


def compare_with_oracle(db: TransactionDb, cfg: MiningConfig) -> list[str]:
    """Differences between the Apriori path and the brute-force path on ``db``."""
    frequent = mine_frequent(db, cfg)
    expected = oracle_frequent(db, cfg.min_support, cfg.max_itemset_size)
    problems = []
    if frequent != expected:
        got, want = set(frequent), set(expected)
        problems.append(f"frequent itemsets differ: {len(got - want)} extra, {len(want - got)} missing")
    rules = generate_rules(frequent, db, cfg).rules
    if rules != oracle_rules(db, cfg):
        problems.append("rules differ from brute-force enumeration")
    problems += downward_closed(frequent)
    problems += metric_violations(rules, db.n, cfg.lift_mode)
    return problems


def random_equivalence(count: int, seed: int = 0) -> Check:
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        db = random_db(rng)
        cfg = RANDOM_THRESHOLDS[k % len(RANDOM_THRESHOLDS)]
        problems = compare_with_oracle(db, cfg)
        if problems:
            failures.append(f"db #{k}: {problems[0]}")
    name = f"miner == brute force on {count} random databases (seed {seed})"
    if failures:
        return Check(name, FAIL, f"{len(failures)} failing; first: {failures[0]}")
    return Check(name, PASS)


def project_frequent_items(db: TransactionDb, cfg: MiningConfig) -> tuple[TransactionDb, dict[int, int]]:
    """Restrict ``db`` to items meeting ``min_support`` alone, keeping ``n``.

    Rows left empty get a placeholder item. Returns the projected database
    and a map from projected ids to original ids (placeholder excluded).
    """
    need = cfg.min_count(db.n)
    keep = [i for i, c in enumerate(db.item_counts()) if c >= need]
    keep_set = set(keep)
    placeholder = ("", "<none>")
    rows = []
    for t in db.transactions:
        items = [db.dictionary.item(i) for i in t if i in keep_set]
        rows.append(items or [placeholder])
    proj = build_db(rows)
    back = {proj.dictionary.id_of(*db.dictionary.item(i)): i for i in keep if db.dictionary.item(i) in proj.dictionary}
    return proj, back


def dataset_equivalence(db: TransactionDb, cfg: MiningConfig, frequent, report: RuleReport) -> Check:
    """Brute-force check of the mined lattice and rules on the actual data.

    Items below ``min_support`` on their own cannot be part of any frequent
    itemset, so the oracle runs on the projection onto the remaining items.
    """
    name = "mined itemsets and rules == brute force on this dataset"
    if db.n == 0:
        return Check(name, PASS, "empty database")
    proj, back = project_frequent_items(db, cfg)
    if len(back) > MAX_ITEMS:
        return Check(name, SKIP, f"{len(back)} frequent single items exceeds brute-force limit {MAX_ITEMS}")

    def remap(items):
        return tuple(sorted(back[i] for i in items)) if all(i in back for i in items) else None

    want_sets = set()
    for fi in oracle_frequent(proj, cfg.min_support, cfg.max_itemset_size):
        items = remap(fi.items)
        if items is not None:
            want_sets.add((items, fi.count))
    got_sets = {(fi.items, fi.count) for fi in frequent}
    if want_sets != got_sets:
        return Check(name, FAIL, f"frequent itemsets differ ({len(got_sets ^ want_sets)} mismatches)")

    def key(r, x, y):
        return (x, y, r.count, r.antecedent_count, r.consequent_count, r.support, r.confidence, r.lift)

    want_rules = set()
    for r in oracle_rules(proj, cfg):
        x, y = remap(r.antecedent), remap(r.consequent)
        if x is not None and y is not None:
            want_rules.add(key(r, x, y))
    got_rules = {key(r, r.antecedent, r.consequent) for r in report.rules}
    if want_rules != got_rules:
        return Check(name, FAIL, f"rules differ ({len(got_rules ^ want_rules)} mismatches)")
    return Check(name, PASS, f"{len(got_sets)} itemsets, {len(got_rules)} rules over {len(back)} items")


def rule_file_check(path_label: str, actual: str, expected: str) -> Check:
    name = f"rule file {path_label} matches recomputation"
    if actual == expected:
        return Check(name, PASS)
    diff = difflib.unified_diff(
        expected.splitlines(), actual.splitlines(), "recomputed", path_label, lineterm="", n=0,
    )
    return Check(name, FAIL, "\n" + "\n".join(list(diff)[:40]))


def property_checks(
    db: TransactionDb,
    cfg: MiningConfig,
    frequent: Sequence[FrequentItemset],
    report: RuleReport,
    random_dbs: int = 200,
    seed: int = 0,
) -> list[Check]:
    checks = []
    if random_dbs:
        checks.append(random_equivalence(random_dbs, seed))
    checks.append(dataset_equivalence(db, cfg, frequent, report))
    closure = downward_closed(frequent)
    checks.append(Check("downward closure of mined itemsets", FAIL if closure else PASS, "; ".join(closure[:5])))
    metrics = metric_violations(report.rules, db.n, cfg.lift_mode)
    checks.append(Check("rule metric identities", FAIL if metrics else PASS, "; ".join(metrics[:5])))
    return checks


# ---------------------------------------------------------------- published claims


def _share_claim(name: str, expected: float, got: float | None, tol: float) -> Claim:
    if got is None:
        return Claim(name, f"{expected:.1%}", None, f"±{tol * 100:g}pp", FAIL, "not present in data")
    status = PASS if abs(got - expected) <= tol + 1e-12 else FAIL
    return Claim(name, f"{expected:.1%}", f"{got:.1%}", f"±{tol * 100:g}pp", status)


def _closest(label: str, candidates: Sequence[str]) -> str | None:
    if label in candidates:
        return label
    lowered = {c.lower(): c for c in candidates}
    hit = difflib.get_close_matches(label.lower(), list(lowered), n=1, cutoff=0.7)
    return lowered[hit[0]] if hit else None


def _find_rule(report: RuleReport, lhs: str, rhs: str) -> AssociationRule | None:
    for r in report.rules:
        if report.labels(r.antecedent) == [lhs] and report.labels(r.consequent) == [rhs]:
            return r
    return None


def check_claims(records: Sequence[GtdRecord], report: RuleReport) -> list[Claim]:
    """Compare a mining run and its records against every published figure."""
    claims = []
    if not records:
        return [Claim("records available", ">0", 0, "", FAIL, "no records after filtering")]

    yes, _ = boolean_ratio(records, "success")
    claims.append(_share_claim("share of successful attacks", PUBLISHED_SHARES["Successful"], yes, 0.005))
    suicide, _ = boolean_ratio(records, "suicide")
    claims.append(_share_claim("share of suicide attacks", PUBLISHED_SHARES["Suicide"], suicide, 0.005))

    years = yearly_counts(records)
    for y in ("2012", "2014", "2015", "2018"):
        row = years.get(y)
        claims.append(_share_claim(f"share of attacks in {y}", PUBLISHED_SHARES[y], float(row.share) if row else None, 0.005))
    peak = years.top.label if years.top else None
    claims.append(Claim("peak attack year", "2014", peak, "exact", PASS if peak == "2014" else FAIL))

    subtypes = target_counts(records, "subtype")
    top = subtypes.top
    claims.append(Claim("top target subtype", "Village/City/Town/Suburb", top.label if top else None, "exact",
                        PASS if top and top.label == "Village/City/Town/Suburb" else FAIL))
    labels = [r.label for r in subtypes.rows]
    for name in ("Village/City/Town/Suburb", "Unarmed Civilian/Unspecified",
                 "Government Personnel (excluding police, military)"):
        hit = _closest(name, labels)
        claims.append(_share_claim(f"share of target subtype {name}", PUBLISHED_SHARES[name],
                                   float(subtypes[hit].share) if hit else None, 0.01))

    states = state_counts(records)
    ranked = [r.label for r in states.rows]
    top_state = ranked[0] if ranked else None
    claims.append(Claim("state with most attacks", "Borno", top_state, "exact", PASS if top_state == "Borno" else FAIL))
    state_names = [s.removesuffix(" State") for s in ranked]
    seen = set()
    for state in HIGH_ATTACK_STATES:
        if state in seen:
            continue
        seen.add(state)
        claims.append(_state_claim(state, state_names, ranked[:10], "among 10 most attacked states",
                                   "listed twice among high-attack states" if HIGH_ATTACK_STATES.count(state) > 1 else ""))
    for state in LOW_ATTACK_STATES:
        claims.append(_state_claim(state, state_names, ranked[-10:], "among 10 least attacked states", "", low=True))

    count = len(report.rules)
    claims.append(Claim("number of strong rules", PUBLISHED_RULE_COUNT, count, "±15",
                        PASS if abs(count - PUBLISHED_RULE_COUNT) <= 15 else FAIL))

    r = _find_rule(report, "Private Citizens & Property", "Village/City/Town/Suburb")
    ok = r is not None and r.confidence >= 0.99 and abs(r.support - 0.258) <= 0.02
    claims.append(Claim(
        "rule Private Citizens & Property => Village/City/Town/Suburb",
        "confidence >= 0.99, support 0.258",
        None if r is None else f"confidence {r.confidence:.4f}, support {r.support:.4f}",
        "support ±0.02", PASS if ok else FAIL,
    ))

    bad_rows = audit_published_rules()
    for pub in PUBLISHED_RULES:
        name = f"rule table row {pub.row}: {pub.lhs} => {pub.rhs}"
        expected = f"support {pub.support:.4f}, confidence {pub.confidence:.4f}"
        r = _find_rule(report, pub.lhs, pub.rhs)
        got = None if r is None else f"support {r.support:.4f}, confidence {r.confidence:.4f}"
        if pub.row in bad_rows:
            claims.append(Claim(name, expected, got, "n/a", IRREPRODUCIBLE, bad_rows[pub.row]))
            continue
        ok = r is not None and abs(r.support - pub.support) <= 0.02 and abs(r.confidence - pub.confidence) <= 0.02
        claims.append(Claim(name, expected, got, "±0.02 each", PASS if ok else FAIL,
                            "" if r is not None else "rule not mined"))
    return claims


def _state_claim(state: str, names: list[str], window: list[str], where: str, note: str, low: bool = False) -> Claim:
    hit = _closest(state, names)
    if hit is None:
        # A state with no recorded attacks is trivially among the least attacked.
        status = PASS if low else FAIL
        return Claim(f"{state} {where}", "yes", "no attacks recorded", "rank", status,
                     (note + "; " if note else "") + "state not present in data")
    window_names = [s.removesuffix(" State") for s in window]
    if hit != state:
        note = (note + "; " if note else "") + f"matched {state!r} to {hit!r}"
    return Claim(f"{state} {where}", "yes", "yes" if hit in window_names else "no", "rank",
                 PASS if hit in window_names else FAIL, note)
