"""Published figures from the Nigeria 1970-2019 GTD study, and a self-consistency audit of its rule table.

The rule table is transcribed as printed (line-wrapped labels rejoined).
Several of its rows contradict each other or the published marginal
shares; :func:`audit_published_rules` finds those rows so the claim checker
can report them as irreproducible instead of failing on them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .gtd import ATTACK_TYPES, BOOLEAN_LABELS, TARGET_TYPES


@dataclass(frozen=True)
class PublishedRule:
    row: int
    lhs: str
    rhs: str
    support: float
    confidence: float
    lift: float


_V = "Village/City/Town/Suburb"
_PC = "Private Citizens & Property"
_HT = "Hostage Taking (Kidnapping)"

PUBLISHED_RULES = tuple(PublishedRule(*r) for r in [
    (1, "2012", "Not Extended", 0.11715976331360947, 0.9658536585365854, 1.1114112684476825),
    (2, "2012", "Not Suicide", 0.11420118343195267, 0.9414634146341464, 1.0369801243091727),
    (3, "2014", "Not Extended", 0.12347140039447732, 0.8779803646563815, 1.0102951540644245),
    (4, "2014", "Not Suicide", 0.13274161735700196, 0.943899018232819, 1.0396628334652167),
    (5, "2014", "Successful", 0.13175542406311638, 0.9368863955119215, 1.022828170810819),
    (6, "2015", "Not Extended", 0.1136094674556213, 0.8985959438377535, 1.0340175749562892),
    (7, "2018", "Successful", 0.11775147928994083, 0.9212962962962964, 1.0058079720547421),
    (8, "Not Extended", "Armed Assault", 0.4287968441814596, 0.9362618432385875, 1.0773598604674623),
    (9, "Not Suicide", "Armed Assault", 0.45779092702169627, 0.9995693367786392, 1.10098121604773),
    (10, "Successful", "Armed Assault", 0.4416173570019724, 0.9642549526270457, 1.0527072803228084),
    (11, "Not Extended", "Bombing/Explosion", 0.2493096646942801, 0.9976322020520916, 1.1479789524294381),
    (12, "Extended", "Not Suicide", 0.13037475345167654, 0.9954819277108435, 1.0964791165531125),
    (13, "Extended", "Successful", 0.13076923076923078, 0.9984939759036146, 1.0900870925562718),
    (14, _HT, "Not Suicide", 0.12248520710059171, 0.9951923076923076, 1.0961601129698022),
    (15, "Successful", _HT, 0.11972386587771203, 0.9727564102564101, 1.0619885874246338),
    (16, "Multiple", "Not Extended", 0.31005917159763313, 0.9107763615295481, 1.0480336252734475),
    (17, "Not Suicide", "Not Multiple", 0.6051282051282051, 0.9174641148325359, 1.0105459618077248),
    (18, "Successful", "Not Multiple", 0.5879684418145956, 0.8914473684210527, 0.9732209642322862),
    (19, _PC, _V, 0.2579881656804734, 1.0, 2.1133805752396833),
    (20, "2012", "Successful", 0.10552268244575937, 0.8699186991869919, 1.1078844021296281),
    (21, "Successful", "2015", 0.10236686390532544, 0.8096723868954758, 1.0311577497010957),
    (22, "2018", "Not Suicide", 0.10808678500986194, 0.8456790123456791, 1.0095579450418162),
    (23, "Borno", "Not Suicide", 0.1601577909270217, 0.9987699876998771, 1.1001007685505926),
    (24, "Not Extended", "Multiple", 0.16351084812623273, 0.9089912280701754, 1.0459794658002246),
    (25, "Successful", "Multiple", 0.17692307692307693, 0.9835526315789475, 1.0737751597987217),
    (26, "Not Multiple", "Not Extended", 0.26528599605522685, 0.9539007092198584, 1.0976569668054204),
    (27, "Not Extended", "Not Suicide", 0.42859960552268245, 0.9358311800172265, 1.2036184887588377),
    (28, _PC, "Not Extended", 0.2562130177514793, 0.9258731290092659, 1.0654055297496545),
    (29, "Successful", "Not Extended", 0.4124260355029586, 0.9005167958656332, 1.1468525885553278),
    (30, _V, "Not Extended", 0.16587771203155818, 0.90625, 1.0428251248297777),
    (31, "Not Multiple", "Not Suicide", 0.2781065088757396, 1.0, 1.1014555724527482),
    (32, "Not Multiple", "Successful", 0.26469428007889545, 0.9517730496453901, 1.0390803965766857),
    (33, _PC, "Not Suicide", 0.2767258382642998, 1.0, 1.1014555724527482),
    (34, "Successful", "Not Suicide", 0.4414201183431953, 0.9638242894056849, 1.1505978684452136),
    (35, _V, "Not Suicide", 0.18303747534516765, 1.0, 1.1014555724527482),
    (36, "Successful", _V, 0.17810650887573964, 0.9730603448275862, 1.0623204022988506),
    (37, "Borno", "Not Extended", 0.11617357001972387, 0.9966159052453469, 1.1468094960494575),
    (38, "Not Multiple", "Not Extended", 0.15976331360946747, 0.9963099630996312, 1.1464574473252678),
    (39, "Not Extended", "Not Suicide", 0.15897435897435896, 0.9962917181705809, 1.146436452819983),
    (40, "Borno", "Multiple", 0.11577909270216963, 0.9100775193798449, 1.0472294651057226),
    (41, "Borno", _PC, 0.16962524654832348, 0.9502762430939227, 1.0374462860650706),
    (42, "Successful", _HT, 0.10019723865877712, 0.8141025641025641, 1.3846024823884604),
    (43, _PC, "Multiple", 0.1940828402366864, 0.9283018867924528, 1.0224832861259474),
    (44, _V, "Multiple", 0.14911242603550295, 0.9921259842519684, 1.0927826939294982),
    (45, _V, "Successful", 0.14694280078895464, 0.9776902887139107, 1.0673750568000706),
    (46, "Borno", "Not Multiple", 0.10493096646942801, 1.0, 1.1014555724527482),
    (47, "Borno", "Successful", 0.15325443786982249, 0.955719557195572, 1.1409225700451024),
    (48, "Armed Assault", _PC, 0.11183431952662722, 1.0, 2.2684563758389262),
    (49, "Not Extended", "Armed Assault", 0.13076923076923078, 0.9567099567099567, 1.2304717099237648),
])

PUBLISHED_RULE_COUNT = 214

#: Marginal shares stated in the descriptive results.
PUBLISHED_SHARES = {
    "Successful": 0.916,
    "Not Suicide": 0.908,
    "Suicide": 0.092,
    "2012": 0.121,
    "2014": 0.141,
    "2015": 0.126,
    "2018": 0.128,
    _V: 0.266,
    "Unarmed Civilian/Unspecified": 0.076,
    "Government Personnel (excluding police, military)": 0.043,
}

HIGH_ATTACK_STATES = ("Borno", "Adamawa", "Yobe", "Benue", "Plateau", "Rivers", "Kaduna", "Plateau", "Kano")
LOW_ATTACK_STATES = ("Kwara", "Sokoto", "Eboni", "Kebbi", "Jigawa")

# GTD's own attack-type labels, which the rule table uses alongside the codebook ones.
_GTD_ATTACK_TEXT = (
    "Armed Assault", "Bombing/Explosion", "Hostage Taking (Kidnapping)",
    "Hostage Taking (Barricade Incident)", "Facility/Infrastructure Attack",
)


def label_field(label: str) -> str | None:
    """Best-effort GTD field for a label in the published vocabulary."""
    if label.isdigit():
        return "iyear"
    for name, pair in BOOLEAN_LABELS.items():
        if label in pair:
            return name
    if label in ATTACK_TYPES.values() or label in _GTD_ATTACK_TEXT:
        return "attacktype1"
    if label in TARGET_TYPES.values():
        return "targtype1"
    if label == _V:
        return "targsubtype1_txt"
    return "provstate"


def audit_published_rules(tol: float = 0.02) -> dict[int, str]:
    """Rows of the published rule table that no single database can reproduce, with reasons.

    Three independent tests:

    * the same rule printed twice with different metrics;
    * one antecedent with mutually exclusive consequents (two values of the
      same field) whose confidences sum above 1;
    * a consequent support implied by ``confidence / lift`` that is more
      than ``tol`` away from the published marginal share of that label.
    """
    reasons: dict[int, list[str]] = defaultdict(list)

    by_rule = defaultdict(list)
    for r in PUBLISHED_RULES:
        by_rule[(r.lhs, r.rhs)].append(r)
    for (lhs, rhs), rows in by_rule.items():
        if len(rows) > 1 and len({(r.support, r.confidence, r.lift) for r in rows}) > 1:
            nums = ", ".join(str(r.row) for r in rows)
            for r in rows:
                reasons[r.row].append(f"rule {lhs} => {rhs} printed in rows {nums} with different metrics")

    by_lhs = defaultdict(list)
    for r in PUBLISHED_RULES:
        by_lhs[r.lhs].append(r)
    for lhs, rows in by_lhs.items():
        for i, a in enumerate(rows):
            for b in rows[i + 1:]:
                if a.rhs != b.rhs and label_field(a.rhs) == label_field(b.rhs) and a.confidence + b.confidence > 1 + 1e-9:
                    msg = (f"{lhs} => {a.rhs} (row {a.row}) and {lhs} => {b.rhs} (row {b.row}) "
                           f"have exclusive consequents with confidences summing to {a.confidence + b.confidence:.3f}")
                    reasons[a.row].append(msg)
                    reasons[b.row].append(msg)

    for r in PUBLISHED_RULES:
        share = PUBLISHED_SHARES.get(r.rhs)
        if share is None or r.lift == 0:
            continue
        implied = r.confidence / r.lift
        if abs(implied - share) > tol:
            reasons[r.row].append(
                f"confidence/lift implies support({r.rhs}) = {implied:.3f}, published share is {share:.3f}"
            )
    return {row: "; ".join(msgs) for row, msgs in sorted(reasons.items())}
