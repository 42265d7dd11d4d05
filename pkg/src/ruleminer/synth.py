"""Seeded synthetic data: a small GTD-schema incident file and random basket databases."""

from __future__ import annotations

import csv
import io
import random
from pathlib import Path

from .gtd import ATTACK_TYPES, TARGET_TYPES

FIXTURE_PATH = Path(__file__).with_name("data") / "gtd_fixture.csv"
FIXTURE_SEED = 2019

FIXTURE_COLUMNS = (
    "eventid", "iyear", "imonth", "iday", "extended", "country", "country_txt",
    "region", "region_txt", "provstate", "city", "multiple", "success", "suicide",
    "attacktype1", "attacktype1_txt", "targtype1", "targtype1_txt",
    "targsubtype1", "targsubtype1_txt",
)

_COUNTRIES = {"Nigeria": (147, 11, "Sub-Saharan Africa"), "Niger": (146, 11, "Sub-Saharan Africa"),
              "Cameroon": (36, 11, "Sub-Saharan Africa")}
_STATES = {
    "Nigeria": [(("Borno", "Maiduguri"), 50), (("Adamawa", "Mubi"), 30), (("Yobe", "Damaturu"), 20)],
    "Niger": [(("Diffa", "Diffa"), 1)],
    "Cameroon": [(("Far North", "Kolofata"), 1)],
}
_YEARS = [(2012, 25), (2014, 30), (2015, 20), (2018, 25)]
VILLAGE = "Village/City/Town/Suburb"


def _pick(rng: random.Random, weighted):
    values, weights = zip(*weighted)
    return rng.choices(values, weights)[0]


def _incident(rng: random.Random, country: str) -> dict:
    year = _pick(rng, _YEARS) if country == "Nigeria" else rng.choice([2013, 2016, 2017])
    state, city = _pick(rng, _STATES[country])
    suicide = rng.random() < 0.09
    attack = 5 if suicide or rng.random() < 0.35 else 6
    target = 14 if rng.random() < 0.7 else 3
    # Village subtype only ever occurs with private-citizen targets.
    subtype = (VILLAGE, 75) if target == 14 and rng.random() < 0.6 else ("", "")
    extended = rng.random() < (0.02 if suicide else 0.12)
    success = rng.random() < (0.97 if attack == 6 else 0.85)
    multiple = rng.random() < 0.3
    c_code, r_code, region = _COUNTRIES[country]
    return {
        "iyear": year, "imonth": 0, "iday": 0,
        "extended": int(extended), "country": c_code, "country_txt": country,
        "region": r_code, "region_txt": region, "provstate": state, "city": city,
        "multiple": int(multiple), "success": int(success), "suicide": int(suicide),
        "attacktype1": attack, "attacktype1_txt": ATTACK_TYPES[attack],
        "targtype1": target, "targtype1_txt": TARGET_TYPES[target],
        "targsubtype1": subtype[1], "targsubtype1_txt": subtype[0],
    }


def gtd_fixture_rows(seed: int = FIXTURE_SEED, nigeria: int = 480, other: int = 20) -> list[dict]:
    """Incident rows with GTD column names: ``nigeria`` Nigerian rows plus ``other`` neighbours.

    Nigerian rows use four years, three states, two attack types, two target
    types and one target subtype, so they itemize to at most 20 distinct
    items (months are left unknown).
    """
    rng = random.Random(seed)
    rows = [_incident(rng, "Nigeria") for _ in range(nigeria)]
    rows += [_incident(rng, rng.choice(["Niger", "Cameroon"])) for _ in range(other)]
    rng.shuffle(rows)
    rows.sort(key=lambda r: r["iyear"])
    per_year: dict[int, int] = {}
    for r in rows:
        per_year[r["iyear"]] = per_year.get(r["iyear"], 0) + 1
        r["eventid"] = f"{r['iyear']}0000{per_year[r['iyear']]:04d}"
    return rows


def gtd_fixture_csv(seed: int = FIXTURE_SEED, **kw) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, FIXTURE_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(gtd_fixture_rows(seed, **kw))
    return buf.getvalue()


def write_gtd_fixture(path: str | Path = FIXTURE_PATH, seed: int = FIXTURE_SEED) -> Path:
    path = Path(path)
    path.write_text(gtd_fixture_csv(seed), encoding="utf-8")
    return path


def random_baskets(
    n: int,
    n_items: int,
    seed: int = 0,
    p_range: tuple[float, float] = (0.02, 0.5),
) -> list[list[str]]:
    """``n`` nonempty random baskets over items ``i0..i{n_items-1}``.

    Each item has its own inclusion probability drawn from ``p_range``. A
    basket that comes out empty gets one uniformly chosen item.
    """
    rng = random.Random(seed)
    names = [f"i{j}" for j in range(n_items)]
    probs = [rng.uniform(*p_range) for _ in names]
    out = []
    for _ in range(n):
        row = [name for name, p in zip(names, probs) if rng.random() < p]
        out.append(row or [rng.choice(names)])
    return out
