"""Disk cache for character tables.

Entries are keyed by a content hash of the canonical generators, the class
order fingerprint and an algorithm version, so changes to the table
algorithm invalidate old entries. A deserialized table is rebuilt through
the CharacterTable constructor and therefore re-verifies all orthogonality
invariants before being used. Writes go through a temp file and an atomic
replace.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

from .chartab import Character, CharacterTable, character_table
from .cyclotomic import Cyclotomic
from .groups import PermGroup

ALGORITHM_VERSION = 1


def _class_fingerprint(G: PermGroup):
    return [
        [c.element_order, c.size, list(c.representative.images)]
        for c in G.conjugacy_classes()
    ]


def table_cache_key(G: PermGroup) -> str:
    material = {
        "version": ALGORITHM_VERSION,
        "degree": G.degree,
        "generators": [list(g.images) for g in G.generators],
        "classes": _class_fingerprint(G),
    }
    blob = json.dumps(material, separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _value_to_json(v: Cyclotomic):
    return [v.conductor] + [
        [e, c.numerator, c.denominator] for e, c in sorted(v.terms.items())
    ]


def _value_from_json(data) -> Cyclotomic:
    conductor = data[0]
    terms = {e: Fraction(num, den) for e, num, den in data[1:]}
    return Cyclotomic(conductor, terms)


def serialize_table(tab: CharacterTable) -> dict:
    return {
        "version": ALGORITHM_VERSION,
        "key": table_cache_key(tab.group),
        "classes": _class_fingerprint(tab.group),
        "characters": [
            [_value_to_json(v) for v in chi.values] for chi in tab.irreducibles
        ],
    }


def deserialize_table(G: PermGroup, data: dict) -> CharacterTable:
    if data.get("version") != ALGORITHM_VERSION:
        raise ValueError("stale cache version")
    if data.get("key") != table_cache_key(G):
        raise ValueError("cache key mismatch")
    if data.get("classes") != _class_fingerprint(G):
        raise ValueError("class order mismatch")
    chars = [
        Character(G, [_value_from_json(v) for v in row]) for row in data["characters"]
    ]
    return CharacterTable(G, chars)  # the constructor re-verifies everything


def load_or_compute_table(G: PermGroup, cache_dir, seed: int = 0):
    """Return (table, source) with source "warm" on a cache hit, else "cold"."""
    if cache_dir is None:
        return character_table(G, seed=seed), "cold"
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"chartab-{table_cache_key(G)}.json"
    if path.exists():
        try:
            tab = deserialize_table(G, json.loads(path.read_text()))
            G._memo["chartab"] = tab
            return tab, "warm"
        except (ValueError, KeyError, AssertionError, json.JSONDecodeError):
            pass  # stale or corrupt entry: fall through and recompute
    tab = character_table(G, seed=seed)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(serialize_table(tab), separators=(",", ":")))
    os.replace(tmp, path)
    return tab, "cold"
