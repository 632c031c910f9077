"""Weakness-catalog lookups (CWE id -> weakness name).

The shipped catalog covers the weakness ids referenced by the layer rule
files plus common memory/crypto weaknesses; it is a data file users can
extend.  Names are stored without parenthetical aliases so they make
usable fallback port phrases.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=1)
def default_cwe_catalog() -> dict[int, str]:
    """Shipped id->name map, loaded once."""
    raw = resources.files("postural.data").joinpath("cwe_catalog.json").read_text("utf-8")
    doc = json.loads(raw)
    return {int(k): v for k, v in doc["weaknesses"].items()}


def cwe_name(cwe_id: int, catalog: dict[int, str] | None = None) -> str:
    """Name for a weakness id; unknown ids get a generic placeholder."""
    table = catalog if catalog is not None else default_cwe_catalog()
    return table.get(cwe_id, f"weakness {cwe_id}")
