"""Normalized vulnerability records and the inventory model."""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass, field

from ..errors import MalformedTopology

CVE_ID_RE = re.compile(r"CVE-\d{4}-\d{4,}$")


def _check_score(name: str, value: float | None) -> float | None:
    if value is None:
        return None
    value = float(value)
    if not 0.0 <= value <= 10.0:
        raise ValueError(f"{name} {value} outside [0, 10]")
    return value


@dataclass(frozen=True)
class CveRecord:
    """One disclosure: description text, CVSS scores, CWE links, products.

    Absent CVSS scores stay ``None``; defaulting happens at scoring time,
    never here.
    """

    id: str
    description: str
    cwe_ids: tuple[int, ...] = ()
    base_score: float | None = None
    exploitability_score: float | None = None
    impact_score: float | None = None
    products: tuple[tuple[str, str, str], ...] = ()
    published: dt.date | None = None

    def __post_init__(self):
        if not CVE_ID_RE.match(self.id):
            raise ValueError(f"bad CVE id: {self.id!r}")
        if not self.description.strip():
            raise ValueError(f"{self.id}: empty description")
        for name in ("base_score", "exploitability_score", "impact_score"):
            object.__setattr__(self, name, _check_score(name, getattr(self, name)))
        object.__setattr__(self, "cwe_ids", tuple(int(c) for c in self.cwe_ids))
        object.__setattr__(
            self, "products", tuple((v, p, ver) for v, p, ver in self.products)
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "cwe_ids": list(self.cwe_ids),
            "base_score": self.base_score,
            "exploitability_score": self.exploitability_score,
            "impact_score": self.impact_score,
            "products": [list(p) for p in self.products],
            "published": self.published.isoformat() if self.published else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CveRecord":
        return cls(
            id=d["id"],
            description=d["description"],
            cwe_ids=tuple(d.get("cwe_ids", ())),
            base_score=d.get("base_score"),
            exploitability_score=d.get("exploitability_score"),
            impact_score=d.get("impact_score"),
            products=tuple(tuple(p) for p in d.get("products", ())),
            published=dt.date.fromisoformat(d["published"]) if d.get("published") else None,
        )


@dataclass(frozen=True)
class InventoryItem:
    device_id: str
    vendor: str
    product: str
    version: str
    criticality: float = 1.0
    role_tags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.criticality <= 0:
            raise MalformedTopology(
                f"device {self.device_id!r}: criticality must be > 0",
                device_id=self.device_id,
            )
        object.__setattr__(self, "role_tags", tuple(self.role_tags))


@dataclass(frozen=True)
class Topology:
    items: tuple[InventoryItem, ...]
    links: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "links", tuple(tuple(l) for l in self.links))
        ids = [item.device_id for item in self.items]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise MalformedTopology(f"duplicate device ids: {dupes}", duplicates=dupes)

    def device(self, device_id: str) -> InventoryItem:
        for item in self.items:
            if item.device_id == device_id:
                return item
        raise KeyError(device_id)
