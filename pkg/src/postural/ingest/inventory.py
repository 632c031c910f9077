"""Topology file handling and CVE-to-inventory matching."""

from __future__ import annotations

import json

from ..errors import DanglingLink, MalformedTopology
from .records import CveRecord, InventoryItem, Topology

TOPOLOGY_SCHEMA = "topology-v1"


def load_topology(document: bytes) -> Topology:
    """Parse a ``topology-v1`` document, enforcing invariants."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedTopology(f"topology is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != TOPOLOGY_SCHEMA:
        raise MalformedTopology(f"expected schema {TOPOLOGY_SCHEMA!r}")

    items = []
    for raw in doc.get("devices", []):
        try:
            items.append(
                InventoryItem(
                    device_id=raw["device_id"],
                    vendor=raw.get("vendor", ""),
                    product=raw["product"],
                    version=raw.get("version", "*"),
                    criticality=float(raw.get("criticality", 1.0)),
                    role_tags=tuple(raw.get("role_tags", ())),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTopology(f"bad device entry: {exc}") from exc

    topo = Topology(items=tuple(items), links=tuple())
    known = {item.device_id for item in topo.items}
    links = []
    for raw in doc.get("links", []):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise MalformedTopology(f"bad link entry: {raw!r}")
        a, b = raw
        for end in (a, b):
            if end not in known:
                raise DanglingLink(f"link references unknown device {end!r}", device_id=end)
        links.append((a, b))
    return Topology(items=topo.items, links=tuple(links))


def dump_topology(topo: Topology) -> bytes:
    doc = {
        "schema": TOPOLOGY_SCHEMA,
        "devices": [
            {
                "device_id": item.device_id,
                "vendor": item.vendor,
                "product": item.product,
                "version": item.version,
                "criticality": item.criticality,
                "role_tags": list(item.role_tags),
            }
            for item in topo.items
        ],
        "links": [list(link) for link in topo.links],
    }
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _version_matches(record_version: str, device_version: str) -> bool:
    return record_version == "*" or record_version == device_version


def match_inventory(records: list[CveRecord], topo: Topology) -> dict[str, list[str]]:
    """Match disclosures against the inventory.

    A CVE matches a device when product names are equal case-insensitively
    and the versions are equal (or the CVE side is a wildcard).  Vendor
    names never block a match.  Output lists are sorted and duplicate-free
    regardless of input order.
    """
    matches: dict[str, set[str]] = {item.device_id: set() for item in topo.items}
    for record in records:
        for _, product, version in record.products:
            for item in topo.items:
                if product.lower() != item.product.lower():
                    continue
                if _version_matches(version, item.version):
                    matches[item.device_id].add(record.id)
    return {device: sorted(ids) for device, ids in matches.items()}
