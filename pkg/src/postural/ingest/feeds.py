"""Parsers for NVD vulnerability feed files.

Two on-disk shapes are supported: the legacy JSON 1.1 year feeds
(top-level ``CVE_Items``) and API 2.0 response dumps (top-level
``vulnerabilities``).  Gzip-compressed files are handled by suffix.
Entries whose description is a REJECT/RESERVED placeholder are dropped:
there is nothing to analyze in them.
"""

from __future__ import annotations

import datetime as dt
import enum
import gzip
import json
import logging
import re
from pathlib import Path

from ..errors import MalformedFeed, UnsupportedSchema
from .records import CveRecord

log = logging.getLogger(__name__)

_CWE_RE = re.compile(r"CWE-(\d+)")
# REJECT/RESERVED placeholders carry no analyzable text; DISPUTED entries do
# and are kept.
_PLACEHOLDER_RE = re.compile(r"^\s*\*\*\s*(REJECT|RESERVED)\s*\*\*", re.I)
# cpe_match keys that express version ranges rather than exact versions
_RANGE_KEYS = (
    "versionStartIncluding", "versionStartExcluding",
    "versionEndIncluding", "versionEndExcluding",
)


class FeedFormat(enum.Enum):
    NvdJson11 = "nvd-json-1.1"
    NvdApi20 = "nvd-api-2.0"


def _coerce_format(format_tag) -> FeedFormat:
    if isinstance(format_tag, FeedFormat):
        return format_tag
    try:
        return FeedFormat[str(format_tag)]
    except KeyError:
        pass
    for fmt in FeedFormat:
        if fmt.value == format_tag:
            return fmt
    raise UnsupportedSchema(f"unknown feed format {format_tag!r}")


def _load_json(feed_document: bytes) -> dict:
    try:
        doc = json.loads(feed_document)
    except json.JSONDecodeError as exc:
        raise MalformedFeed(f"feed is not valid JSON: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(doc, dict):
        raise MalformedFeed("feed top level must be a JSON object")
    return doc


def _parse_cpe_uri(uri: str, extra: dict) -> tuple[str, str, str] | None:
    # cpe:2.3:part:vendor:product:version:update:...
    parts = uri.split(":")
    if len(parts) < 6 or parts[0] != "cpe":
        return None
    vendor, product, version = parts[3], parts[4], parts[5]
    if any(key in extra for key in _RANGE_KEYS):
        log.warning("cpe %s uses a version range; treating as wildcard", uri)
        version = "*"
    if version in ("*", "-", ""):
        version = "*"
    return (vendor, product, version)


def _date(value: str | None) -> dt.date | None:
    if not value:
        return None
    return dt.date.fromisoformat(value[:10])


def _entry_from_v11(item: dict) -> CveRecord | None:
    cve = item.get("cve", {})
    cve_id = cve.get("CVE_data_meta", {}).get("ID", "")
    description = ""
    for d in cve.get("description", {}).get("description_data", []):
        if d.get("lang") == "en":
            description = d.get("value", "")
            break
    if _PLACEHOLDER_RE.match(description):
        return None

    cwe_ids = []
    for ptype in cve.get("problemtype", {}).get("problemtype_data", []):
        for desc in ptype.get("description", []):
            m = _CWE_RE.search(desc.get("value", ""))
            if m:
                cwe_ids.append(int(m.group(1)))

    base = exploitability = impact = None
    metrics = item.get("impact", {}).get("baseMetricV3")
    if metrics:
        base = metrics.get("cvssV3", {}).get("baseScore")
        exploitability = metrics.get("exploitabilityScore")
        impact = metrics.get("impactScore")

    products = []

    def walk(node: dict):
        for match in node.get("cpe_match", []):
            triple = _parse_cpe_uri(match.get("cpe23Uri", ""), match)
            if triple:
                products.append(triple)
        for child in node.get("children", []):
            walk(child)

    for node in item.get("configurations", {}).get("nodes", []):
        walk(node)

    return CveRecord(
        id=cve_id,
        description=description,
        cwe_ids=tuple(dict.fromkeys(cwe_ids)),
        base_score=base,
        exploitability_score=exploitability,
        impact_score=impact,
        products=tuple(dict.fromkeys(products)),
        published=_date(item.get("publishedDate")),
    )


def _entry_from_v20(item: dict) -> CveRecord | None:
    cve = item.get("cve", {})
    description = ""
    for d in cve.get("descriptions", []):
        if d.get("lang") == "en":
            description = d.get("value", "")
            break
    if _PLACEHOLDER_RE.match(description) or cve.get("vulnStatus") == "Rejected":
        return None

    cwe_ids = []
    for weakness in cve.get("weaknesses", []):
        for desc in weakness.get("description", []):
            m = _CWE_RE.search(desc.get("value", ""))
            if m:
                cwe_ids.append(int(m.group(1)))

    base = exploitability = impact = None
    metrics = cve.get("metrics", {})
    for key in ("cvssMetricV31", "cvssMetricV30"):
        if metrics.get(key):
            m = metrics[key][0]
            base = m.get("cvssData", {}).get("baseScore")
            exploitability = m.get("exploitabilityScore")
            impact = m.get("impactScore")
            break

    products = []
    for conf in cve.get("configurations", []):
        for node in conf.get("nodes", []):
            for match in node.get("cpeMatch", []):
                triple = _parse_cpe_uri(match.get("criteria", ""), match)
                if triple:
                    products.append(triple)

    return CveRecord(
        id=cve.get("id", ""),
        description=description,
        cwe_ids=tuple(dict.fromkeys(cwe_ids)),
        base_score=base,
        exploitability_score=exploitability,
        impact_score=impact,
        products=tuple(dict.fromkeys(products)),
        published=_date(cve.get("published")),
    )


def parse_feed(feed_document: bytes, format_tag, stats: dict | None = None) -> list[CveRecord]:
    """Parse one feed document into normalized records.

    Placeholder (REJECT/RESERVED) entries are dropped.  Record order
    follows the feed; identical bytes always give identical results.
    When given, ``stats`` is filled with entry/dropped counts.
    """
    fmt = _coerce_format(format_tag)
    doc = _load_json(feed_document)
    if fmt is FeedFormat.NvdJson11:
        items = doc.get("CVE_Items")
        builder = _entry_from_v11
    else:
        items = doc.get("vulnerabilities")
        builder = _entry_from_v20
    if items is None:
        raise MalformedFeed(f"feed lacks the entry list expected for {fmt.value}")

    records = []
    for index, item in enumerate(items):
        try:
            record = builder(item)
        except (ValueError, TypeError, AttributeError) as exc:
            raise MalformedFeed(f"entry {index}: {exc}") from exc
        if record is not None:
            records.append(record)
    if stats is not None:
        stats["entries"] = len(items)
        stats["dropped"] = len(items) - len(records)
    return records


def detect_format(feed_document: bytes) -> FeedFormat:
    doc = _load_json(feed_document)
    if "CVE_Items" in doc:
        return FeedFormat.NvdJson11
    if "vulnerabilities" in doc:
        return FeedFormat.NvdApi20
    raise UnsupportedSchema("feed matches no known format")


def read_feed_file(path: str | Path, stats: dict | None = None) -> list[CveRecord]:
    """Read a feed file from disk; ``.gz`` suffix selects decompression."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".gz":
        raw = gzip.decompress(raw)
    return parse_feed(raw, detect_format(raw), stats=stats)
