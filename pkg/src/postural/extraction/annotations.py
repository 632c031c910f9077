"""Import of externally produced entity annotations (``annotations-v1``).

Lets users bring spans from any entity tagger they trust instead of the
built-in rule extractor.  Every entry carries the description the spans
index into plus its sha256, so a mismatch against the live record store
is detectable downstream.
"""

from __future__ import annotations

import hashlib
import json

from ..errors import MalformedAnnotations, SpanOutOfBounds
from ..ingest.records import CVE_ID_RE
from .entities import EntityLabel, EntitySpan

ANNOTATIONS_SCHEMA = "annotations-v1"


def description_digest(description: str) -> str:
    return hashlib.sha256(description.encode("utf-8")).hexdigest()


def import_annotations(document: bytes) -> dict[str, list[EntitySpan]]:
    """Parse and validate an annotation file into per-CVE span lists."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedAnnotations(f"not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != ANNOTATIONS_SCHEMA:
        raise MalformedAnnotations(f"expected schema {ANNOTATIONS_SCHEMA!r}")

    result: dict[str, list[EntitySpan]] = {}
    for entry in doc.get("entries", []):
        cve_id = entry.get("cve_id", "")
        if not CVE_ID_RE.match(cve_id):
            raise MalformedAnnotations(f"bad CVE id {cve_id!r}")
        if cve_id in result:
            raise MalformedAnnotations(f"duplicate entry for {cve_id}")
        description = entry.get("description")
        if not isinstance(description, str) or not description.strip():
            raise MalformedAnnotations(f"{cve_id}: missing description")
        digest = entry.get("description_sha256")
        if digest and digest != description_digest(description):
            raise MalformedAnnotations(f"{cve_id}: description hash mismatch")

        spans: list[EntitySpan] = []
        for raw in entry.get("spans", []):
            try:
                label = EntityLabel[raw["label"]]
            except KeyError as exc:
                raise MalformedAnnotations(f"{cve_id}: unknown label {raw.get('label')!r}") from exc
            start, end = raw.get("start"), raw.get("end")
            if (not isinstance(start, int) or not isinstance(end, int)
                    or start < 0 or end <= start or end > len(description)):
                raise SpanOutOfBounds(
                    f"{cve_id}: span [{start}, {end}) outside description", cve_id=cve_id
                )
            span = EntitySpan(label, description[start:end], start, end)
            if any(span.overlaps(other) for other in spans):
                raise MalformedAnnotations(f"{cve_id}: overlapping spans")
            spans.append(span)
        result[cve_id] = sorted(spans, key=lambda s: (s.start, s.end))
    return result
