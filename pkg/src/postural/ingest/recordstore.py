"""Local record store (``records-v1``): normalized CVEs between CLI runs."""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import CorruptDocument
from ..store.container import unwrap, wrap
from .records import CveRecord

RECORDS_SCHEMA = "records-v1"


def save_records(records: list[CveRecord], path: str | Path) -> None:
    payload = {
        "schema": RECORDS_SCHEMA,
        "records": [r.to_dict() for r in sorted(records, key=lambda r: r.id)],
    }
    raw = (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")
    Path(path).write_bytes(wrap(RECORDS_SCHEMA, raw))


def load_records(path: str | Path) -> list[CveRecord]:
    _, payload = unwrap(Path(path).read_bytes(), RECORDS_SCHEMA)
    try:
        doc = json.loads(payload)
        return [CveRecord.from_dict(d) for d in doc["records"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptDocument(f"{path}: bad record store: {exc}") from exc
