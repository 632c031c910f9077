"""On-disk document container: magic, schema tag, checksum trailer.

Layout::

    PSTD <schema-tag>\\n
    <payload bytes>
    #sha256=<hex of payload>\\n

Readers reject anything with a bad magic or a checksum mismatch, so a
truncated or bit-rotted file surfaces as CorruptDocument instead of
garbage data.
"""

from __future__ import annotations

import hashlib

from ..errors import CorruptDocument

MAGIC = b"PSTD"
_TRAILER_PREFIX = b"#sha256="


def payload_digest(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def wrap(schema: str, payload: bytes) -> bytes:
    header = MAGIC + b" " + schema.encode("ascii") + b"\n"
    trailer = _TRAILER_PREFIX + payload_digest(payload).encode("ascii") + b"\n"
    return header + payload + trailer


def unwrap(raw: bytes, expected_schema: str | None = None) -> tuple[str, bytes]:
    """Validate a container and return (schema, payload)."""
    header, sep, rest = raw.partition(b"\n")
    if not sep or not header.startswith(MAGIC + b" "):
        raise CorruptDocument("missing container magic")
    schema = header[len(MAGIC) + 1:].decode("ascii", "replace")
    if expected_schema is not None and schema != expected_schema:
        raise CorruptDocument(f"expected schema {expected_schema!r}, found {schema!r}")

    body, sep, tail = rest.rpartition(_TRAILER_PREFIX)
    if not sep or not tail.endswith(b"\n"):
        raise CorruptDocument("missing checksum trailer")
    stated = tail.strip().decode("ascii", "replace")
    if payload_digest(body) != stated:
        raise CorruptDocument("checksum mismatch", schema=schema)
    return schema, body
