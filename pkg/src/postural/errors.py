"""Exception types shared across the engine.

Every error carries a stable ``code`` string so the CLI and the HTTP
service can map failures to exit codes and problem documents without
string-matching messages.
"""

from __future__ import annotations


class PosturalError(Exception):
    """Base class; ``code`` is stable across releases."""

    code = "internal"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


# --- ingest ---------------------------------------------------------------

class MalformedFeed(PosturalError):
    code = "malformed_feed"

    def __init__(self, message: str, offset: int | None = None, **details):
        super().__init__(message, **details)
        self.offset = offset


class UnsupportedSchema(PosturalError):
    code = "unsupported_schema"


class MalformedTopology(PosturalError):
    code = "malformed_topology"


class DanglingLink(PosturalError):
    code = "dangling_link"


# --- extraction -----------------------------------------------------------

class MalformedAnnotations(PosturalError):
    code = "malformed_annotations"


class SpanOutOfBounds(PosturalError):
    code = "span_out_of_bounds"

    def __init__(self, message: str, cve_id: str, **details):
        super().__init__(message, cve_id=cve_id, **details)
        self.cve_id = cve_id


# --- semantics ------------------------------------------------------------

class CorpusTooSmall(PosturalError):
    code = "corpus_too_small"


class DimensionMismatch(PosturalError):
    code = "dimension_mismatch"


# --- graph ----------------------------------------------------------------

class EmptyInput(PosturalError):
    code = "empty_input"


class UnknownNode(PosturalError):
    code = "unknown_node"


class DuplicateNode(PosturalError):
    code = "duplicate_node"


class IllegalEdge(PosturalError):
    code = "illegal_edge"


class WouldOrphanAttacker(PosturalError):
    code = "would_orphan_attacker"


class ModelRequired(PosturalError):
    """AddCveNode derives similarity edges and needs the embedding model."""

    code = "model_required"


# --- risk -----------------------------------------------------------------

class CyclicGraph(PosturalError):
    code = "cyclic_graph"


class EmptyGraph(PosturalError):
    code = "empty_graph"


class NoPath(PosturalError):
    code = "no_path"


# --- store ----------------------------------------------------------------

class NotFound(PosturalError):
    code = "not_found"


class VersionNotFound(PosturalError):
    code = "version_not_found"


class CorruptDocument(PosturalError):
    code = "corrupt_document"


class ChecksumMismatch(PosturalError):
    code = "checksum_mismatch"


class StorageFull(PosturalError):
    code = "storage_full"


class VersionConflict(PosturalError):
    """Optimistic-concurrency failure on edit application."""

    code = "version_conflict"
