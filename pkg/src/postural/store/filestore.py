"""File-backed graph store.

Layout under the store root::

    graphs/<graph_id>/v<N>.graph       attack-graph-v1 container
    graphs/<graph_id>/v<N>.analytics   analytics-v1 container (optional)
    graphs/<graph_id>/edits.log        edit-log-v1 container
    graphs/<graph_id>/meta.json        created timestamp + free-form refs
    graphs/<graph_id>/.lock            advisory writer lock

Writes are write-temp-then-rename with a read-back verification, so
readers never observe a partial document and an interrupted save leaves
the previous version intact.  Every version snapshot is kept; a missing
snapshot can be reconstructed by replaying the edit log over version 1
(resolved edits replay without the embedding model).
"""

from __future__ import annotations

import datetime as dt
import errno
import json
import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path

from ..errors import (
    ChecksumMismatch,
    CorruptDocument,
    NotFound,
    StorageFull,
    VersionNotFound,
)
from ..graph.edits import replay_edit
from ..graph.serialize import GRAPH_SCHEMA, canonical_json, graph_to_payload, payload_to_graph
from ..risk.analytics import ANALYTICS_SCHEMA
from .container import payload_digest, unwrap, wrap

EDIT_LOG_SCHEMA = "edit-log-v1"
_VERSION_FILE_RE = re.compile(r"v(\d+)\.graph$")

_registry_guard = threading.Lock()
_graph_locks: dict[str, threading.Lock] = {}


@dataclass(frozen=True)
class EditLogEntry:
    base_version: int  # version the edit was applied against
    edit: dict         # resolved, replayable form
    timestamp: str

    def to_dict(self) -> dict:
        return {"base_version": self.base_version, "edit": self.edit,
                "timestamp": self.timestamp}

    @classmethod
    def from_dict(cls, d: dict) -> "EditLogEntry":
        return cls(base_version=d["base_version"], edit=d["edit"],
                   timestamp=d["timestamp"])


@dataclass
class GraphDocument:
    graph_id: str
    version: int
    graph: dict                      # attack-graph-v1 payload
    analytics: dict | None = None    # analytics-v1 payload
    edit_log: tuple[EditLogEntry, ...] = ()
    checksum: str = ""

    def compute_checksum(self) -> str:
        return payload_digest(canonical_json(self.graph))

    def with_checksum(self) -> "GraphDocument":
        return replace(self, checksum=self.compute_checksum())

    @classmethod
    def create(cls, graph_payload: dict, analytics: dict | None = None,
               edit_log: tuple[EditLogEntry, ...] = ()) -> "GraphDocument":
        return cls(
            graph_id=graph_payload["graph_id"],
            version=graph_payload["version"],
            graph=graph_payload,
            analytics=analytics,
            edit_log=tuple(edit_log),
        ).with_checksum()


@dataclass
class GraphListing:
    graph_id: str
    latest_version: int | None
    created: str | None
    layer_tags: tuple[str, ...] = ()
    error: str | None = None


def _write_atomic(path: Path, data: bytes) -> None:
    """Write-temp, verify, then rename: a torn write never becomes visible."""
    tmp = path.with_suffix(path.suffix + ".tmp")
    try:
        tmp.write_bytes(data)
        if tmp.read_bytes() != data:
            raise ChecksumMismatch(f"verify-after-write failed for {path}")
        tmp.replace(path)
    except OSError as exc:
        tmp.unlink(missing_ok=True)
        if exc.errno == errno.ENOSPC:
            raise StorageFull(f"no space writing {path}") from exc
        raise
    except ChecksumMismatch:
        tmp.unlink(missing_ok=True)
        raise


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _graph_dir(self, graph_id: str, must_exist: bool = False) -> Path:
        path = self.root / "graphs" / graph_id
        if must_exist and not path.is_dir():
            raise NotFound(f"no graph {graph_id!r}")
        return path

    @contextmanager
    def lock(self, graph_id: str):
        """Single writer per graph id (in-process mutex + advisory flock)."""
        import fcntl

        with _registry_guard:
            mutex = _graph_locks.setdefault(graph_id, threading.Lock())
        directory = self._graph_dir(graph_id)
        directory.mkdir(parents=True, exist_ok=True)
        with mutex:
            with open(directory / ".lock", "w") as handle:
                fcntl.flock(handle, fcntl.LOCK_EX)
                try:
                    yield
                finally:
                    fcntl.flock(handle, fcntl.LOCK_UN)

    # --- writing -----------------------------------------------------------

    def save(self, doc: GraphDocument, meta: dict | None = None) -> None:
        """Persist one version snapshot plus the edit log, atomically."""
        if doc.checksum != doc.compute_checksum():
            raise ChecksumMismatch(
                f"stale checksum on {doc.graph_id} v{doc.version}; recompute before save"
            )
        directory = self._graph_dir(doc.graph_id)
        directory.mkdir(parents=True, exist_ok=True)

        graph_bytes = wrap(GRAPH_SCHEMA, canonical_json(doc.graph))
        graph_path = directory / f"v{doc.version}.graph"
        _write_atomic(graph_path, graph_bytes)
        readback = unwrap(graph_path.read_bytes(), GRAPH_SCHEMA)[1]
        if payload_digest(readback) != doc.checksum:
            raise ChecksumMismatch(f"committed bytes disagree with checksum for {graph_path}")

        if doc.analytics is not None:
            _write_atomic(
                directory / f"v{doc.version}.analytics",
                wrap(ANALYTICS_SCHEMA, canonical_json(doc.analytics)),
            )
        log_payload = {"entries": [entry.to_dict() for entry in doc.edit_log]}
        _write_atomic(directory / "edits.log",
                      wrap(EDIT_LOG_SCHEMA, canonical_json(log_payload)))

        meta_path = directory / "meta.json"
        if not meta_path.exists() or meta:
            existing = {}
            if meta_path.exists():
                existing = json.loads(meta_path.read_text("utf-8"))
            existing.setdefault(
                "created", dt.datetime.now(dt.timezone.utc).isoformat()
            )
            existing.update(meta or {})
            _write_atomic(meta_path, (json.dumps(existing, indent=2) + "\n").encode())

    # --- reading -----------------------------------------------------------

    def _latest_version(self, directory: Path) -> int:
        versions = [
            int(m.group(1))
            for p in directory.iterdir()
            if (m := _VERSION_FILE_RE.match(p.name))
        ]
        if not versions:
            raise NotFound(f"graph directory {directory.name!r} has no snapshots")
        return max(versions)

    def _read_payload(self, path: Path, schema: str) -> dict:
        try:
            return json.loads(unwrap(path.read_bytes(), schema)[1])
        except json.JSONDecodeError as exc:
            raise CorruptDocument(f"{path}: invalid JSON payload") from exc

    def _read_edit_log(self, directory: Path) -> tuple[EditLogEntry, ...]:
        path = directory / "edits.log"
        if not path.exists():
            return ()
        payload = self._read_payload(path, EDIT_LOG_SCHEMA)
        entries = tuple(EditLogEntry.from_dict(e) for e in payload.get("entries", ()))
        for i, entry in enumerate(entries, start=1):
            if entry.base_version != i:
                raise CorruptDocument(
                    f"{path}: edit log not contiguous at position {i}"
                )
        return entries

    def _replay(self, directory: Path, entries: tuple[EditLogEntry, ...],
                version: int) -> dict:
        base = self._read_payload(directory / "v1.graph", GRAPH_SCHEMA)
        graph = payload_to_graph(base)
        for entry in entries:
            if entry.base_version >= version:
                break
            graph = replay_edit(graph, entry.edit)
        if graph.version != version:
            raise VersionNotFound(
                f"cannot reconstruct version {version}; log reaches {graph.version}"
            )
        return graph_to_payload(graph)

    def load(self, graph_id: str, version: int | None = None) -> GraphDocument:
        directory = self._graph_dir(graph_id, must_exist=True)
        latest = self._latest_version(directory)
        if version is None:
            version = latest
        if version < 1 or version > latest:
            raise VersionNotFound(f"{graph_id} has no version {version}")

        entries = self._read_edit_log(directory)
        snapshot = directory / f"v{version}.graph"
        if snapshot.exists():
            graph_payload = self._read_payload(snapshot, GRAPH_SCHEMA)
        else:
            graph_payload = self._replay(directory, entries, version)

        analytics_path = directory / f"v{version}.analytics"
        analytics = (
            self._read_payload(analytics_path, ANALYTICS_SCHEMA)
            if analytics_path.exists() else None
        )
        return GraphDocument(
            graph_id=graph_id,
            version=version,
            graph=graph_payload,
            analytics=analytics,
            edit_log=tuple(e for e in entries if e.base_version < version),
        ).with_checksum()

    def replayed_latest(self, graph_id: str) -> dict:
        """Latest payload rebuilt purely from v1 + the edit log."""
        directory = self._graph_dir(graph_id, must_exist=True)
        entries = self._read_edit_log(directory)
        return self._replay(directory, entries, self._latest_version(directory))

    def meta(self, graph_id: str) -> dict:
        path = self._graph_dir(graph_id, must_exist=True) / "meta.json"
        if not path.exists():
            return {}
        return json.loads(path.read_text("utf-8"))

    def list_graphs(self) -> list[GraphListing]:
        """One row per graph directory; corrupt graphs are flagged rows."""
        base = self.root / "graphs"
        if not base.is_dir():
            return []
        rows = []
        for directory in sorted(p for p in base.iterdir() if p.is_dir()):
            graph_id = directory.name
            try:
                latest = self._latest_version(directory)
                payload = self.load(graph_id, latest).graph
                layers = sorted({
                    layer for node in payload["nodes"] for layer in node["layers"]
                })
                created = self.meta(graph_id).get("created")
                rows.append(GraphListing(
                    graph_id=graph_id, latest_version=latest,
                    created=created, layer_tags=tuple(layers),
                ))
            except Exception as exc:  # noqa: BLE001 - one bad graph must not hide others
                rows.append(GraphListing(
                    graph_id=graph_id, latest_version=None, created=None,
                    error=f"{type(exc).__name__}: {exc}",
                ))
        return rows
