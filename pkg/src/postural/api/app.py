"""HTTP service over the pipeline, store, and what-if edits.

Everything speaks JSON against the versioned document schemas; errors
come back as problem documents {code, message, details}.  PATCH uses
optimistic concurrency: the client sends the version it edited against
in If-Match and gets 409 when someone else moved the graph forward.
"""

from __future__ import annotations

import datetime as dt
from pathlib import Path

from fastapi import FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .. import __version__
from ..errors import (
    DuplicateNode,
    EmptyGraph,
    EmptyInput,
    IllegalEdge,
    MalformedFeed,
    MalformedTopology,
    DanglingLink,
    ModelRequired,
    NoPath,
    NotFound,
    PosturalError,
    UnknownNode,
    UnsupportedSchema,
    VersionConflict,
    VersionNotFound,
    WouldOrphanAttacker,
)
from ..graph.edits import AddCveNode, apply_edit_resolved, parse_edit
from ..graph.partition import partition
from ..graph.serialize import graph_to_payload, payload_to_graph
from ..ingest.feeds import read_feed_file
from ..ingest.inventory import load_topology
from ..ingest.recordstore import load_records
from ..pipeline import parse_layer, run_analysis
from ..risk.analytics import analytics_to_payload, analyze
from ..risk.paths import SORT_KEYS, enumerate_paths
from ..risk.scores import Constants, ScoreFunctions
from ..semantics.modelio import load_model
from ..store.filestore import EditLogEntry, GraphDocument, Store

_STATUS_FOR = {
    NotFound: 404,
    VersionNotFound: 404,
    MalformedFeed: 400,
    MalformedTopology: 400,
    DanglingLink: 400,
    UnsupportedSchema: 400,
    EmptyInput: 422,
    EmptyGraph: 422,
    NoPath: 422,
    UnknownNode: 422,
    DuplicateNode: 422,
    IllegalEdge: 422,
    WouldOrphanAttacker: 422,
    ModelRequired: 422,
    VersionConflict: 409,
}


def _problem(status: int, code: str, message: str, details: dict | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "details": details or {}},
    )


class AnalysisRequest(BaseModel):
    topology_path: str
    feed_paths: list[str] = Field(default_factory=list)
    records_path: str | None = None
    model_path: str
    threshold: float = 0.8
    constants: dict = Field(default_factory=dict)
    layers: list[str] | None = None
    graph_id: str | None = None


def _layer_summary(result) -> dict | None:
    if result.analytics is None:
        return {"skipped": result.skipped_reason, "total_nodes": len(result.graph.nodes)}
    a = result.analytics
    return {
        "exploit_score": a.exploit_score,
        "impact_score": a.impact_score,
        "risk_score": a.risk_score,
        "total_nodes": a.total_nodes,
        "path_count": a.path_count,
        "shortest_path_count": a.shortest_path_count,
        "vertex_cover_size": a.vertex_cover_size,
    }


def create_app(store_root: str | Path) -> FastAPI:
    app = FastAPI(title="postural", version=__version__)
    # single-user tool; the dashboard is served from another local port
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = Store(store_root)

    @app.exception_handler(PosturalError)
    async def postural_error(request: Request, exc: PosturalError):
        status = _STATUS_FOR.get(type(exc), 500)
        return _problem(status, exc.code, str(exc), exc.details)

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return _problem(400, "malformed_request", "request body failed validation",
                        {"errors": exc.errors()})

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        return _problem(400, "malformed_request", str(exc))

    @app.get("/v1/health")
    async def health():
        if not store.root.is_dir():
            return _problem(503, "store_unavailable", f"store root {store.root} missing")
        return {"name": "postural", "version": __version__, "store": str(store.root)}

    @app.post("/v1/analyses")
    async def create_analysis(request: AnalysisRequest):
        if not 0.0 <= request.threshold <= 1.0:
            return _problem(400, "malformed_request",
                            f"threshold {request.threshold} outside [0, 1]")
        paths = [request.topology_path, request.model_path, *request.feed_paths]
        if request.records_path:
            paths.append(request.records_path)
        for p in paths:
            if not Path(p).exists():
                raise NotFound(f"input file {p} does not exist")

        records = []
        if request.records_path:
            records.extend(load_records(request.records_path))
        for feed in request.feed_paths:
            records.extend(read_feed_file(feed))

        topology = load_topology(Path(request.topology_path).read_bytes())
        model = load_model(request.model_path)
        consts = Constants(**{**Constants().to_dict(), **request.constants})
        layers = [parse_layer(l) for l in request.layers] if request.layers else None

        result = run_analysis(
            records, topology, model, request.threshold, consts,
            layers=layers, graph_id=request.graph_id,
        )
        doc = GraphDocument.create(
            graph_to_payload(result.graph),
            analytics=analytics_to_payload(result.analytics),
        )
        with store.lock(doc.graph_id):
            store.save(doc, meta={
                "model_ref": str(request.model_path),
                "constants": consts.to_dict(),
                "criticality": result.criticality,
            })
        return {
            "graph_id": doc.graph_id,
            "version": doc.version,
            "analytics": doc.analytics,
            "layers": {
                layer.value: _layer_summary(res)
                for layer, res in result.layers.items()
            },
        }

    @app.get("/v1/graphs/{graph_id}")
    async def get_graph(graph_id: str, layer: str | None = Query(default=None),
                        version: int | None = Query(default=None)):
        doc = store.load(graph_id, version)
        payload = doc.graph
        if layer is not None:
            graph = payload_to_graph(payload)
            payload = graph_to_payload(partition(graph, parse_layer(layer)))
        return payload

    @app.get("/v1/graphs/{graph_id}/analytics")
    async def get_analytics(graph_id: str, version: int | None = Query(default=None)):
        doc = store.load(graph_id, version)
        if doc.analytics is None:
            raise NotFound(f"graph {graph_id} v{doc.version} has no stored analytics")
        return doc.analytics

    @app.get("/v1/graphs/{graph_id}/paths")
    async def get_paths(graph_id: str, sort: str = Query(default="risk"),
                        limit: int = Query(default=10)):
        if sort not in SORT_KEYS:
            return _problem(400, "malformed_request",
                            f"sort must be one of {', '.join(SORT_KEYS)}")
        if limit < 0:
            return _problem(400, "malformed_request", "limit must be >= 0")
        doc = store.load(graph_id)
        graph = payload_to_graph(doc.graph)
        meta = store.meta(graph_id)
        consts = Constants.from_dict(meta["constants"]) if meta.get("constants") else Constants()
        fns = ScoreFunctions.default(meta.get("criticality"))
        keys = (sort, *[k for k in SORT_KEYS if k != sort])
        paths = enumerate_paths(graph, consts.path_cutoff, fns=fns, consts=consts,
                                sort_keys=keys)
        return {
            "graph_id": graph_id,
            "version": doc.version,
            "sort": list(keys),
            "paths": [p.to_dict() for p in paths[:limit]],
        }

    @app.patch("/v1/graphs/{graph_id}")
    async def patch_graph(graph_id: str, edits: list[dict],
                          if_match: str | None = Header(default=None)):
        if if_match is None:
            return _problem(400, "malformed_request", "If-Match header is required")
        try:
            expected_version = int(if_match.strip('"'))
        except ValueError:
            return _problem(400, "malformed_request", "If-Match must be a version number")
        if not edits:
            return _problem(400, "malformed_request", "edit list is empty")

        with store.lock(graph_id):
            doc = store.load(graph_id)
            if doc.version != expected_version:
                raise VersionConflict(
                    f"graph is at version {doc.version}, not {expected_version}",
                    current_version=doc.version,
                )
            meta = store.meta(graph_id)
            consts = Constants.from_dict(meta["constants"]) if meta.get("constants") else Constants()
            criticality = meta.get("criticality") or {}
            fns = ScoreFunctions.default(criticality)

            graph = payload_to_graph(doc.graph)
            before = analyze(graph, fns, consts)
            before_paths = {p.nodes for p in enumerate_paths(graph, consts.path_cutoff,
                                                             fns=fns, consts=consts)}

            model = None
            parsed = [parse_edit(e) for e in edits]
            log = list(doc.edit_log)
            for edit in parsed:
                if isinstance(edit, AddCveNode) and model is None:
                    if not meta.get("model_ref") or not Path(meta["model_ref"]).exists():
                        raise ModelRequired(
                            "graph has no stored embedding model reference"
                        )
                    model = load_model(meta["model_ref"])
                base_version = graph.version
                graph, resolved = apply_edit_resolved(graph, edit, model=model)
                log.append(EditLogEntry(
                    base_version=base_version,
                    edit=resolved,
                    timestamp=dt.datetime.now(dt.timezone.utc).isoformat(),
                ))

            after = analyze(graph, fns, consts)
            after_paths = {p.nodes for p in enumerate_paths(graph, consts.path_cutoff,
                                                            fns=fns, consts=consts)}
            new_doc = GraphDocument.create(
                graph_to_payload(graph),
                analytics=analytics_to_payload(after),
                edit_log=tuple(log),
            )
            store.save(new_doc)

        return {
            "graph_id": graph_id,
            "from_version": doc.version,
            "to_version": new_doc.version,
            "deltas": {
                "exploit": after.exploit_score - before.exploit_score,
                "impact": after.impact_score - before.impact_score,
                "risk": after.risk_score - before.risk_score,
            },
            "added_paths": len(after_paths - before_paths),
            "removed_paths": len(before_paths - after_paths),
            "key_vulnerabilities_changed":
                after.key_vulnerabilities != before.key_vulnerabilities,
            "key_vulnerabilities": {
                "before": [list(kv) for kv in before.key_vulnerabilities],
                "after": [list(kv) for kv in after.key_vulnerabilities],
            },
            "vertex_cover_changed": after.vertex_cover != before.vertex_cover,
            "vertex_cover": {
                "before": list(before.vertex_cover),
                "after": list(after.vertex_cover),
            },
        }

    return app
