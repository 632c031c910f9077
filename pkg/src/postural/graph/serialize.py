"""``attack-graph-v1`` document serialization.

Payloads are canonical JSON (sorted keys, two-space indent, trailing
newline): identical graph values always serialize to identical bytes,
which the golden-file tests and the store checksums rely on.
"""

from __future__ import annotations

import json

from ..errors import CorruptDocument
from ..extraction.attributes import NodeAttributes
from .model import AttackGraph, EdgeKind, GraphEdge, GraphNode, Layer, NodeKind

GRAPH_SCHEMA = "attack-graph-v1"


def canonical_json(payload: dict) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def graph_to_payload(graph: AttackGraph) -> dict:
    nodes = []
    for node_id in sorted(graph.nodes):
        node = graph.nodes[node_id]
        nodes.append({
            "id": node.node_id,
            "kind": node.kind.value,
            "e_score": node.e_score,
            "i_score": node.i_score,
            "layers": sorted(l.value for l in node.layers),
            "overridden": sorted(node.overridden),
            "attributes": node.attributes.to_dict() if node.attributes else None,
        })
    edges = []
    for key in sorted(graph.edges):
        edge = graph.edges[key]
        edges.append({
            "src": edge.src,
            "dst": edge.dst,
            "kind": edge.kind.value,
            "weight": edge.weight,
            "provenance": dict(edge.provenance),
        })
    return {
        "schema": GRAPH_SCHEMA,
        "graph_id": graph.graph_id,
        "version": graph.version,
        "threshold": graph.threshold,
        "nodes": nodes,
        "edges": edges,
        "cycle_removals": [list(r) for r in graph.cycle_removals],
    }


def payload_to_graph(payload: dict) -> AttackGraph:
    if payload.get("schema") != GRAPH_SCHEMA:
        raise CorruptDocument(f"expected schema {GRAPH_SCHEMA!r}")
    try:
        nodes = {}
        for raw in payload["nodes"]:
            nodes[raw["id"]] = GraphNode(
                node_id=raw["id"],
                kind=NodeKind(raw["kind"]),
                e_score=raw["e_score"],
                i_score=raw["i_score"],
                layers=frozenset(Layer(l) for l in raw["layers"]),
                overridden=frozenset(raw["overridden"]),
                attributes=NodeAttributes.from_dict(raw["attributes"])
                if raw.get("attributes") else None,
            )
        edges = [
            GraphEdge(
                src=raw["src"], dst=raw["dst"], kind=EdgeKind(raw["kind"]),
                weight=raw["weight"], provenance=dict(raw.get("provenance", {})),
            )
            for raw in payload["edges"]
        ]
        return AttackGraph(
            graph_id=payload["graph_id"],
            nodes=nodes,
            edges=edges,
            threshold=payload["threshold"],
            version=payload["version"],
            cycle_removals=tuple(tuple(r) for r in payload.get("cycle_removals", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptDocument(f"bad graph payload: {exc}") from exc


def dump_graph(graph: AttackGraph) -> bytes:
    return canonical_json(graph_to_payload(graph))


def load_graph(raw: bytes) -> AttackGraph:
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorruptDocument(f"graph document is not valid JSON: {exc.msg}") from exc
    return payload_to_graph(payload)
