"""What-if graph edits.

``apply_edit`` returns a new graph value (version + 1).  Every edit also
has a *resolved* dictionary form that captures its full effect — for
AddCveNode that includes the similarity edges derived at apply time — so
an edit log can be replayed later without the embedding model and still
reproduce the exact same graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import (
    DuplicateNode,
    IllegalEdge,
    ModelRequired,
    UnknownNode,
    WouldOrphanAttacker,
)
from ..extraction.attributes import NodeAttributes
from ..ingest.records import CveRecord
from ..semantics.embeddings import EmbeddingModel
from ..semantics.similarity import port_similarity
from .build import MISSING_BASE_WEIGHT, break_cycles, in_port, out_port
from .layers import LayerRules, classify_layers, default_layer_rules
from .model import (
    ATTACKER_ID,
    AttackGraph,
    EdgeKind,
    GraphEdge,
    GraphNode,
    Layer,
    NodeKind,
    edge_kind_for,
)


@dataclass(frozen=True)
class AddCveNode:
    record: CveRecord
    attributes: NodeAttributes


@dataclass(frozen=True)
class RemoveNode:
    node_id: str


@dataclass(frozen=True)
class AddEdge:
    src: str
    dst: str
    weight: float


@dataclass(frozen=True)
class RemoveEdge:
    src: str
    dst: str


@dataclass(frozen=True)
class SetScore:
    node_id: str
    e_score: float | None = None
    i_score: float | None = None


@dataclass(frozen=True)
class SetWeight:
    src: str
    dst: str
    weight: float


GraphEdit = AddCveNode | RemoveNode | AddEdge | RemoveEdge | SetScore | SetWeight


def parse_edit(d: dict) -> GraphEdit:
    """Edit from its wire form ({"op": ..., ...}); ValueError on bad shape."""
    try:
        op = d["op"]
        if op == "add_cve_node":
            return AddCveNode(
                record=CveRecord.from_dict(d["record"]),
                attributes=NodeAttributes.from_dict(d["attributes"]),
            )
        if op == "remove_node":
            return RemoveNode(node_id=d["node_id"])
        if op == "add_edge":
            return AddEdge(src=d["src"], dst=d["dst"], weight=float(d["weight"]))
        if op == "remove_edge":
            return RemoveEdge(src=d["src"], dst=d["dst"])
        if op == "set_score":
            return SetScore(
                node_id=d["node_id"],
                e_score=None if d.get("e_score") is None else float(d["e_score"]),
                i_score=None if d.get("i_score") is None else float(d["i_score"]),
            )
        if op == "set_weight":
            return SetWeight(src=d["src"], dst=d["dst"], weight=float(d["weight"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad edit payload: {exc}") from exc
    raise ValueError(f"unknown edit op {d.get('op')!r}")


def _with(graph: AttackGraph, *, nodes=None, edges=None, cycle_removals=None,
          bump: bool = True) -> AttackGraph:
    return AttackGraph(
        graph_id=graph.graph_id,
        nodes=graph.nodes if nodes is None else nodes,
        edges=list(graph.edges.values()) if edges is None else edges,
        threshold=graph.threshold,
        version=graph.version + (1 if bump else 0),
        cycle_removals=graph.cycle_removals if cycle_removals is None else cycle_removals,
    )


def _rebreak(edges: list[GraphEdge]) -> tuple[list[GraphEdge], list[tuple[str, str, float]]]:
    """Re-run cycle breaking over the CveToCve subset of an edge list."""
    cve_edges = {e.key(): e.weight for e in edges if e.kind is EdgeKind.CveToCve}
    kept, removed = break_cycles(cve_edges)
    pruned = [e for e in edges if e.kind is not EdgeKind.CveToCve or e.key() in kept]
    return pruned, removed


def _edge_payload(edge: GraphEdge) -> dict:
    return {
        "src": edge.src, "dst": edge.dst, "kind": edge.kind.value,
        "weight": edge.weight, "provenance": dict(edge.provenance),
    }


def _edge_from_payload(d: dict) -> GraphEdge:
    return GraphEdge(
        src=d["src"], dst=d["dst"], kind=EdgeKind(d["kind"]),
        weight=d["weight"], provenance=dict(d.get("provenance", {})),
    )


def _derive_new_node_edges(graph: AttackGraph, record: CveRecord,
                           attributes: NodeAttributes, model: EmbeddingModel,
                           port_mode: str) -> list[GraphEdge]:
    """Build-rule edges between the new CVE and the existing graph."""
    base = MISSING_BASE_WEIGHT if record.base_score is None else record.base_score / 10.0
    edges = [GraphEdge(
        src=ATTACKER_ID, dst=record.id, kind=EdgeKind.AttackerToCve,
        weight=base, provenance={"base_score": record.base_score},
    )]
    for cwe in record.cwe_ids:
        edges.append(GraphEdge(
            src=record.id, dst=f"CWE-{cwe}", kind=EdgeKind.CveToCwe,
            weight=base, provenance={"base_score": record.base_score},
        ))
    new_out = out_port(attributes, port_mode)
    new_in = in_port(attributes, port_mode)
    for other_id in graph.cve_ids():
        other = graph.nodes[other_id]
        if other.attributes is None:
            continue
        s = port_similarity(model, new_out, in_port(other.attributes, port_mode))
        if s >= graph.threshold:
            edges.append(GraphEdge(
                src=record.id, dst=other_id, kind=EdgeKind.CveToCve,
                weight=s, provenance={"similarity": s},
            ))
        s = port_similarity(model, out_port(other.attributes, port_mode), new_in)
        if s >= graph.threshold:
            edges.append(GraphEdge(
                src=other_id, dst=record.id, kind=EdgeKind.CveToCve,
                weight=s, provenance={"similarity": s},
            ))
    return edges


def _apply_add_cve(graph: AttackGraph, edit: AddCveNode, model, rules,
                   port_mode: str) -> tuple[AttackGraph, dict]:
    record, attributes = edit.record, edit.attributes
    if record.id in graph.nodes:
        raise DuplicateNode(f"node {record.id} already exists")
    if model is None:
        raise ModelRequired("AddCveNode needs the embedding model to derive edges")
    rules = rules or default_layer_rules()

    node = GraphNode(
        node_id=record.id, kind=NodeKind.Cve,
        e_score=record.exploitability_score or 0.0,
        i_score=record.impact_score or 0.0,
        attributes=attributes,
    )
    node = replace(node, layers=frozenset(
        classify_layers(node, record.description, rules, record.cwe_ids)
    ))

    new_cwe_nodes = []
    nodes = dict(graph.nodes)
    nodes[record.id] = node
    for cwe in record.cwe_ids:
        cwe_id = f"CWE-{cwe}"
        if cwe_id not in nodes:
            cwe_node = GraphNode(cwe_id, NodeKind.Cwe)
            cwe_node = replace(cwe_node, layers=frozenset(
                classify_layers(cwe_node, "", rules)
            ))
            nodes[cwe_id] = cwe_node
            new_cwe_nodes.append(cwe_id)

    derived = _derive_new_node_edges(graph, record, attributes, model, port_mode)
    edges, removed = _rebreak(list(graph.edges.values()) + derived)
    surviving_keys = {e.key() for e in edges}
    derived = [e for e in derived if e.key() in surviving_keys]

    new_graph = _with(graph, nodes=nodes, edges=edges,
                      cycle_removals=graph.cycle_removals + tuple(removed))
    resolved = {
        "op": "add_cve_node",
        "record": record.to_dict(),
        "attributes": attributes.to_dict(),
        "layers": sorted(l.value for l in node.layers),
        "new_cwe_nodes": [
            {"id": c, "layers": sorted(l.value for l in nodes[c].layers)}
            for c in new_cwe_nodes
        ],
        "derived_edges": [_edge_payload(e) for e in derived],
        "cycle_removed": [list(r) for r in removed],
    }
    return new_graph, resolved


def _cascade_remove(graph: AttackGraph, node_id: str) -> tuple[dict, list]:
    nodes = dict(graph.nodes)
    del nodes[node_id]
    edges = [e for e in graph.edges.values() if node_id not in (e.src, e.dst)]
    # CWE sinks exist only as edge targets; drop any left dangling.
    touched = {e.src for e in edges} | {e.dst for e in edges}
    nodes = {
        n: node for n, node in nodes.items()
        if node.kind is not NodeKind.Cwe or n in touched
    }
    edges = [e for e in edges if e.src in nodes and e.dst in nodes]
    return nodes, edges


def apply_edit_resolved(graph: AttackGraph, edit: GraphEdit, *,
                        model: EmbeddingModel | None = None,
                        rules: tuple[LayerRules, ...] | None = None,
                        port_mode: str = "permissive") -> tuple[AttackGraph, dict]:
    """Apply one edit; returns (new graph, replayable resolved form)."""
    if isinstance(edit, AddCveNode):
        return _apply_add_cve(graph, edit, model, rules, port_mode)

    if isinstance(edit, RemoveNode):
        if edit.node_id == ATTACKER_ID:
            raise WouldOrphanAttacker("the attacker node cannot be removed")
        if edit.node_id not in graph.nodes:
            raise UnknownNode(f"no node {edit.node_id}")
        nodes, edges = _cascade_remove(graph, edit.node_id)
        return _with(graph, nodes=nodes, edges=edges), {
            "op": "remove_node", "node_id": edit.node_id,
        }

    if isinstance(edit, AddEdge):
        for end in (edit.src, edit.dst):
            if end not in graph.nodes:
                raise UnknownNode(f"no node {end}")
        if (edit.src, edit.dst) in graph.edges:
            raise DuplicateNode(f"edge {edit.src}->{edit.dst} already exists")
        kind = edge_kind_for(graph.nodes[edit.src].kind, graph.nodes[edit.dst].kind)
        new_edge = GraphEdge(edit.src, edit.dst, kind, edit.weight, {"user": True})
        edges, removed = _rebreak(list(graph.edges.values()) + [new_edge])
        new_graph = _with(graph, edges=edges,
                          cycle_removals=graph.cycle_removals + tuple(removed))
        return new_graph, {
            "op": "add_edge", "src": edit.src, "dst": edit.dst,
            "weight": edit.weight, "kind": kind.value,
            "cycle_removed": [list(r) for r in removed],
        }

    if isinstance(edit, RemoveEdge):
        if (edit.src, edit.dst) not in graph.edges:
            raise UnknownNode(f"no edge {edit.src}->{edit.dst}")
        edges = [e for e in graph.edges.values() if e.key() != (edit.src, edit.dst)]
        return _with(graph, edges=edges), {
            "op": "remove_edge", "src": edit.src, "dst": edit.dst,
        }

    if isinstance(edit, SetScore):
        node = graph.nodes.get(edit.node_id)
        if node is None:
            raise UnknownNode(f"no node {edit.node_id}")
        overridden = set(node.overridden)
        changes = {}
        if edit.e_score is not None:
            changes["e_score"] = float(edit.e_score)
            overridden.add("e_score")
        if edit.i_score is not None:
            changes["i_score"] = float(edit.i_score)
            overridden.add("i_score")
        if not changes:
            raise ValueError("SetScore needs e_score and/or i_score")
        nodes = dict(graph.nodes)
        nodes[edit.node_id] = replace(node, overridden=frozenset(overridden), **changes)
        return _with(graph, nodes=nodes), {
            "op": "set_score", "node_id": edit.node_id,
            "e_score": edit.e_score, "i_score": edit.i_score,
        }

    if isinstance(edit, SetWeight):
        edge = graph.edges.get((edit.src, edit.dst))
        if edge is None:
            raise UnknownNode(f"no edge {edit.src}->{edit.dst}")
        provenance = dict(edge.provenance)
        provenance["user"] = True
        edges = [e for e in graph.edges.values() if e.key() != (edit.src, edit.dst)]
        edges.append(replace(edge, weight=float(edit.weight), provenance=provenance))
        return _with(graph, edges=edges), {
            "op": "set_weight", "src": edit.src, "dst": edit.dst, "weight": edit.weight,
        }

    raise TypeError(f"unknown edit type {type(edit).__name__}")


def apply_edit(graph: AttackGraph, edit: GraphEdit, **kwargs) -> AttackGraph:
    new_graph, _ = apply_edit_resolved(graph, edit, **kwargs)
    return new_graph


def replay_edit(graph: AttackGraph, resolved: dict) -> AttackGraph:
    """Apply a resolved-form edit without needing the embedding model."""
    op = resolved["op"]
    if op == "add_cve_node":
        record = CveRecord.from_dict(resolved["record"])
        attributes = NodeAttributes.from_dict(resolved["attributes"])
        node = GraphNode(
            node_id=record.id, kind=NodeKind.Cve,
            e_score=record.exploitability_score or 0.0,
            i_score=record.impact_score or 0.0,
            attributes=attributes,
            layers=frozenset(Layer(l) for l in resolved["layers"]),
        )
        nodes = dict(graph.nodes)
        nodes[record.id] = node
        for entry in resolved["new_cwe_nodes"]:
            nodes[entry["id"]] = GraphNode(
                entry["id"], NodeKind.Cwe,
                layers=frozenset(Layer(l) for l in entry["layers"]),
            )
        removed_keys = {(s, d) for s, d, _ in resolved["cycle_removed"]}
        edges = [e for e in graph.edges.values() if e.key() not in removed_keys]
        edges += [_edge_from_payload(d) for d in resolved["derived_edges"]]
        return _with(graph, nodes=nodes, edges=edges,
                     cycle_removals=graph.cycle_removals
                     + tuple(tuple(r) for r in resolved["cycle_removed"]))
    if op == "add_edge":
        removed_keys = {(s, d) for s, d, _ in resolved["cycle_removed"]}
        edges = [e for e in graph.edges.values() if e.key() not in removed_keys]
        new_key = (resolved["src"], resolved["dst"])
        if new_key not in removed_keys:
            edges.append(GraphEdge(
                resolved["src"], resolved["dst"], EdgeKind(resolved["kind"]),
                resolved["weight"], {"user": True},
            ))
        return _with(graph, edges=edges,
                     cycle_removals=graph.cycle_removals
                     + tuple(tuple(r) for r in resolved["cycle_removed"]))
    if op == "remove_node":
        return apply_edit(graph, RemoveNode(resolved["node_id"]))
    if op == "remove_edge":
        return apply_edit(graph, RemoveEdge(resolved["src"], resolved["dst"]))
    if op == "set_score":
        return apply_edit(graph, SetScore(
            resolved["node_id"], resolved.get("e_score"), resolved.get("i_score")
        ))
    if op == "set_weight":
        return apply_edit(graph, SetWeight(
            resolved["src"], resolved["dst"], resolved["weight"]
        ))
    raise ValueError(f"unknown resolved op {op!r}")
