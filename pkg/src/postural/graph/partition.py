"""Layer subgraph extraction from the cumulative graph."""

from __future__ import annotations

from .build import MISSING_BASE_WEIGHT
from .model import ATTACKER_ID, AttackGraph, EdgeKind, GraphEdge, Layer, NodeKind


def partition(graph: AttackGraph, layer: Layer) -> AttackGraph:
    """Subgraph for one layer.

    Keeps the attacker, every CVE tagged with the layer, and the CWE
    sinks those CVEs still point at.  Surviving CVEs always get an
    attacker edge back: the cumulative one when it exists, otherwise a
    regenerated neutral-weight edge flagged in provenance.
    """
    kept_cves = {
        n for n in graph.cve_ids() if layer in graph.nodes[n].layers
    }
    kept_cwes = {
        e.dst
        for cve in kept_cves
        for e in graph.out_edges(cve)
        if e.kind is EdgeKind.CveToCwe
    }
    keep = {ATTACKER_ID} | kept_cves | kept_cwes

    edges: list[GraphEdge] = []
    for edge in graph.edges.values():
        if edge.kind is EdgeKind.AttackerToCve:
            continue  # regenerated below
        if edge.src in keep and edge.dst in keep:
            edges.append(edge)
    for cve in sorted(kept_cves):
        existing = graph.edges.get((ATTACKER_ID, cve))
        if existing is not None:
            edges.append(existing)
        else:
            edges.append(GraphEdge(
                src=ATTACKER_ID, dst=cve, kind=EdgeKind.AttackerToCve,
                weight=MISSING_BASE_WEIGHT, provenance={"regenerated": True},
            ))

    nodes = {n: graph.nodes[n] for n in keep}
    return AttackGraph(
        graph_id=f"{graph.graph_id}:{layer.value}",
        nodes=nodes,
        edges=edges,
        threshold=graph.threshold,
        version=graph.version,
    )
