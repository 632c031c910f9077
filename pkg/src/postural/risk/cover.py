"""Patch-set analytics: degree ranking and approximate vertex cover."""

from __future__ import annotations

from ..graph.model import AttackGraph, EdgeKind, NodeKind


def key_vulnerabilities(graph: AttackGraph, top_n: int = 3) -> list[tuple[str, int]]:
    """Intermediate (CVE) nodes ranked by total degree, ties by id."""
    degrees = [
        (node_id, len(graph.in_edges(node_id)) + len(graph.out_edges(node_id)))
        for node_id in graph.cve_ids()
    ]
    degrees.sort(key=lambda item: (-item[1], item[0]))
    return degrees[:top_n]


def vertex_cover(graph: AttackGraph) -> set[str]:
    """Approximate minimum set of CVE nodes touching every attack edge.

    Only CVE nodes are patchable, so only they may enter the cover.
    Edges into CWE sinks leave no choice: their CVE endpoint is in every
    feasible cover, so those go in first.  The remaining CVE-to-CVE
    edges run through the unit-cost local-ratio reduction in sorted
    order, which keeps the result within twice the optimum.
    """
    cover: set[str] = set()
    sink_edges = sorted(
        key for key, e in graph.edges.items() if e.kind is EdgeKind.CveToCwe
    )
    for src, _ in sink_edges:
        cover.add(src)

    cost = {n: 1.0 for n in graph.cve_ids()}
    cve_edges = sorted(
        key for key, e in graph.edges.items() if e.kind is EdgeKind.CveToCve
    )
    for u, v in cve_edges:
        if u in cover or v in cover:
            continue
        if cost[u] <= cost[v]:
            cover.add(u)
            cost[v] -= cost[u]
        else:
            cover.add(v)
            cost[u] -= cost[v]
    return cover


def covers_all_eligible_edges(graph: AttackGraph, cover: set[str]) -> bool:
    """Check the cover contract: every CveToCve/CveToCwe edge is touched."""
    for edge in graph.edges.values():
        if edge.kind is EdgeKind.AttackerToCve:
            continue
        eligible = [
            end for end in (edge.src, edge.dst)
            if graph.nodes[end].kind is NodeKind.Cve
        ]
        if not any(end in cover for end in eligible):
            return False
    return True
