"""Cumulative attack-graph construction.

Edge rules, in order:

* the attacker reaches every CVE node (weight: CVSS base score / 10,
  neutral 0.5 when the score is missing);
* CVE A reaches CVE B when the best similarity between A's
  postconditions+outputs and B's preconditions+inputs meets the
  threshold (the match score is the weight);
* every CVE reaches each CWE it is filed under (base-score weight).

The similarity rule is symmetric enough to create directed cycles, but
the downstream score recursions need a DAG, so construction breaks every
cycle by deleting its minimum-weight edge (ties: lexicographically
smallest (src, dst)); deletions are recorded on the graph value.
"""

from __future__ import annotations

from ..errors import DuplicateNode, EmptyInput
from ..extraction.attributes import NodeAttributes
from ..ingest.records import CveRecord
from ..semantics.embeddings import EmbeddingModel
from ..semantics.similarity import port_similarity
from .model import ATTACKER_ID, AttackGraph, EdgeKind, GraphEdge, GraphNode, NodeKind

MISSING_BASE_WEIGHT = 0.5


def _find_cycle(adj: dict[str, list[str]]) -> list[tuple[str, str]] | None:
    """First cycle found by DFS over sorted nodes/neighbors, as edge list."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in adj}
    for root in sorted(adj):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(adj[root]))]
        path = [root]
        color[root] = GRAY
        while stack:
            node, neighbors = stack[-1]
            advanced = False
            for nxt in neighbors:
                if color[nxt] == GRAY:
                    cycle_nodes = path[path.index(nxt):] + [nxt]
                    return list(zip(cycle_nodes, cycle_nodes[1:]))
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(adj[nxt])))
                    path.append(nxt)
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
                path.pop()
    return None


def break_cycles(weighted_edges: dict[tuple[str, str], float]
                 ) -> tuple[set[tuple[str, str]], list[tuple[str, str, float]]]:
    """Drop minimum-weight cycle edges until none remain.

    Returns (kept edge keys, removal log).  Deterministic: the DFS scans
    sorted adjacency and ties break on (weight, src, dst).
    """
    nodes = sorted({n for key in weighted_edges for n in key})
    adj = {n: sorted(d for (s, d) in weighted_edges if s == n) for n in nodes}
    kept = set(weighted_edges)
    removed: list[tuple[str, str, float]] = []
    while True:
        cycle = _find_cycle(adj)
        if cycle is None:
            break
        src, dst = min(cycle, key=lambda e: (weighted_edges[e], e))
        kept.discard((src, dst))
        adj[src].remove(dst)
        removed.append((src, dst, weighted_edges[(src, dst)]))
    return kept, removed


def _base_weight(record: CveRecord) -> float:
    if record.base_score is None:
        return MISSING_BASE_WEIGHT
    return record.base_score / 10.0


def out_port(attrs: NodeAttributes, port_mode: str) -> list[str]:
    phrases = list(attrs.postconditions)
    if port_mode == "permissive":
        phrases += [p for p in attrs.outputs if p not in phrases]
    return phrases


def in_port(attrs: NodeAttributes, port_mode: str) -> list[str]:
    phrases = list(attrs.preconditions)
    if port_mode == "permissive":
        phrases += [p for p in attrs.inputs if p not in phrases]
    return phrases


def similarity_edges(pairs: list[tuple[str, NodeAttributes]], model: EmbeddingModel,
                     threshold: float, port_mode: str) -> dict[tuple[str, str], float]:
    """Match score for every ordered CVE pair at or above the threshold."""
    scores: dict[tuple[str, str], float] = {}
    for src_id, src_attrs in pairs:
        source_port = out_port(src_attrs, port_mode)
        for dst_id, dst_attrs in pairs:
            if src_id == dst_id:
                continue
            s = port_similarity(model, source_port, in_port(dst_attrs, port_mode))
            if s >= threshold:
                scores[(src_id, dst_id)] = s
    return scores


def build_graph(cves: list[tuple[CveRecord, NodeAttributes]], model: EmbeddingModel,
                threshold: float = 0.8, cwe_catalog: dict[int, str] | None = None,
                *, graph_id: str = "attack-graph", prune_dead_ends: bool = False,
                port_mode: str = "permissive") -> AttackGraph:
    """Construct the cumulative graph from matched records and node ports."""
    if not cves:
        raise EmptyInput("no CVE records to build a graph from")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    if port_mode not in ("permissive", "strict"):
        raise ValueError(f"unknown port_mode {port_mode!r}")

    nodes: dict[str, GraphNode] = {
        ATTACKER_ID: GraphNode(ATTACKER_ID, NodeKind.Attacker)
    }
    records: dict[str, CveRecord] = {}
    for record, attrs in cves:
        if record.id in records:
            raise DuplicateNode(f"duplicate record {record.id}")
        records[record.id] = record
        nodes[record.id] = GraphNode(
            node_id=record.id,
            kind=NodeKind.Cve,
            e_score=record.exploitability_score or 0.0,
            i_score=record.impact_score or 0.0,
            attributes=attrs,
        )
    for record, _ in cves:
        for cwe in record.cwe_ids:
            cwe_id = f"CWE-{cwe}"
            if cwe_id not in nodes:
                nodes[cwe_id] = GraphNode(cwe_id, NodeKind.Cwe)

    edges: list[GraphEdge] = []
    for cve_id, record in records.items():
        edges.append(GraphEdge(
            src=ATTACKER_ID, dst=cve_id, kind=EdgeKind.AttackerToCve,
            weight=_base_weight(record), provenance={"base_score": record.base_score},
        ))
        for cwe in record.cwe_ids:
            edges.append(GraphEdge(
                src=cve_id, dst=f"CWE-{cwe}", kind=EdgeKind.CveToCwe,
                weight=_base_weight(record), provenance={"base_score": record.base_score},
            ))

    pairs = [(record.id, attrs) for record, attrs in cves]
    matches = similarity_edges(pairs, model, threshold, port_mode)
    kept, removed = break_cycles(matches)
    for key in sorted(kept):
        edges.append(GraphEdge(
            src=key[0], dst=key[1], kind=EdgeKind.CveToCve,
            weight=matches[key], provenance={"similarity": matches[key]},
        ))

    graph = AttackGraph(
        graph_id=graph_id, nodes=nodes, edges=edges,
        threshold=threshold, version=1, cycle_removals=tuple(removed),
    )
    if prune_dead_ends:
        graph = _prune_dead_ends(graph)
    return graph


def _prune_dead_ends(graph: AttackGraph) -> AttackGraph:
    """Drop CVE nodes that cannot reach any CWE sink."""
    reaches: set[str] = set(graph.cwe_ids())
    changed = True
    while changed:
        changed = False
        for node_id in graph.cve_ids():
            if node_id in reaches:
                continue
            if any(e.dst in reaches for e in graph.out_edges(node_id)):
                reaches.add(node_id)
                changed = True
    keep = {n for n in graph.nodes
            if graph.nodes[n].kind is not NodeKind.Cve or n in reaches}
    edges = [e for e in graph.edges.values() if e.src in keep and e.dst in keep]
    nodes = {n: graph.nodes[n] for n in keep}
    return AttackGraph(
        graph_id=graph.graph_id, nodes=nodes, edges=edges,
        threshold=graph.threshold, version=graph.version,
        cycle_removals=graph.cycle_removals,
    )
