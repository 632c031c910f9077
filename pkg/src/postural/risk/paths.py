"""Attack-path analytics: shortest paths and bounded enumeration.

Shortest paths use the reversed-exploitability weighting: an edge costs
(max node exploit score − source's exploit score), so highly exploitable
sources make cheap edges.  A zero-cost supersink behind every CWE node
reduces the multi-target search to a single Dijkstra pair, and *all*
minimum-weight attacker-to-target paths come back, not just one.  Edge
costs are exact fractions, so tie detection needs no float tolerance.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from ..errors import NoPath
from ..graph.model import ATTACKER_ID, AttackGraph, NodeKind
from .scores import Constants, EdgeScores, ScoreFunctions, compute_edge_scores, node_scores

_SINK = chr(0) + "supersink"  # sorts first, collides with no node id

SORT_KEYS = ("risk", "exploit", "impact")


@dataclass(frozen=True)
class PathRecord:
    """One attacker-to-target path with summed raw edge scores."""

    nodes: tuple[str, ...]
    exploit_sum: float
    impact_sum: float
    risk_sum: float

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "exploit_sum": self.exploit_sum,
            "impact_sum": self.impact_sum,
            "risk_sum": self.risk_sum,
        }

    def sort_value(self, key: str) -> float:
        return {"risk": self.risk_sum, "exploit": self.exploit_sum,
                "impact": self.impact_sum}[key]


def _record(graph: AttackGraph, nodes: list[str], scores: EdgeScores) -> PathRecord:
    pairs = list(zip(nodes, nodes[1:]))
    return PathRecord(
        nodes=tuple(nodes),
        exploit_sum=sum(scores.exploitability[p] for p in pairs),
        impact_sum=sum(scores.impact[p] for p in pairs),
        risk_sum=sum(scores.risk[p] for p in pairs),
    )


def _dijkstra(adj: dict[str, list[tuple[str, Fraction]]], start: str) -> dict[str, Fraction]:
    dist: dict[str, Fraction] = {start: Fraction(0)}
    heap = [(Fraction(0), start)]
    done: set[str] = set()
    while heap:
        d, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        for nxt, w in adj.get(node, ()):
            nd = d + w
            if nxt not in dist or nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return dist


def shortest_attack_paths(graph: AttackGraph, fns: ScoreFunctions,
                          consts: Constants | None = None,
                          scores: EdgeScores | None = None) -> list[PathRecord]:
    """Every minimum-weight attacker-to-target path, ordered by node ids."""
    cwes = graph.cwe_ids()
    if not cwes:
        raise NoPath("graph has no target (CWE) nodes")
    if scores is None:
        scores = compute_edge_scores(graph, fns, consts)

    exploit_of, _ = node_scores(graph, fns)
    max_exploit = Fraction(max(exploit_of.values()))

    adj: dict[str, list[tuple[str, Fraction]]] = {n: [] for n in graph.nodes}
    radj: dict[str, list[tuple[str, Fraction]]] = {n: [] for n in graph.nodes}
    adj[_SINK] = []
    radj[_SINK] = []
    for (src, dst) in sorted(graph.edges):
        w = max_exploit - Fraction(exploit_of[src])
        adj[src].append((dst, w))
        radj[dst].append((src, w))
    for cwe in cwes:
        adj[cwe].append((_SINK, Fraction(0)))
        radj[_SINK].append((cwe, Fraction(0)))

    from_start = _dijkstra(adj, ATTACKER_ID)
    if _SINK not in from_start:
        raise NoPath("no attacker-to-target path exists")
    to_sink = _dijkstra(radj, _SINK)
    best = from_start[_SINK]

    # Walk only edges that sit on some minimum-weight path.
    paths: list[list[str]] = []

    def walk(node: str, trail: list[str]):
        if node == _SINK:
            paths.append(trail[:])
            return
        for nxt, w in adj[node]:
            if nxt in to_sink and from_start[node] + w + to_sink[nxt] == best:
                trail.append(nxt)
                walk(nxt, trail)
                trail.pop()

    walk(ATTACKER_ID, [ATTACKER_ID])
    records = [_record(graph, p[:-1], scores) for p in paths]
    return sorted(records, key=lambda r: r.nodes)


def enumerate_paths(graph: AttackGraph, cutoff: int | None = None,
                    scores: EdgeScores | None = None,
                    fns: ScoreFunctions | None = None,
                    consts: Constants | None = None,
                    sort_keys: tuple[str, ...] = SORT_KEYS) -> list[PathRecord]:
    """All simple attacker-to-target paths with at most ``cutoff`` edges.

    Sorted descending by the given key order (default risk, exploit,
    impact), with the node sequence as the final tiebreak.
    """
    if cutoff is not None and cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if sorted(sort_keys) != sorted(SORT_KEYS):
        raise ValueError(f"sort_keys must be a permutation of {SORT_KEYS}")
    if scores is None:
        scores = compute_edge_scores(graph, fns or ScoreFunctions.from_node_fields(), consts)
    bound = cutoff if cutoff is not None else max(1, len(graph.nodes) - 1)

    adjacency = {
        n: sorted(e.dst for e in graph.out_edges(n)) for n in graph.nodes
    }
    is_target = {n: graph.nodes[n].kind is NodeKind.Cwe for n in graph.nodes}
    records: list[PathRecord] = []
    trail = [ATTACKER_ID]
    on_trail = {ATTACKER_ID}

    def dfs(node: str, edges_used: int):
        if edges_used >= bound:
            return
        for nxt in adjacency[node]:
            if nxt in on_trail:
                continue
            trail.append(nxt)
            if is_target[nxt]:
                records.append(_record(graph, trail, scores))
            else:
                on_trail.add(nxt)
                dfs(nxt, edges_used + 1)
                on_trail.discard(nxt)
            trail.pop()

    dfs(ATTACKER_ID, 0)
    records.sort(key=lambda r: tuple(-r.sort_value(k) for k in sort_keys) + (r.nodes,))
    return records
