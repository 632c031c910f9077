"""Edge score recursions and graph-level scores.

Each edge gets three scores:

* exploitability: the source node's exploit score plus a damped sum of
  the exploitability of every edge arriving at the source, accumulated
  in forward topological order;
* impact: the sink node's impact score plus a damped sum of the impact
  of every edge leaving the sink, accumulated in reverse order;
* risk: edge weight times (exploitability + impact).

Every family is then rescaled so its maximum is exactly 10.  The graph
exploit/impact/risk scores are the means of the rescaled families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import EmptyGraph
from ..graph.model import AttackGraph, GraphNode, NodeKind

EdgeKey = tuple[str, str]


@dataclass(frozen=True)
class Constants:
    """Recursion damping factors and analysis knobs."""

    upstream_factor: float = 0.1    # weight of accumulated upstream exploitability
    downstream_factor: float = 0.01  # weight of accumulated downstream impact
    path_cutoff: int = 8            # max edges per enumerated path
    top_n: int = 3                  # ranked items surfaced per analysis

    def __post_init__(self):
        if self.upstream_factor < 0 or self.downstream_factor < 0:
            raise ValueError("damping factors must be >= 0")
        if self.path_cutoff < 1 or self.top_n < 1:
            raise ValueError("path_cutoff and top_n must be >= 1")

    def to_dict(self) -> dict:
        return {
            "upstream_factor": self.upstream_factor,
            "downstream_factor": self.downstream_factor,
            "path_cutoff": self.path_cutoff,
            "top_n": self.top_n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Constants":
        return cls(**d)


def _clamp10(value: float) -> float:
    return max(0.0, min(10.0, value))


@dataclass(frozen=True)
class ScoreFunctions:
    """Node score functions; user-replaceable, with CVSS-backed defaults."""

    exploit: Callable[[AttackGraph, GraphNode], float]
    impact: Callable[[AttackGraph, GraphNode], float]

    @classmethod
    def default(cls, criticality: dict[str, float] | None = None) -> "ScoreFunctions":
        """CVSS-backed defaults.

        Exploit: the node's stored exploitability (attacker and unscored
        nodes are 0).  Impact: stored impact, clamped then scaled by the
        matched device's criticality multiplier; CWE sinks without an
        override inherit the mean impact of their in-neighbor CVEs.
        """
        crit = criticality or {}

        def exploit_fn(graph: AttackGraph, node: GraphNode) -> float:
            return _clamp10(node.e_score)

        def impact_fn(graph: AttackGraph, node: GraphNode) -> float:
            if node.kind is NodeKind.Cwe and "i_score" not in node.overridden:
                neighbors = [
                    graph.nodes[e.src] for e in graph.in_edges(node.node_id)
                    if graph.nodes[e.src].kind is NodeKind.Cve
                ]
                if not neighbors:
                    return 0.0
                return sum(impact_fn(graph, n) for n in neighbors) / len(neighbors)
            return _clamp10(node.i_score) * crit.get(node.node_id, 1.0)

        return cls(exploit=exploit_fn, impact=impact_fn)

    @classmethod
    def from_node_fields(cls) -> "ScoreFunctions":
        """Raw stored scores, no criticality; handy for synthetic graphs."""
        return cls(
            exploit=lambda graph, node: node.e_score,
            impact=lambda graph, node: node.i_score,
        )


@dataclass
class EdgeScores:
    exploitability: dict[EdgeKey, float]
    impact: dict[EdgeKey, float]
    risk: dict[EdgeKey, float]
    normalized_exploitability: dict[EdgeKey, float]
    normalized_impact: dict[EdgeKey, float]
    normalized_risk: dict[EdgeKey, float]


def node_scores(graph: AttackGraph, fns: ScoreFunctions) -> tuple[dict[str, float], dict[str, float]]:
    exploit = {n: fns.exploit(graph, node) for n, node in graph.nodes.items()}
    impact = {n: fns.impact(graph, node) for n, node in graph.nodes.items()}
    return exploit, impact


def _normalize(family: dict[EdgeKey, float]) -> dict[EdgeKey, float]:
    peak = max(family.values(), default=0.0)
    if peak <= 0.0:
        return {key: 0.0 for key in family}
    # 10 * (x / peak) so the maximum lands on exactly 10.0
    return {key: 10.0 * (value / peak) for key, value in family.items()}


def compute_edge_scores(graph: AttackGraph, fns: ScoreFunctions,
                        consts: Constants | None = None) -> EdgeScores:
    """Run both recursions over a DAG and normalize the three families."""
    consts = consts or Constants()
    order = graph.topological_order()  # raises CyclicGraph defensively
    exploit_of, impact_of = node_scores(graph, fns)

    # Every out-edge of a node shares its exploitability value, and every
    # in-edge of a node shares its impact value, so both recursions
    # collapse to one value per node.
    source_acc: dict[str, float] = {}
    for node in order:
        upstream = sum(source_acc[e.src] for e in graph.in_edges(node))
        source_acc[node] = exploit_of[node] + consts.upstream_factor * upstream

    sink_acc: dict[str, float] = {}
    for node in reversed(order):
        downstream = sum(sink_acc[e.dst] for e in graph.out_edges(node))
        sink_acc[node] = impact_of[node] + consts.downstream_factor * downstream

    exploitability = {}
    impact = {}
    risk = {}
    for key, edge in graph.edges.items():
        exploitability[key] = source_acc[edge.src]
        impact[key] = sink_acc[edge.dst]
        risk[key] = edge.weight * (exploitability[key] + impact[key])

    return EdgeScores(
        exploitability=exploitability,
        impact=impact,
        risk=risk,
        normalized_exploitability=_normalize(exploitability),
        normalized_impact=_normalize(impact),
        normalized_risk=_normalize(risk),
    )


def graph_scores(scores: EdgeScores) -> tuple[float, float, float]:
    """(exploit, impact, risk) means over the normalized families."""
    if not scores.exploitability:
        raise EmptyGraph("graph has no edges to score")
    n = len(scores.exploitability)
    return (
        sum(scores.normalized_exploitability.values()) / n,
        sum(scores.normalized_impact.values()) / n,
        sum(scores.normalized_risk.values()) / n,
    )
