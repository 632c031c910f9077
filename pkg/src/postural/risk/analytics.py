"""Full posture analysis over one attack graph (``analytics-v1``).

Wall-clock timings are split the way operators expect: score
computation (edge recursions + graph scores) versus the path/cover
analyses.  Timings are measurement metadata and stay out of the
serialized document so identical inputs produce identical bytes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..graph.model import AttackGraph
from .cover import key_vulnerabilities, vertex_cover
from .paths import SORT_KEYS, PathRecord, enumerate_paths, shortest_attack_paths
from .scores import Constants, EdgeScores, ScoreFunctions, compute_edge_scores, graph_scores

ANALYTICS_SCHEMA = "analytics-v1"


@dataclass
class GraphAnalytics:
    graph_id: str
    graph_version: int
    exploit_score: float
    impact_score: float
    risk_score: float
    total_nodes: int
    total_edges: int
    path_count: int
    shortest_path_count: int
    vertex_cover_size: int
    shortest_paths: tuple[PathRecord, ...]
    top_paths: tuple[PathRecord, ...]
    key_vulnerabilities: tuple[tuple[str, int], ...]
    vertex_cover: tuple[str, ...]
    constants: Constants
    edge_scores: EdgeScores
    score_computation_seconds: float
    risk_analysis_seconds: float


def analyze(graph: AttackGraph, fns: ScoreFunctions | None = None,
            consts: Constants | None = None,
            sort_keys: tuple[str, ...] = SORT_KEYS) -> GraphAnalytics:
    """Run the five posture analyses; component errors propagate."""
    fns = fns or ScoreFunctions.default()
    consts = consts or Constants()

    t0 = time.perf_counter()
    scores = compute_edge_scores(graph, fns, consts)
    exploit, impact, risk = graph_scores(scores)
    score_seconds = time.perf_counter() - t0

    t1 = time.perf_counter()
    shortest = shortest_attack_paths(graph, fns, consts, scores=scores)
    all_paths = enumerate_paths(graph, consts.path_cutoff, scores=scores,
                                sort_keys=sort_keys)
    ranked = key_vulnerabilities(graph, consts.top_n)
    cover = vertex_cover(graph)
    risk_seconds = time.perf_counter() - t1

    return GraphAnalytics(
        graph_id=graph.graph_id,
        graph_version=graph.version,
        exploit_score=exploit,
        impact_score=impact,
        risk_score=risk,
        total_nodes=len(graph.nodes),
        total_edges=len(graph.edges),
        path_count=len(all_paths),
        shortest_path_count=len(shortest),
        vertex_cover_size=len(cover),
        shortest_paths=tuple(shortest),
        top_paths=tuple(all_paths[:consts.top_n]),
        key_vulnerabilities=tuple(ranked),
        vertex_cover=tuple(sorted(cover)),
        constants=consts,
        edge_scores=scores,
        score_computation_seconds=score_seconds,
        risk_analysis_seconds=risk_seconds,
    )


def analytics_to_payload(analytics: GraphAnalytics) -> dict:
    scores = analytics.edge_scores
    table = []
    for key in sorted(scores.exploitability):
        table.append({
            "src": key[0],
            "dst": key[1],
            "exploitability": scores.exploitability[key],
            "impact": scores.impact[key],
            "risk": scores.risk[key],
            "normalized_exploitability": scores.normalized_exploitability[key],
            "normalized_impact": scores.normalized_impact[key],
            "normalized_risk": scores.normalized_risk[key],
        })
    return {
        "schema": ANALYTICS_SCHEMA,
        "graph_id": analytics.graph_id,
        "graph_version": analytics.graph_version,
        "constants": analytics.constants.to_dict(),
        "exploit_score": analytics.exploit_score,
        "impact_score": analytics.impact_score,
        "risk_score": analytics.risk_score,
        "total_nodes": analytics.total_nodes,
        "total_edges": analytics.total_edges,
        "path_count": analytics.path_count,
        "shortest_path_count": analytics.shortest_path_count,
        "vertex_cover_size": analytics.vertex_cover_size,
        "shortest_paths": [p.to_dict() for p in analytics.shortest_paths],
        "top_paths": [p.to_dict() for p in analytics.top_paths],
        "key_vulnerabilities": [list(kv) for kv in analytics.key_vulnerabilities],
        "vertex_cover": list(analytics.vertex_cover),
        "edge_scores": table,
    }
