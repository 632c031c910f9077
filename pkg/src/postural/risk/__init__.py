from .analytics import ANALYTICS_SCHEMA, GraphAnalytics, analytics_to_payload, analyze
from .cover import covers_all_eligible_edges, key_vulnerabilities, vertex_cover
from .paths import SORT_KEYS, PathRecord, enumerate_paths, shortest_attack_paths
from .scores import (
    Constants,
    EdgeScores,
    ScoreFunctions,
    compute_edge_scores,
    graph_scores,
    node_scores,
)

__all__ = [
    "ANALYTICS_SCHEMA",
    "Constants",
    "EdgeScores",
    "GraphAnalytics",
    "PathRecord",
    "SORT_KEYS",
    "ScoreFunctions",
    "analytics_to_payload",
    "analyze",
    "compute_edge_scores",
    "covers_all_eligible_edges",
    "enumerate_paths",
    "graph_scores",
    "key_vulnerabilities",
    "node_scores",
    "shortest_attack_paths",
    "vertex_cover",
]
