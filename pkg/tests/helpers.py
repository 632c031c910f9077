"""Shared test utilities: random graph generation and independent oracles.

The oracles deliberately use different algorithms than the engine
(backward/forward path expansion instead of topological DP, exhaustive
subset search instead of local-ratio, recursive enumeration instead of
the iterative DFS) so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from postural.graph.model import (
    ATTACKER_ID,
    AttackGraph,
    EdgeKind,
    GraphEdge,
    GraphNode,
    NodeKind,
)
from postural.semantics.embeddings import EmbeddingModel, TrainingConfig


def toy_model(token_vectors: dict[str, list[float]]) -> EmbeddingModel:
    """Embedding model with hand-picked vectors for exact similarity control."""
    vocabulary = {t: i for i, t in enumerate(token_vectors)}
    dim = len(next(iter(token_vectors.values())))
    vectors = np.array([token_vectors[t] for t in vocabulary], dtype=float)
    return EmbeddingModel(
        vocabulary=vocabulary, dim=dim, vectors=vectors,
        config=TrainingConfig(dim=dim, min_count=1),
    )


def random_attack_graph(rng: random.Random, max_cves: int = 7, max_cwes: int = 2,
                        edge_prob: float = 0.35) -> AttackGraph:
    """Random layered attack DAG with random scores and weights."""
    n_cves = rng.randint(2, max_cves)
    n_cwes = rng.randint(1, max_cwes)
    cves = [f"CVE-2020-{1000 + i}" for i in range(n_cves)]
    cwes = [f"CWE-{i + 1}" for i in range(n_cwes)]
    order = cves[:]
    rng.shuffle(order)

    nodes = {ATTACKER_ID: GraphNode(ATTACKER_ID, NodeKind.Attacker)}
    for c in cves:
        nodes[c] = GraphNode(
            c, NodeKind.Cve,
            e_score=round(rng.uniform(0, 10), 3),
            i_score=round(rng.uniform(0, 10), 3),
        )
    for w in cwes:
        nodes[w] = GraphNode(w, NodeKind.Cwe, i_score=round(rng.uniform(0, 10), 3))

    edges = [
        GraphEdge(ATTACKER_ID, c, EdgeKind.AttackerToCve, round(rng.uniform(0.1, 1), 3))
        for c in cves
    ]
    for i, j in itertools.combinations(range(n_cves), 2):
        if rng.random() < edge_prob:
            edges.append(GraphEdge(
                order[i], order[j], EdgeKind.CveToCve, round(rng.uniform(0.1, 1), 3)
            ))
    linked = False
    for c in cves:
        for w in cwes:
            if rng.random() < edge_prob:
                edges.append(GraphEdge(
                    c, w, EdgeKind.CveToCwe, round(rng.uniform(0.1, 1), 3)
                ))
                linked = True
    if not linked:
        edges.append(GraphEdge(order[-1], cwes[0], EdgeKind.CveToCwe, 0.7))
    return AttackGraph("random", nodes, edges, threshold=0.8)


def paper_scale_graph(seed: int = 2022, layers: int = 8, per_layer: int = 10,
                      n_cwes: int = 19, p_next: float = 0.3,
                      p_skip: float = 0.05) -> AttackGraph:
    """Deterministic 100-node graph (80 CVEs, 19 CWEs, 1 attacker).

    CVEs sit in layers with forward edges only, so the graph is a DAG by
    construction while still producing tens of thousands of paths at
    cutoff 8.
    """
    rng = random.Random(seed)
    cves = [f"CVE-2022-{10000 + i}" for i in range(layers * per_layer)]
    cwes = [f"CWE-{100 + i}" for i in range(n_cwes)]
    nodes = {ATTACKER_ID: GraphNode(ATTACKER_ID, NodeKind.Attacker)}
    for c in cves:
        nodes[c] = GraphNode(
            c, NodeKind.Cve,
            e_score=round(rng.uniform(0.5, 9.9), 2),
            i_score=round(rng.uniform(0.5, 9.9), 2),
        )
    for w in cwes:
        nodes[w] = GraphNode(w, NodeKind.Cwe)

    edges = [
        GraphEdge(ATTACKER_ID, c, EdgeKind.AttackerToCve, round(rng.uniform(0.3, 1), 3))
        for c in cves
    ]
    layer_of = {c: i // per_layer for i, c in enumerate(cves)}
    for a in cves:
        for b in cves:
            gap = layer_of[b] - layer_of[a]
            if gap == 1 and rng.random() < p_next:
                edges.append(GraphEdge(a, b, EdgeKind.CveToCve, round(rng.uniform(0.8, 1), 3)))
            elif gap == 2 and rng.random() < p_skip:
                edges.append(GraphEdge(a, b, EdgeKind.CveToCve, round(rng.uniform(0.8, 1), 3)))
    for i, c in enumerate(cves):
        edges.append(GraphEdge(c, cwes[i % n_cwes], EdgeKind.CveToCwe, round(rng.uniform(0.3, 1), 3)))
        if rng.random() < 0.3:
            edges.append(GraphEdge(c, cwes[(i + 7) % n_cwes], EdgeKind.CveToCwe,
                                   round(rng.uniform(0.3, 1), 3)))
    return AttackGraph("paper-scale", nodes, edges, 0.8)


# --- oracles ----------------------------------------------------------------

def edge_exploitability_oracle(graph: AttackGraph, exploit_of: dict[str, float],
                               upstream_factor: float) -> dict[tuple[str, str], float]:
    """Brute force: sum damped source scores over every edge-chain ending at the edge."""
    result = {}
    for key in graph.edges:
        total = 0.0
        stack = [(key, 0)]
        while stack:
            (src, _dst), depth = stack.pop()
            total += (upstream_factor ** depth) * exploit_of[src]
            for in_edge in graph.in_edges(src):
                stack.append((in_edge.key(), depth + 1))
        result[key] = total
    return result


def edge_impact_oracle(graph: AttackGraph, impact_of: dict[str, float],
                       downstream_factor: float) -> dict[tuple[str, str], float]:
    """Brute force: sum damped sink scores over every edge-chain starting at the edge."""
    result = {}
    for key in graph.edges:
        total = 0.0
        stack = [(key, 0)]
        while stack:
            (_src, dst), depth = stack.pop()
            total += (downstream_factor ** depth) * impact_of[dst]
            for out_edge in graph.out_edges(dst):
                stack.append((out_edge.key(), depth + 1))
        result[key] = total
    return result


def all_paths_oracle(graph: AttackGraph, cutoff: int | None = None) -> set[tuple[str, ...]]:
    """Recursive exhaustive attacker-to-target simple-path enumeration."""
    limit = cutoff if cutoff is not None else len(graph.nodes)
    targets = set(graph.cwe_ids())
    found: set[tuple[str, ...]] = set()

    def go(node: str, path: list[str]):
        for edge in graph.out_edges(node):
            nxt = edge.dst
            if nxt in path:
                continue
            extended = path + [nxt]
            if len(extended) - 1 > limit:
                continue
            if nxt in targets:
                found.add(tuple(extended))
            else:
                go(nxt, extended)

    go(ATTACKER_ID, [ATTACKER_ID])
    return found


def shortest_paths_oracle(graph: AttackGraph, exploit_of: dict[str, float]
                          ) -> tuple[Fraction, set[tuple[str, ...]]]:
    """Exact minimum path weight and the argmin set, by full enumeration."""
    paths = all_paths_oracle(graph, None)
    if not paths:
        raise AssertionError("oracle found no paths")
    max_exploit = Fraction(max(exploit_of.values()))

    def weight(path: tuple[str, ...]) -> Fraction:
        return sum(
            (max_exploit - Fraction(exploit_of[src]) for src in path[:-1]),
            Fraction(0),
        )

    best = min(weight(p) for p in paths)
    return best, {p for p in paths if weight(p) == best}


def min_cover_oracle(graph: AttackGraph) -> set[str]:
    """Exhaustive minimum cover over CVE nodes only."""
    cves = graph.cve_ids()
    forced = {
        key[0] for key, e in graph.edges.items() if e.kind is EdgeKind.CveToCwe
    }
    pair_edges = [
        key for key, e in graph.edges.items() if e.kind is EdgeKind.CveToCve
    ]
    free = [c for c in cves if c not in forced]
    for extra in range(len(free) + 1):
        for combo in itertools.combinations(free, extra):
            candidate = forced | set(combo)
            if all(u in candidate or v in candidate for u, v in pair_edges):
                return candidate
    return set(cves)
