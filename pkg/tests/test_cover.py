import random

import pytest

from helpers import min_cover_oracle, random_attack_graph
from postural.graph import ATTACKER_ID, AttackGraph, EdgeKind, GraphEdge, GraphNode, NodeKind
from postural.risk import covers_all_eligible_edges, key_vulnerabilities, vertex_cover


def cve(i, **kw):
    return GraphNode(f"CVE-2020-{1000 + i}", NodeKind.Cve, **kw)


def graph_from(cve_edges=(), cwe_edges=(), n_cves=3):
    nodes = {ATTACKER_ID: GraphNode(ATTACKER_ID, NodeKind.Attacker)}
    for i in range(n_cves):
        nodes[f"CVE-2020-{1000 + i}"] = cve(i)
    edges = [
        GraphEdge(ATTACKER_ID, f"CVE-2020-{1000 + i}", EdgeKind.AttackerToCve, 0.5)
        for i in range(n_cves)
    ]
    for a, b in cve_edges:
        edges.append(GraphEdge(
            f"CVE-2020-{1000 + a}", f"CVE-2020-{1000 + b}", EdgeKind.CveToCve, 0.9
        ))
    for a, w in cwe_edges:
        wid = f"CWE-{w}"
        if wid not in nodes:
            nodes[wid] = GraphNode(wid, NodeKind.Cwe)
        edges.append(GraphEdge(f"CVE-2020-{1000 + a}", wid, EdgeKind.CveToCwe, 0.5))
    return AttackGraph("cover", nodes, edges, 0.8)


class TestKeyVulnerabilities:
    def test_chain_degrees_and_tie_break(self, chain_graph):
        ranked = key_vulnerabilities(chain_graph, top_n=3)
        assert ranked == [("CVE-2020-0001", 2), ("CVE-2020-0002", 2)]

    def test_hub_ranks_first(self):
        # five CVEs all feed a hub, which exits to a CWE
        graph = graph_from(
            cve_edges=[(i, 5) for i in range(5)],
            cwe_edges=[(5, 79)],
            n_cves=6,
        )
        ranked = key_vulnerabilities(graph, top_n=1)
        # hub: 5 in + 1 out + 1 attacker edge = 7
        assert ranked == [("CVE-2020-1005", 7)]

    def test_no_cves_gives_empty(self):
        nodes = {ATTACKER_ID: GraphNode(ATTACKER_ID, NodeKind.Attacker)}
        graph = AttackGraph("empty", nodes, [], 0.8)
        assert key_vulnerabilities(graph) == []

    def test_top_n_limits(self, chain_graph):
        assert len(key_vulnerabilities(chain_graph, top_n=1)) == 1


class TestVertexCover:
    def test_chain_fixture_single_element(self, chain_graph):
        cover = vertex_cover(chain_graph)
        assert cover == {"CVE-2020-0002"}
        assert covers_all_eligible_edges(chain_graph, cover)

    def test_cve_path_bounded_by_twice_optimum(self):
        graph = graph_from(cve_edges=[(0, 1), (1, 2)])
        cover = vertex_cover(graph)
        assert covers_all_eligible_edges(graph, cover)
        assert len(cover) <= 2 * len(min_cover_oracle(graph))  # optimum is {B}

    def test_attacker_star_without_cwe_links_is_empty(self):
        graph = graph_from()
        assert vertex_cover(graph) == set()

    def test_only_cve_nodes_ever_in_cover(self):
        rng = random.Random(3)
        for _ in range(20):
            graph = random_attack_graph(rng)
            cover = vertex_cover(graph)
            for member in cover:
                assert graph.nodes[member].kind is NodeKind.Cve

    def test_random_graphs_covered_within_bound(self):
        rng = random.Random(17)
        for _ in range(40):
            graph = random_attack_graph(rng, max_cves=6)
            cover = vertex_cover(graph)
            assert covers_all_eligible_edges(graph, cover)
            optimum = min_cover_oracle(graph)
            assert len(cover) <= 2 * max(1, len(optimum))

    def test_deterministic(self):
        rng = random.Random(23)
        graph = random_attack_graph(rng)
        assert vertex_cover(graph) == vertex_cover(graph)
