"""Attack-graph value types.

Graphs are treated as immutable values: construction validates the
structural invariants (single attacker source, CWE sinks without
out-edges, endpoint/kind consistency) and every mutation in the edits
module returns a fresh value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..errors import CyclicGraph, IllegalEdge
from ..extraction.attributes import NodeAttributes

ATTACKER_ID = "ATTACKER"


class NodeKind(enum.Enum):
    Attacker = "Attacker"
    Cve = "Cve"
    Cwe = "Cwe"


class EdgeKind(enum.Enum):
    AttackerToCve = "AttackerToCve"
    CveToCve = "CveToCve"
    CveToCwe = "CveToCwe"


class Layer(enum.Enum):
    Network = "Network"
    SystemHardware = "SystemHardware"
    MachineLearning = "MachineLearning"
    Crypto = "Crypto"


#: Display marker for nodes no layer rule claims (cumulative graph only).
UNCLASSIFIED = "Unclassified"

_EDGE_KIND_FOR = {
    (NodeKind.Attacker, NodeKind.Cve): EdgeKind.AttackerToCve,
    (NodeKind.Cve, NodeKind.Cve): EdgeKind.CveToCve,
    (NodeKind.Cve, NodeKind.Cwe): EdgeKind.CveToCwe,
}


def edge_kind_for(src_kind: NodeKind, dst_kind: NodeKind) -> EdgeKind:
    kind = _EDGE_KIND_FOR.get((src_kind, dst_kind))
    if kind is None:
        raise IllegalEdge(f"no legal edge from {src_kind.value} to {dst_kind.value}")
    return kind


@dataclass(frozen=True)
class GraphNode:
    node_id: str
    kind: NodeKind
    e_score: float = 0.0
    i_score: float = 0.0
    attributes: NodeAttributes | None = None
    layers: frozenset[Layer] = frozenset()
    overridden: frozenset[str] = frozenset()  # subset of {"e_score", "i_score"}

    def __post_init__(self):
        for name in ("e_score", "i_score"):
            value = getattr(self, name)
            if not 0.0 <= value <= 10.0:
                raise ValueError(f"{self.node_id}: {name} {value} outside [0, 10]")


@dataclass(frozen=True, eq=True)
class GraphEdge:
    src: str
    dst: str
    kind: EdgeKind
    weight: float
    provenance: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise IllegalEdge(f"edge {self.src}->{self.dst}: weight {self.weight} outside [0, 1]")

    def key(self) -> tuple[str, str]:
        return (self.src, self.dst)


class AttackGraph:
    """Weighted DAG of attacker / CVE / CWE nodes.

    Equality compares the graph value (id, nodes, edges, threshold) and
    deliberately ignores the version counter and the cycle-removal log.
    """

    def __init__(self, graph_id: str, nodes: dict[str, GraphNode],
                 edges: list[GraphEdge], threshold: float,
                 version: int = 1, cycle_removals: tuple = ()):
        self.graph_id = graph_id
        self.nodes = dict(nodes)
        self.threshold = float(threshold)
        self.version = int(version)
        self.cycle_removals = tuple(cycle_removals)  # (src, dst, weight) triples

        self.edges: dict[tuple[str, str], GraphEdge] = {}
        for edge in sorted(edges, key=lambda e: e.key()):
            if edge.key() in self.edges:
                raise IllegalEdge(f"duplicate edge {edge.src}->{edge.dst}")
            self.edges[edge.key()] = edge
        self._out: dict[str, list[GraphEdge]] = {n: [] for n in self.nodes}
        self._in: dict[str, list[GraphEdge]] = {n: [] for n in self.nodes}
        self._validate()

    def _validate(self):
        attackers = [n for n in self.nodes.values() if n.kind is NodeKind.Attacker]
        if len(attackers) != 1 or attackers[0].node_id != ATTACKER_ID:
            raise IllegalEdge(f"graph must contain exactly one {ATTACKER_ID!r} node")
        for edge in self.edges.values():
            for end in (edge.src, edge.dst):
                if end not in self.nodes:
                    raise IllegalEdge(f"edge references unknown node {end!r}")
            expected = edge_kind_for(self.nodes[edge.src].kind, self.nodes[edge.dst].kind)
            if edge.kind is not expected:
                raise IllegalEdge(
                    f"edge {edge.src}->{edge.dst} marked {edge.kind.value}, "
                    f"endpoints imply {expected.value}"
                )
            self._out[edge.src].append(edge)
            self._in[edge.dst].append(edge)

    # --- queries ---------------------------------------------------------

    def out_edges(self, node_id: str) -> list[GraphEdge]:
        return self._out[node_id]

    def in_edges(self, node_id: str) -> list[GraphEdge]:
        return self._in[node_id]

    def node_ids(self, kind: NodeKind | None = None) -> list[str]:
        if kind is None:
            return sorted(self.nodes)
        return sorted(n for n, node in self.nodes.items() if node.kind is kind)

    def cve_ids(self) -> list[str]:
        return self.node_ids(NodeKind.Cve)

    def cwe_ids(self) -> list[str]:
        return self.node_ids(NodeKind.Cwe)

    @property
    def attacker(self) -> GraphNode:
        return self.nodes[ATTACKER_ID]

    def topological_order(self) -> list[str]:
        """Kahn order, smallest node id first among ready nodes."""
        import heapq

        indegree = {n: len(self._in[n]) for n in self.nodes}
        ready = [n for n, d in indegree.items() if d == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            node = heapq.heappop(ready)
            order.append(node)
            for edge in self._out[node]:
                indegree[edge.dst] -= 1
                if indegree[edge.dst] == 0:
                    heapq.heappush(ready, edge.dst)
        if len(order) != len(self.nodes):
            raise CyclicGraph("graph contains a directed cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
            return True
        except CyclicGraph:
            return False

    # --- value semantics ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, AttackGraph):
            return NotImplemented
        return (
            self.graph_id == other.graph_id
            and self.threshold == other.threshold
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"AttackGraph({self.graph_id!r} v{self.version}: "
            f"{len(self.nodes)} nodes, {len(self.edges)} edges)"
        )
