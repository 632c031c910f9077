from .build import break_cycles, build_graph, similarity_edges
from .edits import (
    AddCveNode,
    AddEdge,
    GraphEdit,
    RemoveEdge,
    RemoveNode,
    SetScore,
    SetWeight,
    apply_edit,
    apply_edit_resolved,
    replay_edit,
)
from .layers import LayerRules, classify_layers, default_layer_rules, load_layer_rules, tag_layers
from .model import (
    ATTACKER_ID,
    UNCLASSIFIED,
    AttackGraph,
    EdgeKind,
    GraphEdge,
    GraphNode,
    Layer,
    NodeKind,
)
from .partition import partition
from .serialize import GRAPH_SCHEMA, dump_graph, graph_to_payload, load_graph, payload_to_graph

__all__ = [
    "ATTACKER_ID",
    "AddCveNode",
    "AddEdge",
    "AttackGraph",
    "EdgeKind",
    "GRAPH_SCHEMA",
    "GraphEdge",
    "GraphEdit",
    "GraphNode",
    "Layer",
    "LayerRules",
    "NodeKind",
    "RemoveEdge",
    "RemoveNode",
    "SetScore",
    "SetWeight",
    "UNCLASSIFIED",
    "apply_edit",
    "apply_edit_resolved",
    "break_cycles",
    "build_graph",
    "classify_layers",
    "default_layer_rules",
    "dump_graph",
    "graph_to_payload",
    "load_graph",
    "load_layer_rules",
    "partition",
    "payload_to_graph",
    "replay_edit",
    "similarity_edges",
    "tag_layers",
]
