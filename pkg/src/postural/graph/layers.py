"""Layer classification rules (keywords, protocols, CWE ids).

Four rule files ship with the package (``layer-rules-v1``); all are
plain data a deployment can edit or extend.  A node belongs to a layer
when its description contains any keyword/protocol as a whole
word/phrase (case-insensitive) or any of its CWE ids is listed for the
layer.  Nodes matching nothing stay unclassified.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .model import AttackGraph, GraphNode, Layer, NodeKind

LAYER_RULES_SCHEMA = "layer-rules-v1"

_SHIPPED_FILES = {
    Layer.Network: "network.json",
    Layer.SystemHardware: "system_hardware.json",
    Layer.MachineLearning: "machine_learning.json",
    Layer.Crypto: "crypto.json",
}


@dataclass(frozen=True)
class LayerRules:
    layer: Layer
    keywords: frozenset[str]
    protocols: frozenset[str]
    cwe_ids: frozenset[int]

    def __post_init__(self):
        for name in ("keywords", "protocols"):
            bad = [p for p in getattr(self, name) if p != p.lower()]
            if bad:
                raise ValueError(f"{self.layer.value}: {name} must be lowercase: {bad}")


def _rules_from_doc(doc: dict, source: str) -> LayerRules:
    if doc.get("schema") != LAYER_RULES_SCHEMA:
        raise ValueError(f"{source}: expected schema {LAYER_RULES_SCHEMA!r}")
    return LayerRules(
        layer=Layer[doc["layer"]],
        keywords=frozenset(doc["keywords"]),
        protocols=frozenset(doc["protocols"]),
        cwe_ids=frozenset(int(c) for c in doc["cwe_ids"]),
    )


def load_layer_rules(path: str | Path) -> LayerRules:
    path = Path(path)
    return _rules_from_doc(json.loads(path.read_text("utf-8")), str(path))


@lru_cache(maxsize=1)
def default_layer_rules() -> tuple[LayerRules, ...]:
    rules = []
    for layer, name in _SHIPPED_FILES.items():
        raw = resources.files("postural.data.layers").joinpath(name).read_text("utf-8")
        rules.append(_rules_from_doc(json.loads(raw), name))
    return tuple(rules)


@lru_cache(maxsize=32)
def _phrase_regex(phrases: frozenset[str]) -> re.Pattern | None:
    if not phrases:
        return None
    ordered = sorted(phrases, key=lambda p: (-len(p), p))
    body = "|".join(re.escape(p).replace(r"\ ", r"\s+") for p in ordered)
    return re.compile(rf"\b(?:{body})\b", re.IGNORECASE)


def classify_layers(node: GraphNode, description: str,
                    rules: tuple[LayerRules, ...] | list[LayerRules],
                    cwe_ids: tuple[int, ...] = ()) -> set[Layer]:
    """Layers claiming the node; empty set means unclassified.

    ``cwe_ids`` carries a CVE record's weakness links; CWE nodes match on
    their own identifier.
    """
    ids = set(cwe_ids)
    if node.kind is NodeKind.Cwe and node.node_id.startswith("CWE-"):
        ids.add(int(node.node_id.split("-", 1)[1]))

    result: set[Layer] = set()
    for rule in rules:
        if ids & rule.cwe_ids:
            result.add(rule.layer)
            continue
        pattern = _phrase_regex(rule.keywords | rule.protocols)
        if pattern and description and pattern.search(description):
            result.add(rule.layer)
    return result


def tag_layers(graph: AttackGraph,
               cve_info: dict[str, tuple[str, tuple[int, ...]]],
               rules: tuple[LayerRules, ...] | None = None) -> AttackGraph:
    """New graph with layer tags on CVE and CWE nodes.

    ``cve_info`` maps CVE id -> (description, cwe ids).
    """
    rules = rules or default_layer_rules()
    nodes = {}
    for node_id, node in graph.nodes.items():
        if node.kind is NodeKind.Cve and node_id in cve_info:
            description, cwe_ids = cve_info[node_id]
            layers = classify_layers(node, description, rules, cwe_ids)
        elif node.kind is NodeKind.Cwe:
            layers = classify_layers(node, "", rules)
        else:
            layers = set()
        nodes[node_id] = replace(node, layers=frozenset(layers))
    return AttackGraph(
        graph_id=graph.graph_id, nodes=nodes, edges=list(graph.edges.values()),
        threshold=graph.threshold, version=graph.version,
        cycle_removals=graph.cycle_removals,
    )
