"""End-to-end analysis: records + topology + model -> graphs + analytics.

This is the one composition both the CLI ``analyze`` command and the
HTTP ``POST /v1/analyses`` endpoint call, which is what makes their
outputs byte-identical for identical inputs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import EmptyInput, NoPath, EmptyGraph
from .extraction.attributes import assemble_attributes
from .extraction.entities import EntitySpan, extract_entities
from .graph.build import build_graph
from .graph.layers import LayerRules, tag_layers
from .graph.model import AttackGraph, Layer
from .graph.partition import partition
from .ingest.inventory import match_inventory
from .ingest.records import CveRecord, Topology
from .risk.analytics import GraphAnalytics, analyze
from .risk.scores import Constants, ScoreFunctions
from .semantics.embeddings import EmbeddingModel

LAYER_ALIASES = {
    "network": Layer.Network,
    "systemhardware": Layer.SystemHardware,
    "system_hardware": Layer.SystemHardware,
    "system-hardware": Layer.SystemHardware,
    "machinelearning": Layer.MachineLearning,
    "machine_learning": Layer.MachineLearning,
    "machine-learning": Layer.MachineLearning,
    "ml": Layer.MachineLearning,
    "crypto": Layer.Crypto,
    "cryptography": Layer.Crypto,
}


def parse_layer(name: str) -> Layer:
    layer = LAYER_ALIASES.get(name.replace(" ", "").lower())
    if layer is None:
        raise ValueError(f"unknown layer {name!r}")
    return layer


@dataclass
class LayerResult:
    graph: AttackGraph
    analytics: GraphAnalytics | None
    skipped_reason: str | None = None


@dataclass
class AnalysisResult:
    graph: AttackGraph
    analytics: GraphAnalytics
    layers: dict[Layer, LayerResult]
    matches: dict[str, list[str]]
    criticality: dict[str, float]
    constants: Constants


def derive_graph_id(cve_ids: list[str], threshold: float, device_ids: list[str]) -> str:
    seed = json.dumps(
        {"cves": sorted(cve_ids), "threshold": threshold, "devices": sorted(device_ids)},
        sort_keys=True,
    )
    return "g" + hashlib.sha256(seed.encode("utf-8")).hexdigest()[:12]


def run_analysis(records: list[CveRecord], topology: Topology, model: EmbeddingModel,
                 threshold: float = 0.8, consts: Constants | None = None,
                 layers: list[Layer] | None = None, graph_id: str | None = None,
                 rules: tuple[LayerRules, ...] | None = None,
                 annotations: dict[str, list[EntitySpan]] | None = None) -> AnalysisResult:
    """Match, extract, build, classify, score.

    Raises EmptyInput when no record matches the inventory.  Layers with
    nothing analyzable come back with their (near-empty) subgraph and a
    skip reason instead of analytics.
    """
    consts = consts or Constants()
    annotations = annotations or {}

    matches = match_inventory(records, topology)
    matched_ids = sorted({cve for ids in matches.values() for cve in ids})
    if not matched_ids:
        raise EmptyInput("no CVE record matches the topology inventory")
    selected = sorted(
        (r for r in records if r.id in set(matched_ids)), key=lambda r: r.id
    )

    criticality: dict[str, float] = {}
    for item in topology.items:
        for cve in matches[item.device_id]:
            criticality[cve] = max(criticality.get(cve, 0.0), item.criticality)

    pairs = []
    for record in selected:
        spans = annotations.get(record.id)
        if spans is None:
            spans = extract_entities(record.description)
        pairs.append((record, assemble_attributes(record, spans)))

    if graph_id is None:
        graph_id = derive_graph_id(
            matched_ids, threshold, [i.device_id for i in topology.items]
        )
    graph = build_graph(pairs, model, threshold, graph_id=graph_id)
    graph = tag_layers(
        graph,
        {r.id: (r.description, r.cwe_ids) for r in selected},
        rules,
    )

    fns = ScoreFunctions.default(criticality)
    analytics = analyze(graph, fns, consts)

    layer_results: dict[Layer, LayerResult] = {}
    for layer in (layers if layers is not None else list(Layer)):
        subgraph = partition(graph, layer)
        try:
            layer_results[layer] = LayerResult(subgraph, analyze(subgraph, fns, consts))
        except (EmptyGraph, NoPath) as exc:
            layer_results[layer] = LayerResult(subgraph, None, skipped_reason=str(exc))

    return AnalysisResult(
        graph=graph,
        analytics=analytics,
        layers=layer_results,
        matches=matches,
        criticality=criticality,
        constants=consts,
    )
