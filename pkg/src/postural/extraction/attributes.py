"""Assembly of extracted entities into the four attack-node ports.

The label-to-port mapping is fixed: affected products are preconditions,
the vulnerability type is the postcondition, attacker type and root
cause are inputs, impact and attack vector are outputs.  Empty ports are
filled from record metadata (and flagged) so downstream matching always
has something to work with.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog import cwe_name
from ..ingest.records import CveRecord
from ..text import normalize_phrase
from .entities import EntityLabel, EntitySpan

# Port per label; for inputs/outputs the listing order below also fixes
# the phrase order inside the port.
PORT_OF_LABEL: dict[EntityLabel, str] = {
    EntityLabel.AffectedProduct: "preconditions",
    EntityLabel.VulnerabilityType: "postconditions",
    EntityLabel.AttackerType: "inputs",
    EntityLabel.RootCause: "inputs",
    EntityLabel.Impact: "outputs",
    EntityLabel.AttackVector: "outputs",
}

_LABEL_ORDER = (
    EntityLabel.AffectedProduct,
    EntityLabel.VulnerabilityType,
    EntityLabel.AttackerType,
    EntityLabel.RootCause,
    EntityLabel.Impact,
    EntityLabel.AttackVector,
)


@dataclass(frozen=True)
class NodeAttributes:
    preconditions: tuple[str, ...]
    postconditions: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    fallback_ports: frozenset[str] = frozenset()

    def port(self, name: str) -> tuple[str, ...]:
        return getattr(self, name)

    def to_dict(self) -> dict:
        return {
            "preconditions": list(self.preconditions),
            "postconditions": list(self.postconditions),
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "fallback_ports": sorted(self.fallback_ports),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NodeAttributes":
        return cls(
            preconditions=tuple(d["preconditions"]),
            postconditions=tuple(d["postconditions"]),
            inputs=tuple(d["inputs"]),
            outputs=tuple(d["outputs"]),
            fallback_ports=frozenset(d.get("fallback_ports", ())),
        )


def _dedupe(phrases: list[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(p for p in phrases if p))


def assemble_attributes(record: CveRecord, spans: list[EntitySpan],
                        cwe_catalog: dict[int, str] | None = None) -> NodeAttributes:
    """Fill the four ports from spans, with flagged fallbacks for empty ones."""
    ports: dict[str, list[str]] = {
        "preconditions": [], "postconditions": [], "inputs": [], "outputs": []
    }
    for label in _LABEL_ORDER:
        for span in sorted((s for s in spans if s.label is label), key=lambda s: s.start):
            ports[PORT_OF_LABEL[label]].append(normalize_phrase(span.text))

    fallbacks: set[str] = set()
    filled = {name: _dedupe(values) for name, values in ports.items()}

    if not filled["preconditions"]:
        fallbacks.add("preconditions")
        products = _dedupe([normalize_phrase(p) for _, p, _ in record.products])
        filled["preconditions"] = products or ("vulnerable system",)
    if not filled["postconditions"]:
        fallbacks.add("postconditions")
        names = _dedupe([normalize_phrase(cwe_name(c, cwe_catalog)) for c in record.cwe_ids])
        filled["postconditions"] = names or ("weakness",)
    if not filled["inputs"]:
        fallbacks.add("inputs")
        filled["inputs"] = ("attacker",)
    if not filled["outputs"]:
        fallbacks.add("outputs")
        filled["outputs"] = ("compromise",)

    return NodeAttributes(
        preconditions=filled["preconditions"],
        postconditions=filled["postconditions"],
        inputs=filled["inputs"],
        outputs=filled["outputs"],
        fallback_ports=frozenset(fallbacks),
    )
