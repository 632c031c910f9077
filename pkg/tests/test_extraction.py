import hashlib
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from postural.errors import MalformedAnnotations, SpanOutOfBounds
from postural.extraction import (
    EntityLabel,
    EntitySpan,
    PORT_OF_LABEL,
    assemble_attributes,
    extract_entities,
    import_annotations,
)
from postural.ingest import CveRecord

LIBSASS = (
    "There is a heap-based buffer over-read in lexer.hpp of LibSass 3.4.5. "
    "A crafted input will lead to a remote denial of service attack."
)
ECCUBE = (
    "Improper restriction of rendered UI layers or frames in EC-CUBE versions "
    "from 3.0.0 to 3.0.18 leads to clickjacking attacks. If a user accesses a "
    "specially crafted page while logged into the administrative page, "
    "unintended operations may be performed."
)


def spans_by_label(spans):
    grouped = {}
    for s in spans:
        grouped.setdefault(s.label, []).append(s.text)
    return grouped


class TestExtractEntities:
    def test_buffer_over_read_description(self):
        grouped = spans_by_label(extract_entities(LIBSASS))
        assert "heap-based buffer over-read" in grouped[EntityLabel.VulnerabilityType]
        assert "denial of service" in grouped[EntityLabel.Impact]
        assert EntityLabel.AttackerType not in grouped

    def test_clickjacking_description(self):
        grouped = spans_by_label(extract_entities(ECCUBE))
        products = grouped[EntityLabel.AffectedProduct]
        assert products == ["EC-CUBE versions from 3.0.0 to 3.0.18"]
        assert any(
            t.lower().startswith("improper restriction of rendered ui layers")
            for t in grouped[EntityLabel.VulnerabilityType]
        )

    def test_no_rule_matches(self):
        assert extract_entities("foo bar baz") == []

    def test_empty_description_rejected(self):
        with pytest.raises(ValueError):
            extract_entities("   ")

    def test_vector_and_cause_clauses(self):
        text = ("Remote attackers can crash the daemon via a crafted packet "
                "because of unchecked lengths.")
        grouped = spans_by_label(extract_entities(text))
        assert grouped[EntityLabel.AttackVector] == ["a crafted packet"]
        assert grouped[EntityLabel.RootCause] == ["unchecked lengths"]
        assert grouped[EntityLabel.AttackerType] == ["Remote attackers"]

    def test_spans_match_slices_and_never_overlap(self):
        for text in (LIBSASS, ECCUBE):
            spans = extract_entities(text)
            for s in spans:
                assert text[s.start:s.end] == s.text
            ordered = sorted(spans, key=lambda s: s.start)
            for a, b in zip(ordered, ordered[1:]):
                assert a.end <= b.start

    def test_deterministic(self):
        assert extract_entities(LIBSASS) == extract_entities(LIBSASS)


def make_record(**kw):
    defaults = dict(id="CVE-2020-5679", description=ECCUBE, cwe_ids=(1021,))
    defaults.update(kw)
    return CveRecord(**defaults)


class TestAssembleAttributes:
    def test_fixed_mapping_applied(self):
        record = make_record()
        spans = [
            EntitySpan(EntityLabel.AffectedProduct,
                       "EC-CUBE versions from 3.0.0 to 3.0.18", 55, 92),
            EntitySpan(EntityLabel.VulnerabilityType,
                       "Improper restriction of rendered UI layers", 0, 43),
        ]
        attrs = assemble_attributes(record, spans)
        assert attrs.preconditions == ("ec-cube versions from 3.0.0 to 3.0.18",)
        assert attrs.postconditions == ("improper restriction of rendered ui layers",)
        assert attrs.fallback_ports == frozenset({"inputs", "outputs"})

    def test_fallbacks_for_empty_ports(self):
        record = CveRecord(
            id="CVE-2021-0001",
            description="nothing matches here",
            cwe_ids=(79,),
            products=(("tp-link", "archer", "1.0"),),
        )
        attrs = assemble_attributes(record, [])
        assert attrs.preconditions == ("archer",)
        assert attrs.postconditions == (
            "improper neutralization of input during web page generation",
        )
        assert attrs.inputs == ("attacker",)
        assert attrs.outputs == ("compromise",)
        assert attrs.fallback_ports == frozenset(
            {"preconditions", "postconditions", "inputs", "outputs"}
        )

    def test_attacker_type_ordered_before_root_cause(self):
        record = make_record(description="Remote attackers crash things because of bad luck.")
        text = record.description
        spans = [
            EntitySpan(EntityLabel.RootCause, "bad luck",
                       text.index("bad luck"), text.index("bad luck") + 8),
            EntitySpan(EntityLabel.AttackerType, "Remote attackers", 0, 16),
        ]
        attrs = assemble_attributes(record, spans)
        assert attrs.inputs == ("remote attackers", "bad luck")

    def test_all_ports_always_non_empty(self, fixture_records):
        for record in fixture_records:
            attrs = assemble_attributes(record, extract_entities(record.description))
            for port in ("preconditions", "postconditions", "inputs", "outputs"):
                assert attrs.port(port), (record.id, port)

    @given(st.sampled_from(list(EntityLabel)))
    def test_label_port_mapping_total_and_fixed(self, label):
        expected = {
            EntityLabel.AffectedProduct: "preconditions",
            EntityLabel.VulnerabilityType: "postconditions",
            EntityLabel.AttackerType: "inputs",
            EntityLabel.RootCause: "inputs",
            EntityLabel.Impact: "outputs",
            EntityLabel.AttackVector: "outputs",
        }
        assert PORT_OF_LABEL[label] == expected[label]


def annotation_doc(entries):
    return json.dumps({"schema": "annotations-v1", "entries": entries}).encode()


class TestImportAnnotations:
    description = "A heap overflow in FooServer 1.2 allows remote attackers to crash it."

    def entry(self, spans, **kw):
        base = {
            "cve_id": "CVE-2022-0001",
            "description": self.description,
            "description_sha256": hashlib.sha256(self.description.encode()).hexdigest(),
            "spans": spans,
        }
        base.update(kw)
        return base

    def test_valid_file(self):
        doc = annotation_doc([self.entry([
            {"label": "AttackerType", "start": 40, "end": 56},
        ])])
        result = import_annotations(doc)
        assert set(result) == {"CVE-2022-0001"}
        (span,) = result["CVE-2022-0001"]
        assert span.text == "remote attackers"
        assert span.label is EntityLabel.AttackerType

    def test_span_past_end(self):
        doc = annotation_doc([self.entry([
            {"label": "Impact", "start": 10, "end": 10_000},
        ])])
        with pytest.raises(SpanOutOfBounds) as info:
            import_annotations(doc)
        assert info.value.cve_id == "CVE-2022-0001"

    def test_overlapping_spans(self):
        doc = annotation_doc([self.entry([
            {"label": "Impact", "start": 0, "end": 10},
            {"label": "RootCause", "start": 5, "end": 15},
        ])])
        with pytest.raises(MalformedAnnotations):
            import_annotations(doc)

    def test_hash_mismatch(self):
        doc = annotation_doc([self.entry([], description_sha256="0" * 64)])
        with pytest.raises(MalformedAnnotations):
            import_annotations(doc)

    def test_unknown_label(self):
        doc = annotation_doc([self.entry([{"label": "Nope", "start": 0, "end": 3}])])
        with pytest.raises(MalformedAnnotations):
            import_annotations(doc)

    def test_bad_schema(self):
        with pytest.raises(MalformedAnnotations):
            import_annotations(b'{"schema": "annotations-v2", "entries": []}')
