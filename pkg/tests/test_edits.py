import pytest

from helpers import toy_model
from postural.errors import (
    DuplicateNode,
    IllegalEdge,
    ModelRequired,
    UnknownNode,
    WouldOrphanAttacker,
)
from postural.extraction import NodeAttributes
from postural.graph import (
    ATTACKER_ID,
    AddCveNode,
    AddEdge,
    RemoveEdge,
    RemoveNode,
    SetScore,
    SetWeight,
    apply_edit,
    apply_edit_resolved,
    replay_edit,
)
from postural.graph.edits import parse_edit
from postural.ingest import CveRecord

MODEL = toy_model({"dos": [1.0, 0.0], "leak": [0.0, 1.0]})


def new_record():
    return CveRecord(
        id="CVE-2020-0009",
        description="A new denial of service issue on the router.",
        cwe_ids=(400,),
        base_score=8.0, exploitability_score=2.0, impact_score=5.0,
    )


def new_attrs():
    return NodeAttributes(
        preconditions=("dos",), postconditions=("leak",),
        inputs=("attacker",), outputs=("compromise",),
    )


class TestApplyEdit:
    def test_set_score_flags_override(self, chain_graph):
        edited = apply_edit(chain_graph, SetScore("CVE-2020-0001", e_score=10.0))
        node = edited.nodes["CVE-2020-0001"]
        assert node.e_score == 10.0
        assert node.overridden == frozenset({"e_score"})
        assert edited.version == chain_graph.version + 1
        # input untouched
        assert chain_graph.nodes["CVE-2020-0001"].e_score == 3.9

    def test_set_weight_marks_user_provenance(self, chain_graph):
        edited = apply_edit(chain_graph, SetWeight("CVE-2020-0001", "CVE-2020-0002", 0.3))
        edge = edited.edges[("CVE-2020-0001", "CVE-2020-0002")]
        assert edge.weight == 0.3
        assert edge.provenance["user"] is True

    def test_remove_node_cascades_edges(self, chain_graph):
        edited = apply_edit(chain_graph, RemoveNode("CVE-2020-0002"))
        assert "CVE-2020-0002" not in edited.nodes
        assert ("CVE-2020-0001", "CVE-2020-0002") not in edited.edges
        # CWE-79 lost its only incident edge and goes too
        assert "CWE-79" not in edited.nodes

    def test_remove_attacker_refused(self, chain_graph):
        with pytest.raises(WouldOrphanAttacker):
            apply_edit(chain_graph, RemoveNode(ATTACKER_ID))

    def test_remove_unknown_node(self, chain_graph):
        with pytest.raises(UnknownNode):
            apply_edit(chain_graph, RemoveNode("CVE-1999-9999"))

    def test_add_edge_cwe_source_illegal(self, chain_graph):
        with pytest.raises(IllegalEdge):
            apply_edit(chain_graph, AddEdge("CWE-79", "CVE-2020-0001", 0.5))

    def test_add_edge_into_attacker_illegal(self, chain_graph):
        with pytest.raises(IllegalEdge):
            apply_edit(chain_graph, AddEdge("CVE-2020-0001", ATTACKER_ID, 0.5))

    def test_add_duplicate_edge(self, chain_graph):
        with pytest.raises(DuplicateNode):
            apply_edit(chain_graph, AddEdge("CVE-2020-0001", "CVE-2020-0002", 0.9))

    def test_add_edge_rebreaks_cycles(self, chain_graph):
        # back edge closes a 2-cycle; the lighter edge in the cycle loses
        edited = apply_edit(chain_graph, AddEdge("CVE-2020-0002", "CVE-2020-0001", 0.2))
        assert edited.is_acyclic()
        assert ("CVE-2020-0002", "CVE-2020-0001") not in edited.edges
        assert ("CVE-2020-0001", "CVE-2020-0002") in edited.edges
        assert ("CVE-2020-0002", "CVE-2020-0001", 0.2) in edited.cycle_removals

    def test_add_cve_node_requires_model(self, chain_graph):
        with pytest.raises(ModelRequired):
            apply_edit(chain_graph, AddCveNode(new_record(), new_attrs()))

    def test_add_cve_node_derives_build_rule_edges(self, chain_graph):
        edited = apply_edit(
            chain_graph, AddCveNode(new_record(), new_attrs()), model=MODEL
        )
        assert ("ATTACKER", "CVE-2020-0009") in edited.edges
        assert edited.edges[(ATTACKER_ID, "CVE-2020-0009")].weight == 0.8
        assert ("CVE-2020-0009", "CWE-400") in edited.edges
        assert "CWE-400" in edited.nodes
        assert edited.is_acyclic()

    def test_add_duplicate_node(self, chain_graph):
        record = new_record()
        grown = apply_edit(chain_graph, AddCveNode(record, new_attrs()), model=MODEL)
        with pytest.raises(DuplicateNode):
            apply_edit(grown, AddCveNode(record, new_attrs()), model=MODEL)

    def test_add_then_remove_restores_value(self, chain_graph):
        grown = apply_edit(chain_graph, AddCveNode(new_record(), new_attrs()), model=MODEL)
        restored = apply_edit(grown, RemoveNode("CVE-2020-0009"))
        assert restored == chain_graph  # value equality ignores version
        assert restored.version == chain_graph.version + 2

    def test_remove_node_never_grows_paths(self, chain_graph):
        from postural.risk import enumerate_paths

        before = len(enumerate_paths(chain_graph))
        edited = apply_edit(chain_graph, RemoveNode("CVE-2020-0002"))
        try:
            after = len(enumerate_paths(edited))
        except Exception:
            after = 0
        assert after <= before


class TestReplay:
    def test_every_edit_kind_replays_identically(self, chain_graph):
        edits = [
            AddCveNode(new_record(), new_attrs()),
            SetScore("CVE-2020-0001", e_score=9.0),
            SetWeight("CVE-2020-0001", "CVE-2020-0002", 0.4),
            AddEdge("CVE-2020-0009", "CVE-2020-0001", 0.9),
            RemoveEdge("CVE-2020-0002", "CWE-79"),
            RemoveNode("CVE-2020-0002"),
        ]
        applied = chain_graph
        resolved_log = []
        for edit in edits:
            applied, resolved = apply_edit_resolved(applied, edit, model=MODEL)
            resolved_log.append(resolved)

        replayed = chain_graph
        for resolved in resolved_log:
            replayed = replay_edit(replayed, resolved)
        assert replayed == applied
        assert replayed.version == applied.version
        assert replayed.cycle_removals == applied.cycle_removals

    def test_parse_edit_round_trip_shapes(self):
        assert isinstance(parse_edit({"op": "remove_node", "node_id": "x"}), RemoveNode)
        assert isinstance(
            parse_edit({"op": "add_edge", "src": "a", "dst": "b", "weight": 0.5}), AddEdge
        )
        assert isinstance(
            parse_edit({"op": "set_score", "node_id": "x", "e_score": 1.0}), SetScore
        )
        with pytest.raises(ValueError):
            parse_edit({"op": "explode"})
        with pytest.raises(ValueError):
            parse_edit({"op": "add_edge", "src": "a"})
