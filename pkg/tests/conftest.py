import sys
from pathlib import Path

import hypothesis
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make helpers importable

from postural.graph.model import (  # noqa: E402
    ATTACKER_ID,
    AttackGraph,
    EdgeKind,
    GraphEdge,
    GraphNode,
    NodeKind,
)
from postural.ingest.feeds import read_feed_file  # noqa: E402
from postural.semantics.modelio import load_model  # noqa: E402

hypothesis.settings.register_profile("suite", max_examples=30, deadline=None)
hypothesis.settings.load_profile("suite")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_records():
    return read_feed_file(FIXTURES / "feeds" / "fixture-nvd11.json")


@pytest.fixture(scope="session")
def fixture_model():
    return load_model(FIXTURES / "models" / "fixture.pvec")


@pytest.fixture(scope="session")
def synonym_lines() -> list[str]:
    raw = (FIXTURES / "corpus" / "security_phrases.txt").read_text("utf-8")
    return [line for line in raw.splitlines() if line.strip()]


def make_chain_graph() -> AttackGraph:
    """ATTACKER -> CVE1(e=3.9, i=5.9) -> CVE2(e=2.2, i=3.6) -> CWE-79."""
    nodes = {
        ATTACKER_ID: GraphNode(ATTACKER_ID, NodeKind.Attacker),
        "CVE-2020-0001": GraphNode("CVE-2020-0001", NodeKind.Cve, e_score=3.9, i_score=5.9),
        "CVE-2020-0002": GraphNode("CVE-2020-0002", NodeKind.Cve, e_score=2.2, i_score=3.6),
        "CWE-79": GraphNode("CWE-79", NodeKind.Cwe),
    }
    edges = [
        GraphEdge(ATTACKER_ID, "CVE-2020-0001", EdgeKind.AttackerToCve, 0.65),
        GraphEdge("CVE-2020-0001", "CVE-2020-0002", EdgeKind.CveToCve, 0.85),
        GraphEdge("CVE-2020-0002", "CWE-79", EdgeKind.CveToCwe, 0.9),
    ]
    return AttackGraph("chain", nodes, edges, threshold=0.8)


@pytest.fixture
def chain_graph() -> AttackGraph:
    return make_chain_graph()
