import datetime as dt
import gzip
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from postural.errors import DanglingLink, MalformedFeed, MalformedTopology, UnsupportedSchema
from postural.ingest import (
    CveRecord,
    FeedFormat,
    InventoryItem,
    Topology,
    detect_format,
    dump_topology,
    load_topology,
    match_inventory,
    parse_feed,
    read_feed_file,
)


def record(id="CVE-2020-1234", product=("vend", "prod", "1.0"), **kw):
    defaults = dict(description="A test vulnerability.", products=(product,))
    defaults.update(kw)
    return CveRecord(id=id, **defaults)


class TestCveRecord:
    def test_id_pattern_enforced(self):
        with pytest.raises(ValueError):
            record(id="CVE-20-1")
        with pytest.raises(ValueError):
            record(id="cve-2020-1234")
        record(id="CVE-2020-123456")  # 4+ digits allowed

    def test_scores_range_checked(self):
        with pytest.raises(ValueError):
            record(base_score=10.5)
        with pytest.raises(ValueError):
            record(impact_score=-0.1)
        assert record(base_score=None).base_score is None

    def test_empty_description_rejected(self):
        with pytest.raises(ValueError):
            record(description="   ")

    def test_round_trips_through_dict(self):
        r = record(base_score=6.5, cwe_ids=(79,), published=dt.date(2020, 6, 19))
        assert CveRecord.from_dict(r.to_dict()) == r


class TestParseFeed:
    def test_single_entry_fixture(self, fixtures_dir):
        raw = (fixtures_dir / "feeds" / "single_entry_11.json").read_bytes()
        records = parse_feed(raw, FeedFormat.NvdJson11)
        assert len(records) == 1
        r = records[0]
        assert r.id == "CVE-2020-5679"
        assert r.cwe_ids == (1021,)
        assert r.base_score == 6.5
        assert r.products == (("ec-cube", "ec-cube", "3.0.0"),)
        assert r.published == dt.date(2020, 6, 19)

    def test_empty_feed(self, fixtures_dir):
        raw = (fixtures_dir / "feeds" / "empty_11.json").read_bytes()
        assert parse_feed(raw, FeedFormat.NvdJson11) == []

    def test_missing_metrics_stay_missing(self, fixtures_dir):
        raw = (fixtures_dir / "feeds" / "no_metrics_11.json").read_bytes()
        (r,) = parse_feed(raw, FeedFormat.NvdJson11)
        assert r.base_score is None
        assert r.exploitability_score is None
        assert r.impact_score is None

    def test_rejected_entries_dropped(self, fixtures_dir):
        stats = {}
        records = parse_feed(
            (fixtures_dir / "feeds" / "fixture-nvd11.json").read_bytes(),
            FeedFormat.NvdJson11, stats=stats,
        )
        ids = [r.id for r in records]
        assert "CVE-2021-1007" not in ids
        assert stats == {"entries": 7, "dropped": 1}

    def test_api20_format(self, fixtures_dir):
        raw = (fixtures_dir / "feeds" / "fixture-nvd20.json").read_bytes()
        records = parse_feed(raw, FeedFormat.NvdApi20)
        assert [r.id for r in records] == ["CVE-2023-2001", "CVE-2023-2002"]
        assert records[0].cwe_ids == (89,)
        assert records[0].base_score == 8.6
        assert records[0].products == (("example", "examplecms", "4.2"),)

    def test_detect_format(self, fixtures_dir):
        raw11 = (fixtures_dir / "feeds" / "empty_11.json").read_bytes()
        raw20 = (fixtures_dir / "feeds" / "fixture-nvd20.json").read_bytes()
        assert detect_format(raw11) is FeedFormat.NvdJson11
        assert detect_format(raw20) is FeedFormat.NvdApi20
        with pytest.raises(UnsupportedSchema):
            detect_format(b'{"something": []}')

    def test_malformed_feed_reports_offset(self):
        with pytest.raises(MalformedFeed) as info:
            parse_feed(b'{"CVE_Items": [}', FeedFormat.NvdJson11)
        assert info.value.offset is not None

    def test_unknown_format_tag(self):
        with pytest.raises(UnsupportedSchema):
            parse_feed(b"{}", "csv")

    def test_deterministic(self, fixtures_dir):
        raw = (fixtures_dir / "feeds" / "fixture-nvd11.json").read_bytes()
        assert parse_feed(raw, FeedFormat.NvdJson11) == parse_feed(raw, FeedFormat.NvdJson11)

    def test_gzip_suffix_matches_plain(self, fixtures_dir):
        plain = read_feed_file(fixtures_dir / "feeds" / "fixture-nvd11.json")
        packed = read_feed_file(fixtures_dir / "feeds" / "fixture-nvd11.json.gz")
        assert plain == packed

    def test_version_range_becomes_wildcard(self):
        entry = {
            "cve": {
                "CVE_data_meta": {"ID": "CVE-2021-9999"},
                "problemtype": {"problemtype_data": []},
                "description": {"description_data": [
                    {"lang": "en", "value": "Range-matched product bug."}
                ]},
            },
            "configurations": {"nodes": [{
                "cpe_match": [{
                    "vulnerable": True,
                    "cpe23Uri": "cpe:2.3:a:vend:prod:*:*:*:*:*:*:*:*",
                    "versionEndExcluding": "2.0",
                }],
            }]},
        }
        feed = json.dumps({"CVE_Items": [entry]}).encode()
        (r,) = parse_feed(feed, FeedFormat.NvdJson11)
        assert r.products == (("vend", "prod", "*"),)


class TestMatchInventory:
    topo = Topology(items=(
        InventoryItem("d1", "openssl", "openssl", "1.0.1"),
        InventoryItem("d2", "openssl", "openssl", "3.0.0"),
        InventoryItem("d3", "acme", "router", "2.2"),
    ))

    def test_product_and_version_equality(self):
        r = record(id="CVE-2020-0001", product=("openssl", "openssl", "1.0.1"))
        result = match_inventory([r], self.topo)
        assert result["d1"] == ["CVE-2020-0001"]
        assert result["d2"] == []

    def test_version_mismatch_blocks(self):
        r = record(id="CVE-2020-0002", product=("openssl", "openssl", "1.0.1"))
        assert match_inventory([r], self.topo)["d2"] == []

    def test_wildcard_version_matches_all(self):
        r = record(id="CVE-2020-0003", product=("openssl", "openssl", "*"))
        result = match_inventory([r], self.topo)
        assert result["d1"] == result["d2"] == ["CVE-2020-0003"]

    def test_vendor_mismatch_does_not_block(self):
        r = record(id="CVE-2020-0004", product=("somebody_else", "router", "2.2"))
        assert match_inventory([r], self.topo)["d3"] == ["CVE-2020-0004"]

    def test_product_names_case_insensitive(self):
        r = record(id="CVE-2020-0005", product=("acme", "Router", "2.2"))
        assert match_inventory([r], self.topo)["d3"] == ["CVE-2020-0005"]

    def test_empty_topology(self):
        assert match_inventory([record()], Topology(items=())) == {}

    @given(st.permutations(range(4)))
    def test_order_independent(self, perm):
        records = [
            record(id=f"CVE-2020-000{i + 1}", product=("openssl", "openssl", "1.0.1"))
            for i in range(4)
        ]
        shuffled = [records[i] for i in perm]
        assert match_inventory(shuffled, self.topo) == match_inventory(records, self.topo)


class TestTopology:
    def test_three_device_fixture(self, fixtures_dir):
        topo = load_topology((fixtures_dir / "topology" / "three-devices.json").read_bytes())
        assert len(topo.items) == 3
        assert topo.device("server-01").criticality == 2.0
        assert topo.device("switch-01").criticality == 1.0  # default

    def test_duplicate_device_id(self):
        doc = {
            "schema": "topology-v1",
            "devices": [
                {"device_id": "a", "product": "p", "version": "1"},
                {"device_id": "a", "product": "q", "version": "2"},
            ],
        }
        with pytest.raises(MalformedTopology):
            load_topology(json.dumps(doc).encode())

    def test_dangling_link(self):
        doc = {
            "schema": "topology-v1",
            "devices": [{"device_id": "a", "product": "p", "version": "1"}],
            "links": [["a", "ghost"]],
        }
        with pytest.raises(DanglingLink):
            load_topology(json.dumps(doc).encode())

    def test_bad_schema(self):
        with pytest.raises(MalformedTopology):
            load_topology(b'{"schema": "topology-v2", "devices": []}')

    def test_nonpositive_criticality(self):
        doc = {
            "schema": "topology-v1",
            "devices": [{"device_id": "a", "product": "p", "version": "1",
                         "criticality": 0}],
        }
        with pytest.raises(MalformedTopology):
            load_topology(json.dumps(doc).encode())

    def test_round_trip(self, fixtures_dir):
        raw = (fixtures_dir / "topology" / "fixture-topology.json").read_bytes()
        topo = load_topology(raw)
        assert load_topology(dump_topology(topo)) == topo
