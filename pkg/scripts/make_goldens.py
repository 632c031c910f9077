#!/usr/bin/env python3
"""Regenerate the committed golden analysis documents.

Runs the CLI end to end (ingest then analyze) on the shipped fixtures.
Output must be deterministic; rerunning may not change a byte unless an
engine behavior intentionally changed.
"""

import shutil
import tempfile
from pathlib import Path

from postural.cli import main

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = FIXTURES / "golden"

GOLDEN_FILES = [
    "cumulative.graph", "cumulative.analytics",
    "network.graph", "network.analytics",
    "system_hardware.graph", "system_hardware.analytics",
    "machine_learning.graph", "machine_learning.analytics",
    "crypto.graph", "crypto.analytics",
]


def run() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        records = Path(tmp) / "records.db"
        out = Path(tmp) / "analysis"
        assert main(["ingest", "--feed",
                     str(FIXTURES / "feeds" / "fixture-nvd11.json"),
                     "--out", str(records)]) == 0
        assert main(["analyze",
                     "--topology", str(FIXTURES / "topology" / "fixture-topology.json"),
                     "--records", str(records),
                     "--model", str(FIXTURES / "models" / "fixture.pvec"),
                     "--out", str(out)]) == 0
        GOLDEN.mkdir(parents=True, exist_ok=True)
        for name in GOLDEN_FILES:
            source = out / name
            if not source.exists():
                raise SystemExit(f"expected analyze output {name} is missing")
            shutil.copyfile(source, GOLDEN / name)
            print(f"golden: {name} ({source.stat().st_size} bytes)")


if __name__ == "__main__":
    run()
