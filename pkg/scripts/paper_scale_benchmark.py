#!/usr/bin/env python3
"""Timing run on the 100-node benchmark graph (80 CVEs, 19 CWEs, attacker).

Prints the score-computation / risk-analysis split for a few cutoffs.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from helpers import paper_scale_graph  # noqa: E402

from postural.risk import Constants, ScoreFunctions, analyze  # noqa: E402


def main() -> None:
    graph = paper_scale_graph()
    fns = ScoreFunctions.from_node_fields()
    print(f"graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges")
    for cutoff in (4, 6, 8):
        started = time.perf_counter()
        analytics = analyze(graph, fns, Constants(path_cutoff=cutoff))
        total = time.perf_counter() - started
        print(
            f"cutoff {cutoff}: paths={analytics.path_count:>7} "
            f"shortest={analytics.shortest_path_count} "
            f"cover={analytics.vertex_cover_size} "
            f"scores={analytics.score_computation_seconds * 1000:7.2f}ms "
            f"analysis={analytics.risk_analysis_seconds:6.3f}s "
            f"total={total:6.3f}s"
        )


if __name__ == "__main__":
    main()
