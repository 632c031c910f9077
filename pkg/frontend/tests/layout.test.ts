import { describe, expect, it } from "vitest";

import { layoutGraph } from "../src/layout.js";
import { goldenGraph } from "./golden.js";

describe("layoutGraph", () => {
  it("places the attacker left of CVEs and CWEs right of everything", () => {
    const graph = goldenGraph();
    const positions = layoutGraph(graph, 800, 400);
    const attacker = positions.get("ATTACKER")!;
    for (const node of graph.nodes) {
      const p = positions.get(node.id)!;
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThanOrEqual(800);
      if (node.kind === "Cve") expect(p.x).toBeGreaterThan(attacker.x);
      if (node.kind === "Cwe") {
        for (const other of graph.nodes) {
          if (other.kind === "Cve") {
            expect(p.x).toBeGreaterThan(positions.get(other.id)!.x);
          }
        }
      }
    }
  });

  it("orders chained CVEs by depth", () => {
    const graph = goldenGraph();
    const positions = layoutGraph(graph, 800, 400);
    // golden chain: 1001 -> 1002 -> 1003
    expect(positions.get("CVE-2021-1001")!.x)
      .toBeLessThan(positions.get("CVE-2021-1002")!.x);
    expect(positions.get("CVE-2021-1002")!.x)
      .toBeLessThan(positions.get("CVE-2021-1003")!.x);
  });
});
