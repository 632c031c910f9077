// Column layout for the attack graph: attacker on the left, CVEs in
// topological-depth columns, CWE sinks on the right.

import type { GraphPayload } from "./types.js";

export interface NodePosition {
  x: number;
  y: number;
}

export function layoutGraph(graph: GraphPayload, width: number,
                            height: number): Map<string, NodePosition> {
  const depth = new Map<string, number>();
  for (const node of graph.nodes) {
    if (node.kind === "Attacker") depth.set(node.id, 0);
    else if (node.kind === "Cve") depth.set(node.id, 1);
  }
  // longest-path depth over CveToCve edges; the graph is a DAG so a
  // |V| rounds relaxation settles
  const cveEdges = graph.edges.filter((e) => e.kind === "CveToCve");
  for (let round = 0; round < graph.nodes.length; round += 1) {
    let changed = false;
    for (const edge of cveEdges) {
      const src = depth.get(edge.src);
      const dst = depth.get(edge.dst);
      if (src != null && dst != null && dst < src + 1) {
        depth.set(edge.dst, src + 1);
        changed = true;
      }
    }
    if (!changed) break;
  }
  const maxCveDepth = Math.max(1, ...[...depth.values()]);
  for (const node of graph.nodes) {
    if (node.kind === "Cwe") depth.set(node.id, maxCveDepth + 1);
  }

  const columns = new Map<number, string[]>();
  for (const node of graph.nodes) {
    const d = depth.get(node.id) ?? 0;
    const column = columns.get(d) ?? [];
    column.push(node.id);
    columns.set(d, column);
  }
  const totalColumns = Math.max(...columns.keys()) + 1;

  const positions = new Map<string, NodePosition>();
  for (const [column, ids] of columns) {
    ids.sort();
    const x = ((column + 0.5) / totalColumns) * width;
    ids.forEach((id, index) => {
      const y = ((index + 0.5) / ids.length) * height;
      positions.set(id, { x, y });
    });
  }
  return positions;
}
