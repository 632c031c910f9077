// Client-side mirror of the engine's edit legality rules, so obviously
// broken edits are rejected inline before a PATCH is attempted.  The
// server remains the authority.

import type { GraphEdit, GraphPayload, NodeKind } from "./types.js";

const LEGAL_EDGES: Record<string, string> = {
  "Attacker>Cve": "AttackerToCve",
  "Cve>Cve": "CveToCve",
  "Cve>Cwe": "CveToCwe",
};

export function edgeKindFor(src: NodeKind, dst: NodeKind): string | null {
  return LEGAL_EDGES[`${src}>${dst}`] ?? null;
}

function nodeKind(graph: GraphPayload, id: string): NodeKind | null {
  return graph.nodes.find((n) => n.id === id)?.kind ?? null;
}

function hasEdge(graph: GraphPayload, src: string, dst: string): boolean {
  return graph.edges.some((e) => e.src === src && e.dst === dst);
}

function checkScore(value: number | null | undefined, label: string): string | null {
  if (value == null) return null;
  if (Number.isNaN(value) || value < 0 || value > 10) {
    return `${label} must be between 0 and 10`;
  }
  return null;
}

/** Null when the edit looks legal; a human-readable reason otherwise. */
export function validateEdit(graph: GraphPayload, edit: GraphEdit): string | null {
  switch (edit.op) {
    case "remove_node": {
      if (edit.node_id === "ATTACKER") return "the attacker node cannot be removed";
      if (!nodeKind(graph, edit.node_id)) return `no node ${edit.node_id}`;
      return null;
    }
    case "add_edge": {
      const src = nodeKind(graph, edit.src);
      const dst = nodeKind(graph, edit.dst);
      if (!src) return `no node ${edit.src}`;
      if (!dst) return `no node ${edit.dst}`;
      if (!edgeKindFor(src, dst)) return `no legal edge from ${src} to ${dst}`;
      if (hasEdge(graph, edit.src, edit.dst)) return "edge already exists";
      if (Number.isNaN(edit.weight) || edit.weight < 0 || edit.weight > 1) {
        return "weight must be between 0 and 1";
      }
      return null;
    }
    case "remove_edge": {
      if (!hasEdge(graph, edit.src, edit.dst)) return `no edge ${edit.src} -> ${edit.dst}`;
      return null;
    }
    case "set_score": {
      if (!nodeKind(graph, edit.node_id)) return `no node ${edit.node_id}`;
      if (edit.e_score == null && edit.i_score == null) {
        return "set at least one of the two scores";
      }
      return checkScore(edit.e_score, "exploit score")
        ?? checkScore(edit.i_score, "impact score");
    }
    case "set_weight": {
      if (!hasEdge(graph, edit.src, edit.dst)) return `no edge ${edit.src} -> ${edit.dst}`;
      if (Number.isNaN(edit.weight) || edit.weight < 0 || edit.weight > 1) {
        return "weight must be between 0 and 1";
      }
      return null;
    }
    case "add_cve_node": {
      if (!/^CVE-\d{4}-\d{4,}$/.test(edit.record.id)) {
        return "id must look like CVE-YYYY-NNNN";
      }
      if (nodeKind(graph, edit.record.id)) return `node ${edit.record.id} already exists`;
      if (!edit.record.description.trim()) return "description must not be empty";
      return null;
    }
  }
}

export function describeEdit(edit: GraphEdit): string {
  switch (edit.op) {
    case "add_cve_node":
      return `add node ${edit.record.id}`;
    case "remove_node":
      return `remove node ${edit.node_id}`;
    case "add_edge":
      return `add edge ${edit.src} -> ${edit.dst} (w=${edit.weight})`;
    case "remove_edge":
      return `remove edge ${edit.src} -> ${edit.dst}`;
    case "set_score": {
      const parts = [];
      if (edit.e_score != null) parts.push(`e=${edit.e_score}`);
      if (edit.i_score != null) parts.push(`i=${edit.i_score}`);
      return `set ${edit.node_id} ${parts.join(", ")}`;
    }
    case "set_weight":
      return `set weight ${edit.src} -> ${edit.dst} = ${edit.weight}`;
  }
}
