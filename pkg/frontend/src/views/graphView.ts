// SVG rendering of the displayed graph plus the node detail panel.

import { clear, el, svg } from "../dom.js";
import { layoutGraph } from "../layout.js";
import type { GraphNodePayload, GraphPayload } from "../types.js";

const WIDTH = 760;
const HEIGHT = 420;

const LAYER_COLORS: Record<string, string> = {
  Network: "#1f7a8c",
  SystemHardware: "#e07a00",
  MachineLearning: "#2e933c",
  Crypto: "#7a4fb3",
};

function nodeColor(node: GraphNodePayload): string {
  if (node.kind === "Attacker") return "#c1121f";
  if (node.kind === "Cwe") return "#5f5aa2";
  const first = node.layers[0];
  return (first && LAYER_COLORS[first]) || "#6b7280";
}

export interface GraphViewHandlers {
  onSelectNode: (id: string) => void;
  onSelectEdge: (src: string, dst: string) => void;
}

export function renderGraphView(container: HTMLElement, graph: GraphPayload | null,
                                selectedNode: string | null,
                                selectedEdge: [string, string] | null,
                                handlers: GraphViewHandlers): void {
  clear(container);
  if (!graph) {
    container.append(el("p", { class: "placeholder" }, ["no graph loaded"]));
    return;
  }
  if (graph.nodes.length <= 1) {
    container.append(el("p", { class: "placeholder", "data-role": "empty-layer" },
                        ["this layer contains no vulnerabilities"]));
    return;
  }

  const positions = layoutGraph(graph, WIDTH, HEIGHT);
  const view = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "graph",
    "data-role": "graph-view",
  });

  for (const edge of graph.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const selected = selectedEdge
      && selectedEdge[0] === edge.src && selectedEdge[1] === edge.dst;
    const line = svg("line", {
      x1: String(a.x), y1: String(a.y), x2: String(b.x), y2: String(b.y),
      class: selected ? "edge selected" : "edge",
      "stroke-width": (1 + 3 * edge.weight).toFixed(2),
      "data-edge": `${edge.src}>${edge.dst}`,
    });
    line.addEventListener("click", () => handlers.onSelectEdge(edge.src, edge.dst));
    view.append(line);
  }

  for (const node of graph.nodes) {
    const position = positions.get(node.id);
    if (!position) continue;
    const group = svg("g", {
      class: node.id === selectedNode ? "node selected" : "node",
      "data-node": node.id,
    });
    group.append(svg("circle", {
      cx: String(position.x), cy: String(position.y),
      r: node.kind === "Attacker" ? "14" : "10",
      fill: nodeColor(node),
    }));
    group.append(svg("text", {
      x: String(position.x), y: String(position.y - 14),
      class: "node-label", "text-anchor": "middle",
    }, [node.id]));
    group.addEventListener("click", () => handlers.onSelectNode(node.id));
    view.append(group);
  }
  container.append(view);
}

export function renderNodePanel(container: HTMLElement, graph: GraphPayload | null,
                                selectedNode: string | null): void {
  clear(container);
  const node = graph?.nodes.find((n) => n.id === selectedNode);
  if (!graph || !node) {
    container.append(el("p", { class: "placeholder" }, ["select a node"]));
    return;
  }
  container.append(el("h3", {}, [node.id]));
  const facts = el("dl", { class: "node-facts" });
  const rows: [string, string][] = [
    ["kind", node.kind],
    ["layers", node.layers.join(", ") || "Unclassified"],
    ["exploit score", node.e_score.toFixed(2)
      + (node.overridden.includes("e_score") ? " (overridden)" : "")],
    ["impact score", node.i_score.toFixed(2)
      + (node.overridden.includes("i_score") ? " (overridden)" : "")],
  ];
  for (const [label, value] of rows) {
    facts.append(el("dt", {}, [label]), el("dd", {}, [value]));
  }
  container.append(facts);

  if (node.attributes) {
    const table = el("table", { class: "ports", "data-role": "port-table" });
    const ports: [string, string[]][] = [
      ["preconditions", node.attributes.preconditions],
      ["postconditions", node.attributes.postconditions],
      ["inputs", node.attributes.inputs],
      ["outputs", node.attributes.outputs],
    ];
    for (const [name, phrases] of ports) {
      const flagged = node.attributes.fallback_ports.includes(name);
      table.append(el("tr", {}, [
        el("th", {}, [flagged ? `${name} *` : name]),
        el("td", {}, [phrases.join("; ")]),
      ]));
    }
    container.append(table);
    if (node.attributes.fallback_ports.length) {
      container.append(el("p", { class: "footnote" }, ["* filled by fallback"]));
    }
  }
}
