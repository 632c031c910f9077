// Spider chart over the top-ranked vulnerabilities.
//
// Five axes per vulnerability: node degree, exploit score, impact score,
// the highest normalized risk among its incident edges, and vertex-cover
// membership.  All raw values come straight from the analytics and graph
// payloads; this module only scales them onto the chart.

import { clear, el, svg } from "../dom.js";
import type { AnalyticsPayload, GraphPayload } from "../types.js";

const AXES = ["degree", "exploit", "impact", "incident risk", "in cover"] as const;
const SIZE = 260;
const RADIUS = 96;
const PALETTE = ["#d1495b", "#1f7a8c", "#e0a100"];

interface SpiderRow {
  id: string;
  values: number[]; // one per axis, each already in [0, 1]
}

export function spiderRows(analytics: AnalyticsPayload,
                           graph: GraphPayload): SpiderRow[] {
  const degreeMax = Math.max(1, ...analytics.key_vulnerabilities.map(([, d]) => d));
  const cover = new Set(analytics.vertex_cover);
  return analytics.key_vulnerabilities.map(([id, degree]) => {
    const node = graph.nodes.find((n) => n.id === id);
    const incident = analytics.edge_scores.filter(
      (row) => row.src === id || row.dst === id,
    );
    const incidentRisk = incident.length
      ? Math.max(...incident.map((row) => row.normalized_risk))
      : 0;
    return {
      id,
      values: [
        degree / degreeMax,
        (node?.e_score ?? 0) / 10,
        (node?.i_score ?? 0) / 10,
        incidentRisk / 10,
        cover.has(id) ? 1 : 0,
      ],
    };
  });
}

function point(axis: number, fraction: number): [number, number] {
  const angle = (Math.PI * 2 * axis) / AXES.length - Math.PI / 2;
  const r = RADIUS * fraction;
  return [SIZE / 2 + r * Math.cos(angle), SIZE / 2 + r * Math.sin(angle)];
}

export function renderSpiderChart(container: HTMLElement,
                                  analytics: AnalyticsPayload | null,
                                  graph: GraphPayload | null): void {
  clear(container);
  if (!analytics || !graph || analytics.key_vulnerabilities.length === 0) {
    container.append(el("p", { class: "placeholder" }, ["no ranked vulnerabilities"]));
    return;
  }
  const chart = svg("svg", {
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    class: "spider",
    "data-role": "spider",
  });

  for (const ring of [0.33, 0.66, 1.0]) {
    const outline = AXES.map((_, i) => point(i, ring).join(",")).join(" ");
    chart.append(svg("polygon", { points: outline, class: "spider-ring" }));
  }
  AXES.forEach((label, i) => {
    const [x, y] = point(i, 1);
    chart.append(svg("line", {
      x1: String(SIZE / 2), y1: String(SIZE / 2), x2: String(x), y2: String(y),
      class: "spider-axis",
    }));
    const [lx, ly] = point(i, 1.18);
    chart.append(svg("text", {
      x: String(lx), y: String(ly), class: "spider-label",
      "text-anchor": "middle",
    }, [label]));
  });

  const legend = el("ul", { class: "spider-legend" });
  spiderRows(analytics, graph).forEach((row, index) => {
    const outline = row.values
      .map((v, axis) => point(axis, Math.max(0.02, v)).join(","))
      .join(" ");
    chart.append(svg("polygon", {
      points: outline,
      class: "spider-shape",
      "data-node": row.id,
      style: `stroke:${PALETTE[index % PALETTE.length]};fill:${PALETTE[index % PALETTE.length]}33`,
    }));
    legend.append(el("li", {}, [
      el("span", {
        class: "swatch",
        style: `background:${PALETTE[index % PALETTE.length]}`,
      }),
      row.id,
    ]));
  });

  container.append(chart, legend);
}
